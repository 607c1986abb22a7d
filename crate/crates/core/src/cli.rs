//! Command-line front end. [`run`] returns the exit code and the text to print so it can be tested directly.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arbo::{arbo_hoffman_exp_in, arborify, contract_arborify_in, marcus_modified_field, MarcusAlphabet};
use crate::bck::bck_coproduct;
use crate::bseries::{bseries_truncated, undecorated_fields};
use crate::error::{Error, Result};
use crate::hk::{hk_psi_forest, hk_psi_tilde_inv_lc, hk_psi_tilde_lc};
use crate::linear::{LinComb, Q};
use crate::poly::PolyVectorField;
use crate::prelie::{gl_product_lc, graft_lc, left_power};
use crate::qshuffle::{hoffman_exp_in, hoffman_log_in, psi_series_in, quasi_shuffle_in, shuffle_lc, PowerSeries};
use crate::semigroup::{Letter, Semigroup, SemigroupElement};
use crate::substitution::{psi_v_in, sub_coproduct_in, PlusCharacter};
use crate::text::{parse_forest, parse_lincomb, parse_rational, parse_tree, parse_word};
use crate::tree::{Forest, Tree};
use crate::verify::{run_suite, Bounds};
use crate::word::Word;

#[derive(Parser, Debug)]
#[command(name = "treehopf", version, about = "Exact tree and word Hopf algebra computations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Comma-separated base letters; inputs must use only these.
    #[arg(long, global = true, value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
    /// `free` or `table:<file>` with lines `a*b=c`.
    #[arg(long, global = true, default_value = "free")]
    semigroup: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pre-Lie grafting x ▷ y of two tree combinations.
    Graft { x: String, y: String },
    /// Grossman–Larson product of two forest combinations.
    Gl { f: String, g: String },
    /// Left power L^n_{a▷}(b).
    Lpow { a: String, b: String, n: usize },
    /// BCK coproduct of a forest, or the substitution coproduct of a tree.
    Coproduct {
        #[arg(long, conflicts_with = "sub")]
        bck: bool,
        #[arg(long)]
        sub: bool,
        input: String,
    },
    /// Quasi-shuffle product of two word combinations.
    Qshuffle { u: String, v: String },
    /// Shuffle product of two word combinations.
    Shuffle { u: String, v: String },
    /// Hoffman exponential of a word combination.
    HoffmanExp { w: String },
    /// Hoffman logarithm of a word combination.
    HoffmanLog { w: String },
    /// Quasi-shuffle map ψ_f for a series t + f_2 t² + ⋯.
    PsiF {
        #[arg(long, value_delimiter = ',', required = true)]
        coeffs: Vec<String>,
        w: String,
    },
    /// Substitution action Ψ_v on a forest combination.
    PsiV {
        #[arg(long = "char")]
        character: String,
        f: String,
    },
    /// Arborification of a forest combination, or the contracting one with --contract.
    Arborify {
        #[arg(long)]
        contract: bool,
        f: String,
    },
    /// Arborified Hoffman exponential Ψ_(1/τ!).
    ArboHoffman { f: String },
    /// Generator images of the Marcus extension.
    Marcus {
        #[arg(long, default_value_t = 3)]
        nmax: usize,
    },
    /// Hairer–Kelly map ψ into tensor words.
    HkPsi { f: String },
    /// Symmetrised map ψ̃, or its inverse with --inverse.
    HkPsiTilde {
        #[arg(long)]
        inverse: bool,
        f: String,
    },
    /// Coefficients of h^k in a B-series evaluated at y0.
    Bseries {
        #[arg(long)]
        field: String,
        #[arg(long = "char")]
        character: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_delimiter = ',')]
        y0: Vec<String>,
    },
    /// Check algebraic identities over a bounded sweep.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// prelie, bck, qshuffle, substitution, diagram, adjoint, marcus, hk, bseries or all.
    suite: String,
    /// Largest tree size swept.
    #[arg(long)]
    max_vertices: Option<usize>,
    /// Longest word swept.
    #[arg(long)]
    max_length: Option<usize>,
    /// Truncation order for adjoint, Marcus, Hairer–Kelly and B-series checks.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Append wall time to text output.
    #[arg(long)]
    timing: bool,
}

/// Parse `argv` (program name first), run, and return the exit code with the output.
pub fn run(argv: Vec<String>) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => (2, format!("error: {}\n", e)),
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let ctx = Ctx { sg: load_semigroup(&cli.semigroup)?, alphabet: cli.alphabet.clone() };
    let sg = &ctx.sg;
    let out = match &cli.command {
        Command::Graft { x, y } => lc(cli, graft_lc(&ctx.trees(x)?, &ctx.trees(y)?)),
        Command::Gl { f, g } => lc(cli, gl_product_lc(&ctx.forests(f)?, &ctx.forests(g)?)),
        Command::Lpow { a, b, n } => lc(cli, left_power(&ctx.trees(a)?, &ctx.trees(b)?, *n)),
        Command::Coproduct { bck, sub, input } => {
            if *sub {
                let x = ctx.trees(input)?;
                lc(cli, x.try_flat_map(|t| sub_coproduct_in(sg, t))?)
            } else {
                let _ = bck;
                lc(cli, ctx.forests(input)?.flat_map(bck_coproduct))
            }
        }
        Command::Qshuffle { u, v } => {
            let (u, v) = (ctx.words(u)?, ctx.words(v)?);
            lc(cli, u.try_bilinear(&v, |a, b| quasi_shuffle_in(sg, a, b))?)
        }
        Command::Shuffle { u, v } => lc(cli, shuffle_lc(&ctx.words(u)?, &ctx.words(v)?)),
        Command::HoffmanExp { w } => lc(cli, ctx.words(w)?.try_flat_map(|x| hoffman_exp_in(sg, x))?),
        Command::HoffmanLog { w } => lc(cli, ctx.words(w)?.try_flat_map(|x| hoffman_log_in(sg, x))?),
        Command::PsiF { coeffs, w } => {
            let c = coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Q>>>()?;
            let f = PowerSeries::new(c);
            lc(cli, ctx.words(w)?.try_flat_map(|x| psi_series_in(sg, &f, x))?)
        }
        Command::PsiV { character, f } => {
            let v = load_character(character)?;
            lc(cli, ctx.forests(f)?.try_flat_map(|x| psi_v_in(sg, &v, x))?)
        }
        Command::Arborify { contract, f } => {
            let x = ctx.forests(f)?;
            if *contract {
                lc(cli, x.try_flat_map(|g| contract_arborify_in(sg, g))?)
            } else {
                lc(cli, x.flat_map(arborify))
            }
        }
        Command::ArboHoffman { f } => lc(cli, ctx.forests(f)?.try_flat_map(|g| arbo_hoffman_exp_in(sg, g))?),
        Command::Marcus { nmax } => marcus(cli, *nmax)?,
        Command::HkPsi { f } => {
            let x = ctx.forests(f)?;
            let mut out = LinComb::zero();
            for (g, c) in x.iter() {
                out.add_scaled(&hk_psi_forest(g)?, c);
            }
            lc(cli, out)
        }
        Command::HkPsiTilde { inverse, f } => {
            let x = ctx.forests(f)?;
            lc(cli, if *inverse { hk_psi_tilde_inv_lc(&x)? } else { hk_psi_tilde_lc(&x)? })
        }
        Command::Bseries { field, character, order, y0 } => bseries(cli, field, character, *order, y0)?,
        Command::Verify(args) => return verify(cli, args),
    };
    Ok((0, out))
}

struct Ctx {
    sg: Semigroup,
    alphabet: Option<Vec<String>>,
}

impl Ctx {
    fn allowed(&self, decos: &[SemigroupElement]) -> Result<()> {
        let Some(alpha) = &self.alphabet else { return Ok(()) };
        for l in decos.iter().flat_map(|d| d.letters()) {
            if !alpha.iter().any(|a| a == l.as_str()) {
                return Err(Error::UnassignedLetter(l.to_string()));
            }
        }
        Ok(())
    }

    fn trees(&self, text: &str) -> Result<LinComb<Tree>> {
        parse_lincomb(text, |s| {
            let t = parse_tree(s)?;
            self.allowed(&t.decorations())?;
            Ok(t)
        })
    }

    fn forests(&self, text: &str) -> Result<LinComb<Forest>> {
        parse_lincomb(text, |s| {
            let f = parse_forest(s)?;
            for t in f.trees() {
                self.allowed(&t.decorations())?;
            }
            Ok(f)
        })
    }

    fn words(&self, text: &str) -> Result<LinComb<Word>> {
        parse_lincomb(text, |s| {
            let w = parse_word(s)?;
            self.allowed(&w.0)?;
            Ok(w)
        })
    }
}

fn load_semigroup(arg: &str) -> Result<Semigroup> {
    if arg == "free" {
        return Ok(Semigroup::Free);
    }
    let path = arg
        .strip_prefix("table:")
        .ok_or_else(|| Error::InvalidArgument(format!("semigroup must be `free` or `table:<file>`, got `{}`", arg)))?;
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {}", path, e)))?;
    Semigroup::table(parse_table(&text)?)
}

/// Lines `a*b=c`; blank lines and `#` comments are skipped.
pub fn parse_table(text: &str) -> Result<Vec<(Letter, Letter, Letter)>> {
    let mut entries = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Table(format!("line {}: expected `a*b=c`", n + 1));
        let (lhs, c) = line.split_once('=').ok_or_else(bad)?;
        let (a, b) = lhs.split_once('*').ok_or_else(bad)?;
        let letter = |s: &str| -> Result<Letter> {
            let s = s.trim();
            if s.is_empty() || !s.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(bad());
            }
            Ok(Letter::new(s))
        };
        entries.push((letter(a)?, letter(b)?, letter(c)?));
    }
    Ok(entries)
}

/// A builtin name (`unit`, `inverse-factorial`) or lines `tree = p/q`; unlisted single vertices map to 1.
pub fn parse_character(text: &str) -> Result<PlusCharacter> {
    match text.trim() {
        "unit" => return Ok(PlusCharacter::unit()),
        "inverse-factorial" => return Ok(PlusCharacter::inverse_factorial()),
        _ => {}
    }
    let mut values = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (t, q) = line
            .rsplit_once('=')
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("line {}: expected `tree = p/q`", n + 1) })?;
        values.insert(parse_tree(t)?, parse_rational(q)?);
    }
    Ok(PlusCharacter::table(values, true, None))
}

fn load_character(arg: &str) -> Result<PlusCharacter> {
    match arg {
        "unit" | "inverse-factorial" => parse_character(arg),
        path => parse_character(&fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {}", path, e)))?),
    }
}

fn lc<B: Ord + Clone + Display>(cli: &Cli, x: LinComb<B>) -> String {
    match cli.format {
        Format::Text => format!("{}\n", x),
        Format::Structured => {
            let terms: Vec<Value> = x.iter().map(|(b, c)| json!({"coeff": c.to_string(), "basis": b.to_string()})).collect();
            format!("{}\n", json!({ "terms": terms, "text": x.to_string() }))
        }
    }
}

fn marcus(cli: &Cli, nmax: usize) -> Result<String> {
    let m = marcus_modified_field(nmax)?;
    let mut rows: Vec<(usize, String, LinComb<Tree>)> =
        m.into_iter().map(|(k, v)| (k.weight(), MarcusAlphabet::render(&k), v)).collect();
    rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(match cli.format {
        Format::Text => rows.iter().map(|(_, k, v)| format!("{} ↦ {}\n", k, v)).collect(),
        Format::Structured => {
            let v: Vec<Value> = rows.iter().map(|(_, k, v)| json!({"letter": k, "image": v.to_string()})).collect();
            format!("{}\n", Value::Array(v))
        }
    })
}

fn bseries(cli: &Cli, field: &str, character: &str, order: usize, y0: &[String]) -> Result<String> {
    let f = PolyVectorField::parse(field)?;
    let y0: Vec<Q> = y0.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
    if y0.len() != f.nvars() {
        return Err(Error::Dimension(f.nvars(), y0.len()));
    }
    let a = load_character(character)?;
    let coeffs = bseries_truncated(&|t: &Tree| a.eval_tree(t), &undecorated_fields(f), order, &y0)?;
    let show = |v: &Vec<Q>| v.iter().map(Q::to_string).collect::<Vec<_>>().join(", ");
    Ok(match cli.format {
        Format::Text => coeffs.iter().enumerate().map(|(k, v)| format!("h^{}: {}\n", k, show(v))).collect(),
        Format::Structured => {
            let v: Vec<Value> = coeffs
                .iter()
                .enumerate()
                .map(|(k, v)| json!({"order": k, "value": v.iter().map(Q::to_string).collect::<Vec<_>>()}))
                .collect();
            format!("{}\n", Value::Array(v))
        }
    })
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<(i32, String)> {
    let mut bounds = Bounds {
        max_vertices: args.max_vertices,
        max_length: args.max_length,
        order: args.order,
        seed: args.seed,
        samples: args.samples,
        ..Bounds::default()
    };
    if let Some(a) = &cli.alphabet {
        bounds.alphabet = a.clone();
    }
    let report = run_suite(&args.suite, &bounds)?;
    let code = if report.passed() { 0 } else { 1 };
    let text = match cli.format {
        Format::Text if args.timing => format!("{}wall time {} ms\n", report, report.wall_time_ms),
        Format::Text => report.to_string(),
        Format::Structured => {
            let mut v = serde_json::to_value(&report).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            if !args.timing {
                v.as_object_mut().map(|o| o.remove("wall_time_ms"));
            }
            format!("{}\n", v)
        }
    };
    Ok((code, text))
}
