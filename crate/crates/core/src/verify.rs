//! Identity sweeps over enumerated trees, forests and words.
//!
//! Each check walks its cases in increasing size, so the first failure reported is a smallest one.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arbo::{
    arbo_hoffman_adjoint, arbo_hoffman_exp_in, arborify, contract_arborify, flow_adjoint_residual, marcus_modified_field,
    MarcusAlphabet,
};
use crate::bck::{bck_coproduct, BckFunctional, FunctionalKind, TensorFF};
use crate::bseries::{
    bseries_truncated, elementary_differential, field_prelie, substitution_law_residual, undecorated_fields, Fields,
};
use crate::error::{Error, Result};
use crate::hk::{
    hk_flow_identity_residual, hk_psi, hk_psi_forest, hk_psi_tilde, hk_psi_tilde_inv, hk_psi_tilde_lc,
    hk_psi_tilde_inv_lc, project_forest, tensor_shuffle,
};
use crate::linear::{LinComb, Tensor, Q};
use crate::poly::{PolyVectorField, Polynomial};
use crate::prelie::{
    forest_graft, forest_mul_lc, gl_product, gl_product_lc, graft, graft_lc, left_power, GeneratorAssignment,
    PrelieMorphism,
};
use crate::qshuffle::{
    append_letter, compositions, deconcat_lc, hoffman_exp, hoffman_exp_lc, hoffman_log, hoffman_log_lc, psi_series_lc,
    quasi_shuffle, quasi_shuffle_lc, shuffle, PowerSeries,
};
use crate::semigroup::{Semigroup, SemigroupElement, UNDECORATED};
use crate::substitution::{
    coaction, invert_character, invert_character_in, psi_v, psi_v_in, sub_coproduct, PlusCharacter,
};
use crate::tree::{b_plus, forest_sigma, tree_stats, Enumerator, Forest, Tree};
use crate::word::Word;

/// The available suites, in the order `all` runs them.
pub const SUITES: [&str; 9] = ["prelie", "bck", "qshuffle", "substitution", "diagram", "adjoint", "marcus", "hk", "bseries"];

/// Size limits and randomness for a sweep. `None` picks the suite default.
#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub max_vertices: Option<usize>,
    pub max_length: Option<usize>,
    pub order: Option<usize>,
    pub alphabet: Vec<String>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_vertices: None, max_length: None, order: None, alphabet: vec!["a".into(), "b".into()], seed: 2024, samples: 10 }
    }
}

impl Bounds {
    fn letters(&self) -> Vec<SemigroupElement> {
        self.alphabet.iter().map(|l| SemigroupElement::letter(l)).collect()
    }

    fn vertices(&self, default: usize) -> usize {
        self.max_vertices.unwrap_or(default)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Outcome of one identity over its cases.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub bounds: Bounds,
    pub checks: Vec<Check>,
    pub wall_time_ms: u128,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (alphabet {}, seed {})", self.suite, self.bounds.alphabet.join(","), self.bounds.seed)?;
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  {} {} [{} cases]", tag, c.name, c.cases)?;
            if let Some(x) = &c.counterexample {
                writeln!(f, "       counterexample: {}", x)?;
            }
        }
        writeln!(f, "{} checks, {} failures", self.checks.len(), self.failures())
    }
}

/// Collects checks for one suite.
struct Sweep {
    checks: Vec<Check>,
}

impl Sweep {
    /// Run `case` on every input until the first failure. `Ok(Some(text))` or `Err` count as failures.
    fn check<T>(&mut self, name: &str, inputs: impl IntoIterator<Item = T>, mut case: impl FnMut(T) -> Result<Option<String>>) {
        let mut cases = 0;
        let mut counterexample = None;
        for x in inputs {
            cases += 1;
            match case(x) {
                Ok(None) => {}
                Ok(Some(text)) => {
                    counterexample = Some(text);
                    break;
                }
                Err(e) => {
                    counterexample = Some(format!("error: {}", e));
                    break;
                }
            }
        }
        self.checks.push(Check { name: name.into(), cases, passed: counterexample.is_none(), counterexample });
    }
}

/// `None` when equal, otherwise a description of the mismatch.
fn differ<B: Ord + Clone + fmt::Display>(label: String, lhs: &LinComb<B>, rhs: &LinComb<B>) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(format!("{}: lhs = {} ; rhs = {}", label, lhs, rhs))
    }
}

/// A rational with small numerator and denominator.
pub fn random_rational(rng: &mut impl Rng) -> Q {
    Q::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
}

/// A character with value 1 on single vertices and random values on the given larger trees.
pub fn random_plus_character(rng: &mut impl Rng, trees: &[Tree]) -> PlusCharacter {
    let values: BTreeMap<Tree, Q> = trees.iter().filter(|t| !t.is_vertex()).map(|t| (t.clone(), random_rational(rng))).collect();
    PlusCharacter::table(values, true, None)
}

/// Series `t + f_2 t^2 + ⋯ + f_n t^n` with random rational coefficients.
pub fn random_series(rng: &mut impl Rng, n: usize) -> PowerSeries {
    let coeffs: Vec<Q> = (1..=n).map(|k| if k == 1 { Q::one() } else { random_rational(rng) }).collect();
    PowerSeries::from_fn(n, |k| coeffs[k - 1].clone())
}

fn all_words(letters: &[SemigroupElement], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| letters.iter().map(move |l| w.push(l.clone()))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn tensor_words(a: &LinComb<Tensor<Word, Word>>, b: &LinComb<Tensor<Word, Word>>) -> LinComb<Tensor<Word, Word>> {
    a.bilinear(b, |Tensor(x1, y1), Tensor(x2, y2)| {
        let l = quasi_shuffle(x1, x2);
        let r = quasi_shuffle(y1, y2);
        crate::linear::tensor(&l, &r)
    })
}

fn undecorated_enum() -> Enumerator {
    Enumerator::letters(&[UNDECORATED])
}

pub fn run_suite(suite: &str, bounds: &Bounds) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut sweep = Sweep { checks: Vec::new() };
    match suite {
        "all" => {
            for s in SUITES {
                let r = run_suite(s, bounds)?;
                sweep.checks.extend(r.checks.into_iter().map(|mut c| {
                    c.name = format!("{}: {}", s, c.name);
                    c
                }));
            }
        }
        "prelie" => prelie_suite(&mut sweep, bounds)?,
        "bck" => bck_suite(&mut sweep, bounds)?,
        "qshuffle" => qshuffle_suite(&mut sweep, bounds)?,
        "substitution" => substitution_suite(&mut sweep, bounds)?,
        "diagram" => diagram_suite(&mut sweep, bounds)?,
        "adjoint" => adjoint_suite(&mut sweep, bounds)?,
        "marcus" => marcus_suite(&mut sweep, bounds)?,
        "hk" => hk_suite(&mut sweep, bounds)?,
        "bseries" => bseries_suite(&mut sweep, bounds)?,
        other => return Err(Error::InvalidArgument(format!("unknown suite `{}`", other))),
    }
    Ok(VerifyReport { suite: suite.into(), bounds: bounds.clone(), checks: sweep.checks, wall_time_ms: start.elapsed().as_millis() })
}

fn prelie_suite(sweep: &mut Sweep, bounds: &Bounds) -> Result<()> {
    let n = bounds.vertices(7);
    let mut en = undecorated_enum();
    let trees = en.trees_up_to(n.saturating_sub(2).max(1));
    let mut triples = Vec::new();
    for x in &trees {
        for y in &trees {
            for z in &trees {
                if x.size() + y.size() + z.size() <= n {
                    triples.push((x, y, z));
                }
            }
        }
    }
    triples.sort_by_key(|(x, y, z)| x.size() + y.size() + z.size());
    sweep.check("left pre-Lie identity", triples, |(x, y, z)| {
        let (x, y, z) = (LinComb::basis(x.clone()), LinComb::basis(y.clone()), LinComb::basis(z.clone()));
        let lhs = &graft_lc(&graft_lc(&x, &y), &z) - &graft_lc(&x, &graft_lc(&y, &z));
        let rhs = &graft_lc(&graft_lc(&y, &x), &z) - &graft_lc(&y, &graft_lc(&x, &z));
        Ok(differ(format!("x={} y={} z={}", x, y, z), &lhs, &rhs))
    });

    let gl_bound = n.min(6);
    let forests = en.forests_up_to(gl_bound);
    let mut trip = Vec::new();
    for f in &forests {
        for g in &forests {
            for h in &forests {
                if f.size() + g.size() + h.size() <= gl_bound {
                    trip.push((f, g, h));
                }
            }
        }
    }
    trip.sort_by_key(|(f, g, h)| f.size() + g.size() + h.size());
    sweep.check("Grossman–Larson associativity and unit", trip, |(f, g, h)| {
        let lhs = gl_product_lc(&gl_product(f, g), &LinComb::basis(h.clone()));
        let rhs = gl_product_lc(&LinComb::basis(f.clone()), &gl_product(g, h));
        if let Some(d) = differ(format!("F={} G={} H={}", f, g, h), &lhs, &rhs) {
            return Ok(Some(d));
        }
        let unit = LinComb::basis(f.clone());
        Ok(differ(format!("1 * F with F={}", f), &gl_product(&Forest::unit(), f), &unit)
            .or_else(|| differ(format!("F * 1 with F={}", f), &gl_product(f, &Forest::unit()), &unit)))
    });

    let letters = bounds.letters();
    let mut den = Enumerator::new(&letters);
    let fb = bounds.vertices(5).min(5);
    let cases: Vec<(Forest, SemigroupElement)> =
        den.forests_up_to(fb - 1).into_iter().flat_map(|f| letters.iter().map(move |l| (f.clone(), l.clone()))).collect();
    sweep.check("forest grafting onto a vertex is B+", cases, |(f, i)| {
        let lhs = forest_graft(&f, &Tree::leaf(i.clone()));
        Ok(differ(format!("F={} i={}", f, i), &lhs, &LinComb::basis(b_plus(&i, &f))))
    });

    let mut rng = bounds.rng(1);
    let mb = n.min(5);
    let pairs_small = den.trees(2);
    let morph_cases: Vec<(GeneratorAssignment, Tree, Tree)> = (0..bounds.samples.max(1))
        .map(|_| {
            // g(•_l) = c₁ •_l + c₂ τ with τ a random two-vertex tree
            let g: GeneratorAssignment = letters
                .iter()
                .map(|l| {
                    let mut img = LinComb::term(Tree::leaf(l.clone()), random_rational(&mut rng));
                    img.add_term(pairs_small[rng.gen_range(0..pairs_small.len())].clone(), random_rational(&mut rng));
                    (l.clone(), img)
                })
                .collect();
            let t1 = den.trees(rng.gen_range(1..=2));
            let x = t1[rng.gen_range(0..t1.len())].clone();
            let t2 = den.trees(rng.gen_range(1..=mb - x.size()));
            let y = t2[rng.gen_range(0..t2.len())].clone();
            (g, x, y)
        })
        .collect();
    sweep.check("pre-Lie morphism extension", morph_cases, |(g, x, y)| {
        let mut m = PrelieMorphism::new(&g);
        let lhs = graft(&x, &y).try_flat_map(|t| m.apply(t))?;
        let rhs = graft_lc(&m.apply(&x)?, &m.apply(&y)?);
        Ok(differ(format!("x={} y={} (random generator images)", x, y), &lhs, &rhs))
    });

    let o = LinComb::basis(Tree::vertex(UNDECORATED));
    sweep.check("iterated grafting of a vertex is cm-weighted", 1..=n, |k| {
        let rhs: LinComb<Tree> = en.trees(k).into_iter().map(|t| {
            let c = tree_stats(&t).cm;
            (t, c)
        }).collect();
        Ok(differ(format!("n={}", k), &left_power(&o, &o, k - 1), &rhs))
    });
    Ok(())
}

type Triple = Tensor<Forest, Tensor<Forest, Forest>>;

fn bck_suite(sweep: &mut Sweep, bounds: &Bounds) -> Result<()> {
    let n = bounds.vertices(5);
    let mut en = Enumerator::new(&bounds.letters());
    let forests = en.forests_up_to(n);

    sweep.check("coassociativity", forests.clone(), |f| {
        let d = bck_coproduct(&f);
        let lhs: LinComb<Triple> = d.flat_map(|Tensor(a, b)| {
            bck_coproduct(a).map_basis(|Tensor(x, y)| Tensor(x.clone(), Tensor(y.clone(), b.clone())))
        });
        let rhs: LinComb<Triple> = d.flat_map(|Tensor(a, b)| {
            bck_coproduct(b).map_basis(|Tensor(x, y)| Tensor(a.clone(), Tensor(x.clone(), y.clone())))
        });
        Ok(differ(format!("F={}", f), &lhs, &rhs))
    });

    sweep.check("counit laws", forests.clone(), |f| {
        let d = bck_coproduct(&f);
        let left = d.filter(|Tensor(a, _)| a.is_unit()).map_basis(|Tensor(_, b)| b.clone());
        let right = d.filter(|Tensor(_, b)| b.is_unit()).map_basis(|Tensor(a, _)| a.clone());
        let id = LinComb::basis(f.clone());
        Ok(differ(format!("(ε⊗id)Δ F={}", f), &left, &id).or_else(|| differ(format!("(id⊗ε)Δ F={}", f), &right, &id)))
    });

    sweep.check("grading", forests.clone(), |f| {
        Ok(bck_coproduct(&f)
            .keys()
            .find(|Tensor(a, b)| a.size() + b.size() != f.size())
            .map(|t| format!("F={} term {}", f, t)))
    });

    let trees = en.trees_up_to(n);
    sweep.check("trees are primitive up to proper terms", trees, |t| {
        let ft = Forest::tree(t.clone());
        let mut d = bck_coproduct(&ft);
        d.add_term(Tensor(ft.clone(), Forest::unit()), -Q::one());
        d.add_term(Tensor(Forest::unit(), ft.clone()), -Q::one());
        let bad = d.keys().find(|Tensor(a, b)| a.is_unit() || b.is_unit()).map(|x| format!("t={} term {}", t, x));
        Ok(bad)
    });

    let by_size: Vec<Vec<Forest>> = (0..=n).map(|k| en.forests(k)).collect();
    let coproducts: BTreeMap<Forest, LinComb<TensorFF>> = forests.iter().map(|h| (h.clone(), bck_coproduct(h))).collect();
    let mut pairs = Vec::new();
    for f in &forests {
        for g in &forests {
            if f.size() + g.size() <= n {
                pairs.push((f.clone(), g.clone()));
            }
        }
    }
    pairs.sort_by_key(|(f, g)| f.size() + g.size());
    sweep.check("Grossman–Larson product is dual to the coproduct", pairs, |(f, g)| {
        let prod = gl_product(&f, &g);
        let sfg = Q::from_integer((forest_sigma(&f) * forest_sigma(&g)).into());
        for h in &by_size[f.size() + g.size()] {
            let lhs = prod.coeff(h) * Q::from_integer(forest_sigma(h).into());
            let rhs = coproducts[h].coeff(&Tensor(f.clone(), g.clone())) * &sfg;
            if lhs != rhs {
                return Ok(Some(format!("F={} G={} H={}: <d_(F*G),H> = {} but <d_F ⊗ d_G, ΔH> = {}", f, g, h, lhs, rhs)));
            }
        }
        Ok(None)
    });
    Ok(())
}

fn qshuffle_suite(sweep: &mut Sweep, bounds: &Bounds) -> Result<()> {
    let len = bounds.max_length.unwrap_or(6);
    let letters = bounds.letters();
    let words = all_words(&letters, len);
    let mut pairs = Vec::new();
    for u in &words {
        for v in &words {
            if u.len() + v.len() <= len {
                pairs.push((u.clone(), v.clone()));
            }
        }
    }
    pairs.sort_by_key(|(u, v)| u.len() + v.len());
    sweep.check("quasi-shuffle commutativity", pairs.clone(), |(u, v)| {
        Ok(differ(format!("u={} v={}", u, v), &quasi_shuffle(&u, &v), &quasi_shuffle(&v, &u)))
    });
    let short = all_words(&letters, len.min(5));
    let mut triples = Vec::new();
    for u in short.iter().filter(|u| !u.is_empty()) {
        for v in short.iter().filter(|v| !v.is_empty()) {
            for w in short.iter().filter(|w| !w.is_empty()) {
                if u.len() + v.len() + w.len() <= len {
                    triples.push((u.clone(), v.clone(), w.clone()));
                }
            }
        }
    }
    triples.sort_by_key(|(u, v, w)| u.len() + v.len() + w.len());
    sweep.check("quasi-shuffle associativity", triples, |(u, v, w)| {
        let lhs = quasi_shuffle_lc(&quasi_shuffle(&u, &v), &LinComb::basis(w.clone()));
        let rhs = quasi_shuffle_lc(&LinComb::basis(u.clone()), &quasi_shuffle(&v, &w));
        Ok(differ(format!("u={} v={} w={}", u, v, w), &lhs, &rhs))
    });

    let blen = len.min(5);
    let bpairs: Vec<(Word, Word)> = pairs.iter().filter(|(u, v)| u.len() + v.len() <= blen).cloned().collect();
    sweep.check("deconcatenation is a quasi-shuffle morphism", bpairs.clone(), |(u, v)| {
        let lhs = deconcat_lc(&quasi_shuffle(&u, &v));
        let rhs = tensor_words(&deconcat_lc(&LinComb::basis(u.clone())), &deconcat_lc(&LinComb::basis(v.clone())));
        Ok(differ(format!("u={} v={}", u, v), &lhs, &rhs))
    });

    let mut rng = bounds.rng(2);
    let series: Vec<(PowerSeries, PowerSeries)> =
        (0..20).map(|_| (random_series(&mut rng, blen), random_series(&mut rng, blen))).collect();
    let cwords = all_words(&letters, blen);
    sweep.check("ψ_f∘ψ_g = ψ_(f∘g)", series, |(f, g)| {
        let fg = f.compose(&g);
        for w in &cwords {
            let lhs = psi_series_lc(&f, &psi_series_lc(&g, &LinComb::basis(w.clone()))?)?;
            let rhs = psi_series_lc(&fg, &LinComb::basis(w.clone()))?;
            if let Some(d) = differ(format!("w={} f={:?} g={:?}", w, f.coeffs(), g.coeffs()), &lhs, &rhs) {
                return Ok(Some(d));
            }
        }
        Ok(None)
    });

    sweep.check("Hoffman log and exp are inverse", words.clone(), |w| {
        let id = LinComb::basis(w.clone());
        Ok(differ(format!("log_H(exp_H({}))", w), &hoffman_log_lc(&hoffman_exp(&w)), &id)
            .or_else(|| differ(format!("exp_H(log_H({}))", w), &hoffman_exp_lc(&hoffman_log(&w)), &id)))
    });

    sweep.check("exp_H is a Hopf morphism from shuffle to quasi-shuffle", bpairs, |(u, v)| {
        let lhs = hoffman_exp_lc(&shuffle(&u, &v));
        let rhs = quasi_shuffle_lc(&hoffman_exp(&u), &hoffman_exp(&v));
        if let Some(d) = differ(format!("exp_H(u ⧢ v) u={} v={}", u, v), &lhs, &rhs) {
            return Ok(Some(d));
        }
        let w = u.concat(&v);
        let lhs = deconcat_lc(&hoffman_exp(&w));
        let rhs = deconcat_lc(&LinComb::basis(w.clone())).flat_map(|Tensor(a, b)| {
            crate::linear::tensor(&hoffman_exp(a), &hoffman_exp(b))
        });
        Ok(differ(format!("△∘exp_H w={}", w), &lhs, &rhs))
    });

    let rwords: Vec<(Word, SemigroupElement)> =
        all_words(&letters, blen.saturating_sub(1)).into_iter().flat_map(|w| letters.iter().map(move |l| (w.clone(), l.clone()))).collect();
    sweep.check("R^i intertwines deconcatenation", rwords, |(w, i)| {
        let riw = append_letter(&w, &i);
        let lhs = deconcat_lc(&LinComb::basis(riw.clone()));
        let mut rhs = LinComb::basis(Tensor(riw, Word::empty()));
        rhs += &deconcat_lc(&LinComb::basis(w.clone())).map_basis(|Tensor(a, b)| Tensor(a.clone(), append_letter(b, &i)));
        Ok(differ(format!("w={} i={}", w, i), &lhs, &rhs))
    });
    Ok(())
}

type SubTriple = Tensor<Forest, Tensor<Forest, Tree>>;

fn substitution_suite(sweep: &mut Sweep, bounds: &Bounds) -> Result<()> {
    let n = bounds.vertices(5);
    let letters = bounds.letters();
    let mut en = Enumerator::new(&letters);
    let trees = en.trees_up_to(n);

    sweep.check("coassociativity of δ⁺", trees.clone(), |t| {
        let d = sub_coproduct(&t);
        let lhs: LinComb<SubTriple> = d.flat_map(|Tensor(a, b)| {
            coaction(a).map_basis(|Tensor(x, y)| Tensor(x.clone(), Tensor(y.clone(), b.clone())))
        });
        let rhs: LinComb<SubTriple> = d.flat_map(|Tensor(a, b)| {
            sub_coproduct(b).map_basis(|Tensor(x, y)| Tensor(a.clone(), Tensor(Forest::from(x.clone()), y.clone())))
        });
        Ok(differ(format!("t={}", t), &lhs, &rhs))
    });

    sweep.check("counit laws of δ⁺", trees.clone(), |t| {
        let d = sub_coproduct(&t);
        // ε on the left keeps the all-vertex extraction; Z_• on the right keeps contraction to a vertex.
        let left = d.filter(|Tensor(a, _)| a.trees().iter().all(Tree::is_vertex)).map_basis(|Tensor(_, b)| b.clone());
        let right = d.filter(|Tensor(_, b)| b.is_vertex()).map_basis(|Tensor(a, _)| a.clone());
        Ok(differ(format!("left t={}", t), &left, &LinComb::basis(t.clone()))
            .or_else(|| differ(format!("right t={}", t), &right, &LinComb::basis(Forest::tree(t.clone())))))
    });

    sweep.check("δ⁺ preserves the edge grading", trees.clone(), |t| {
        Ok(sub_coproduct(&t)
            .keys()
            .find(|Tensor(a, b)| a.edges() + b.edges() != t.edges())
            .map(|x| format!("t={} term {}", t, x)))
    });

    let ladders: Vec<Word> = all_words(&letters, n).into_iter().filter(|w| !w.is_empty()).collect();
    sweep.check("δ⁺ on ladders is a sum over compositions", ladders, |w| {
        let t = Tree::ladder(&w.0);
        let mut rhs = LinComb::zero();
        for parts in compositions(w.len()) {
            let mut k = 0;
            let mut blocks = Vec::new();
            let mut decos = Vec::new();
            for p in parts {
                blocks.push(Tree::ladder(&w.0[k..k + p]));
                decos.push(crate::semigroup::semigroup_mul(&w.0[k..k + p])?);
                k += p;
            }
            rhs.add_term(Tensor(Forest::new(blocks), Tree::ladder(&decos)), Q::one());
        }
        Ok(differ(format!("ladder {}", t), &sub_coproduct(&t), &rhs))
    });

    let fb = n.min(4);
    let forests = en.forests_up_to(fb);
    let support = crate::arbo::graded_trees(&Semigroup::Free, &letters, fb)?;
    let mut rng = bounds.rng(3);
    let chars: Vec<(PlusCharacter, PlusCharacter)> = (0..bounds.samples.max(1))
        .map(|_| (random_plus_character(&mut rng, &support), random_plus_character(&mut rng, &support)))
        .collect();
    sweep.check("Ψ_u∘Ψ_v = Ψ_(v⊛u)", chars.clone(), |(u, v)| {
        let vu = PlusCharacter::convolution(&v, &u, &Semigroup::Free);
        for f in &forests {
            let lhs = psi_v(&v, f)?.try_flat_map(|g| psi_v(&u, g))?;
            let rhs = psi_v(&vu, f)?;
            if let Some(d) = differ(format!("F={} (random u, v)", f), &lhs, &rhs) {
                return Ok(Some(d));
            }
        }
        Ok(None)
    });

    sweep.check("Ψ_v is a bialgebra morphism", chars.clone(), |(v, _)| {
        for f in &forests {
            for g in &forests {
                if f.size() + g.size() > fb {
                    continue;
                }
                let lhs = psi_v(&v, &f.mul(g))?;
                let rhs = forest_mul_lc(&psi_v(&v, f)?, &psi_v(&v, g)?);
                if let Some(d) = differ(format!("Ψ_v(F·G) F={} G={}", f, g), &lhs, &rhs) {
                    return Ok(Some(d));
                }
            }
            let lhs = psi_v(&v, f)?.flat_map(bck_coproduct);
            let rhs = bck_coproduct(f).try_flat_map(|Tensor(a, b)| {
                Ok::<_, Error>(crate::linear::tensor(&psi_v(&v, a)?, &psi_v(&v, b)?))
            })?;
            if let Some(d) = differ(format!("Δ∘Ψ_v F={}", f), &lhs, &rhs) {
                return Ok(Some(d));
            }
        }
        Ok(None)
    });

    let mut inverse_cases: Vec<PlusCharacter> = vec![PlusCharacter::inverse_factorial()];
    inverse_cases.extend(chars.iter().map(|(u, _)| u.clone()));
    sweep.check("Ψ_(v⁻)∘Ψ_v = id", inverse_cases, |v| {
        let inv = invert_character(&v, fb)?;
        for f in &forests {
            let back = psi_v(&v, f)?.try_flat_map(|g| psi_v(&inv, g))?;
            if let Some(d) = differ(format!("F={}", f), &back, &LinComb::basis(f.clone())) {
                return Ok(Some(d));
            }
        }
        Ok(None)
    });

    let functionals: Vec<(PlusCharacter, BckFunctional, BckFunctional)> = chars
        .iter()
        .map(|(phi, _)| {
            let mut rand_fn = || {
                let values = forests.iter().map(|f| (f.clone(), random_rational(&mut rng))).collect();
                BckFunctional::new(FunctionalKind::General, values, Some(fb))
            };
            (phi.clone(), rand_fn(), rand_fn())
        })
        .collect();
    sweep.check("φ ⊛ (b ∗ c) = (φ ⊛ b) ∗ (φ ⊛ c)", functionals, |(phi, b, c)| {
        let act = |x: &BckFunctional, f: &Forest| x.eval_lc(&psi_v(&phi, f)?);
        for f in &forests {
            let lhs = psi_v(&phi, f)?.try_eval(|g| crate::bck::convolve_bck(&b, &c, g))?;
            let rhs = bck_coproduct(f).try_eval(|Tensor(x, y)| Ok::<_, Error>(act(&b, x)? * act(&c, y)?))?;
            if lhs != rhs {
                return Ok(Some(format!("F={}: {} vs {}", f, lhs, rhs)));
            }
        }
        Ok(None)
    });
    Ok(())
}

fn diagram_suite(sweep: &mut Sweep, bounds: &Bounds) -> Result<()> {
    let n = bounds.vertices(5);
    let mut en = Enumerator::new(&bounds.letters());
    // all trees of total letter weight ≤ n, so contracted decorations also appear as inputs
    let trees = crate::arbo::graded_trees(&Semigroup::Free, &bounds.letters(), n)?;
    sweep.check("𝔞^c∘Ψ_v = exp_H∘𝔞", trees, |t| {
        let f = Forest::tree(t.clone());
        let lhs = arbo_hoffman_exp_in(&Semigroup::Free, &f)?.flat_map(contract_arborify);
        let rhs = hoffman_exp_lc(&arborify(&f));
        Ok(differ(format!("t={}", t), &lhs, &rhs))
    });

    let forests = en.forests_up_to(n.min(5));
    let mut pairs = Vec::new();
    for f in &forests {
        for g in &forests {
            if f.size() + g.size() <= n.min(5) && f <= g {
                pairs.push((f.clone(), g.clone()));
            }
        }
    }
    pairs.sort_by_key(|(f, g)| f.size() + g.size());
    sweep.check("arborifications are algebra morphisms", pairs, |(f, g)| {
        let fg = f.mul(&g);
        let lhs = arborify(&fg);
        let rhs = crate::qshuffle::shuffle_lc(&arborify(&f), &arborify(&g));
        if let Some(d) = differ(format!("𝔞 F={} G={}", f, g), &lhs, &rhs) {
            return Ok(Some(d));
        }
        let lhs = contract_arborify(&fg);
        let rhs = quasi_shuffle_lc(&contract_arborify(&f), &contract_arborify(&g));
        Ok(differ(format!("𝔞^c F={} G={}", f, g), &lhs, &rhs))
    });

    sweep.check("arborifications intertwine the coproducts", forests, |f| {
        let d = bck_coproduct(&f);
        let lhs = deconcat_lc(&arborify(&f));
        let rhs = d.flat_map(|Tensor(a, b)| crate::linear::tensor(&arborify(a), &arborify(b)));
        if let Some(x) = differ(format!("𝔞 F={}", f), &lhs, &rhs) {
            return Ok(Some(x));
        }
        let lhs = deconcat_lc(&contract_arborify(&f));
        let rhs = d.flat_map(|Tensor(a, b)| crate::linear::tensor(&contract_arborify(a), &contract_arborify(b)));
        Ok(differ(format!("𝔞^c F={}", f), &lhs, &rhs))
    });
    Ok(())
}

fn adjoint_suite(sweep: &mut Sweep, bounds: &Bounds) -> Result<()> {
    let n = bounds.vertices(6);
    let undecorated = Semigroup::undecorated();
    let o = SemigroupElement::letter(UNDECORATED);
    let adj = arbo_hoffman_adjoint(&undecorated, &o, n)?;
    let ov = LinComb::basis(Tree::vertex(UNDECORATED));
    sweep.check("degree-n adjoint times n! is L^(n-1)(•)", 1..=n, |k| {
        let part = adj.filter(|t| t.size() == k).scale(&Q::from_integer(crate::tree::factorial(k).into()));
        Ok(differ(format!("n={}", k), &part, &left_power(&ov, &ov, k - 1)))
    });

    let order = bounds.order.unwrap_or(4);
    let letters = bounds.letters();
    let mut rng = bounds.rng(4);
    let support = crate::arbo::graded_trees(&Semigroup::Free, &letters, order)?;
    let mut cases: Vec<(String, Semigroup, PlusCharacter, Vec<SemigroupElement>, usize)> = Vec::new();
    for k in 1..=order {
        cases.push((format!("a=Z_• N={}", k), Semigroup::Free, PlusCharacter::unit(), letters.clone(), k));
        cases.push((format!("a=1/τ! N={}", k), Semigroup::Free, PlusCharacter::inverse_factorial(), letters.clone(), k));
    }
    for s in 0..bounds.samples {
        let a = random_plus_character(&mut rng, &support);
        cases.push((format!("random a #{} N={}", s, order), Semigroup::Free, a, letters.clone(), order));
    }
    let usupport = undecorated_enum().trees_up_to(order);
    for s in 0..bounds.samples {
        let a = random_plus_character(&mut rng, &usupport);
        cases.push((format!("undecorated random a #{} N={}", s, order), undecorated.clone(), a, vec![o.clone()], order));
    }
    sweep.check("flow adjoint residual vanishes", cases, |(label, sg, a, alpha, k)| {
        let r = flow_adjoint_residual(&sg, &a, &alpha, k)?;
        Ok(if r.is_zero() { None } else { Some(format!("{}: residual {}", label, r)) })
    });

    let fb = bounds.vertices(4).min(4);
    let forests = Enumerator::new(&letters).forests_up_to(fb);
    let v = PlusCharacter::inverse_factorial();
    let inv = invert_character_in(&Semigroup::Free, &v, fb)?;
    sweep.check("inverse renormalisation Ψ_(v⁻)∘Ψ_v = id for v = 1/τ!", forests, |f| {
        let back = psi_v_in(&Semigroup::Free, &v, &f)?.try_flat_map(|g| psi_v_in(&Semigroup::Free, &inv, g))?;
        Ok(differ(format!("F={}", f), &back, &LinComb::basis(f.clone())))
    });
    Ok(())
}

fn marcus_suite(sweep: &mut Sweep, bounds: &Bounds) -> Result<()> {
    let n = bounds.order.unwrap_or(5);
    let m = marcus_modified_field(n)?;
    let one = Tree::vertex(MarcusAlphabet::DIFFUSION);
    let b = LinComb::basis(one.clone());
    let golden = vec![
        (1, LinComb::basis(one.clone())),
        (2, graft_lc(&b, &b).scale(&Q::new(1.into(), 2.into()))),
        (3, (&graft_lc(&b, &graft_lc(&b, &b))).scale(&Q::new(1.into(), 6.into()))),
    ];
    sweep.check("Itô–Stratonovich corrections", golden.into_iter().filter(|(k, _)| *k <= n), |(k, want)| {
        Ok(differ(format!("n={}", k), &m[&MarcusAlphabet::letter(k)], &want))
    });
    let single = Semigroup::table(vec![(
        crate::semigroup::Letter::new(MarcusAlphabet::DIFFUSION),
        crate::semigroup::Letter::new(MarcusAlphabet::DIFFUSION),
        crate::semigroup::Letter::new(MarcusAlphabet::DIFFUSION),
    )])?;
    let idempotent = arbo_hoffman_adjoint(&single, &SemigroupElement::letter(MarcusAlphabet::DIFFUSION), n)?;
    sweep.check("Marcus field matches the adjoint on the diffusion letter", 1..=n, |k| {
        let want = &m[&MarcusAlphabet::letter(k)];
        let part = idempotent.filter(|t| t.size() == k);
        if let Some(d) = differ(format!("idempotent letter, n={}", k), &part, want) {
            return Ok(Some(d));
        }
        let free = arbo_hoffman_adjoint(&Semigroup::Free, &MarcusAlphabet::letter(k), k)?
            .filter(|t| t.decorations().iter().all(|d| d.is_base()));
        Ok(differ(format!("free letter [1^{}]", k), &free, want))
    });
    Ok(())
}

fn hk_suite(sweep: &mut Sweep, bounds: &Bounds) -> Result<()> {
    let n = bounds.vertices(5);
    let mut en = undecorated_enum();
    let trees = en.trees_up_to(n);
    sweep.check("π∘ψ = ψ̃ on trees", trees.clone(), |t| {
        let lhs = hk_psi(&t)?.map_basis(project_forest);
        let rhs = hk_psi_tilde(&Forest::tree(t.clone()))?;
        Ok(differ(format!("t={}", t), &lhs, &rhs))
    });
    let forests = en.forests_up_to(n);
    sweep.check("π∘ψ = ψ̃ on forests", forests.iter().filter(|f| f.size() <= 4).cloned().collect::<Vec<_>>(), |f| {
        Ok(differ(format!("F={}", f), &hk_psi_forest(&f)?.map_basis(project_forest), &hk_psi_tilde(&f)?))
    });
    let mut pairs = Vec::new();
    for f in en.forests_up_to(4) {
        for g in en.forests_up_to(4) {
            if f.size() + g.size() <= 4 {
                pairs.push((f.clone(), g));
            }
        }
    }
    sweep.check("ψ is multiplicative into the shuffle algebra", pairs, |(f, g)| {
        let lhs = hk_psi_forest(&f.mul(&g))?;
        let rhs = tensor_shuffle(&hk_psi_forest(&f)?, &hk_psi_forest(&g)?);
        Ok(differ(format!("F={} G={}", f, g), &lhs, &rhs))
    });
    sweep.check("ψ̃ and ψ̃⁻¹ are inverse", forests.clone(), |f| {
        let id = LinComb::basis(f.clone());
        if let Some(d) = differ(format!("ψ̃∘ψ̃⁻¹ F={}", f), &hk_psi_tilde_lc(&hk_psi_tilde_inv(&f)?)?, &id) {
            return Ok(Some(d));
        }
        Ok(differ(format!("ψ̃⁻¹∘ψ̃ F={}", f), &hk_psi_tilde_inv_lc(&hk_psi_tilde(&f)?)?, &id))
    });
    sweep.check("ψ̃ is unitriangular", trees, |t| {
        let mut d = hk_psi_tilde(&Forest::tree(t.clone()))?;
        d.add_term(Forest::tree(t.clone()), -Q::one());
        let bad = d.keys().find(|g| g.len() <= 1).map(|g| format!("t={} term {}", t, g));
        Ok(bad)
    });
    sweep.check("flow identity", 1..=bounds.order.unwrap_or(4), |k| {
        let r = hk_flow_identity_residual(k)?;
        Ok(if r.is_zero() { None } else { Some(format!("N={}: residual {}", k, r)) })
    });
    Ok(())
}

/// A random quadratic vector field on two coordinates.
pub fn random_quadratic_field(rng: &mut impl Rng) -> PolyVectorField {
    let monomials = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
    let comp = |rng: &mut dyn rand::RngCore| {
        let mut p = Polynomial::zero(2);
        for m in monomials {
            p.add_term(m.to_vec(), Q::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into()));
        }
        p
    };
    PolyVectorField::new(vec![comp(rng), comp(rng)]).expect("two components")
}

fn bseries_suite(sweep: &mut Sweep, bounds: &Bounds) -> Result<()> {
    let n = bounds.order.unwrap_or(4);
    let mut rng = bounds.rng(5);
    let mut en = undecorated_enum();
    let trees = en.trees_up_to(n);
    let mut pairs = Vec::new();
    for s in &trees {
        for t in &trees {
            if s.size() + t.size() <= n + 1 {
                pairs.push((s.clone(), t.clone()));
            }
        }
    }
    let fields: Vec<Fields> = (0..3).map(|_| undecorated_fields(random_quadratic_field(&mut rng))).collect();
    sweep.check("elementary differentials are a pre-Lie morphism", pairs, |(s, t)| {
        for f in &fields {
            let lhs = graft(&s, &t).iter().try_fold(f.values().next().expect("field").zero_like(), |acc, (x, c)| {
                acc.add(&elementary_differential(f, x)?.scale(c))
            })?;
            let rhs = field_prelie(&elementary_differential(f, &s)?, &elementary_differential(f, &t)?)?;
            if lhs != rhs {
                return Ok(Some(format!("s={} t={} f=({})", s, t, f.values().next().expect("field"))));
            }
        }
        Ok(None)
    });

    let inv = PlusCharacter::inverse_factorial();
    let a_inv = |t: &Tree| inv.eval_tree(t);
    let flows = vec![("y", 0usize), ("y^2", 1)];
    sweep.check("exact flows of y' = y and y' = y²", flows, |(src, kind)| {
        let f = undecorated_fields(PolyVectorField::parse(src)?);
        let c = bseries_truncated(&a_inv, &f, n, &[Q::one()])?;
        for (k, v) in c.iter().enumerate() {
            let want = if kind == 0 { Q::from_integer(crate::tree::factorial(k).into()).recip() } else { Q::one() };
            if v[0] != want {
                return Ok(Some(format!("f={} h^{}: {} vs {}", src, k, v[0], want)));
            }
        }
        Ok(None)
    });

    let support = en.trees_up_to(n);
    let sg = Semigroup::undecorated();
    let quad = random_quadratic_field(&mut rng);
    let y0_2 = vec![Q::new(1.into(), 2.into()), Q::new((-1).into(), 3.into())];
    let mut cases: Vec<(String, PlusCharacter, PlusCharacter)> =
        vec![("a=b=1/τ!".into(), PlusCharacter::inverse_factorial(), PlusCharacter::inverse_factorial())];
    cases.push(("a=Z_•, b=1/τ!".into(), PlusCharacter::unit(), PlusCharacter::inverse_factorial()));
    for s in 0..bounds.samples {
        let a = random_plus_character(&mut rng, &support);
        let b = random_plus_character(&mut rng, &support);
        cases.push((format!("random pair #{}", s), a, b));
    }
    let y2 = undecorated_fields(PolyVectorField::parse("y^2")?);
    let q2 = undecorated_fields(quad.clone());
    sweep.check("substitution law", cases, |(label, a, b)| {
        let b_fn = |t: &Tree| b.eval_tree(t);
        for (fname, f, y0) in [("y^2", &y2, vec![Q::one()]), ("2-d quadratic", &q2, y0_2.clone())] {
            let r = substitution_law_residual(&sg, &a, &b_fn, f, n, &y0)?;
            if !r.is_zero() {
                return Ok(Some(format!("{} on f={}: residual {}", label, fname, r)));
            }
        }
        Ok(None)
    });

    let base = random_plus_character(&mut rng, &support);
    let other = random_plus_character(&mut rng, &support);
    sweep.check("h^k coefficient depends only on k-vertex trees", 1..=n, |k| {
        let a = |t: &Tree| base.eval_tree(t);
        let mixed = |t: &Tree| if t.size() == k { base.eval_tree(t) } else { other.eval_tree(t) };
        let lhs = bseries_truncated(&a, &q2, n, &y0_2)?;
        let rhs = bseries_truncated(&mixed, &q2, n, &y0_2)?;
        Ok(if lhs[k] == rhs[k] { None } else { Some(format!("k={}", k)) })
    });
    Ok(())
}
