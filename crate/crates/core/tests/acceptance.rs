//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

mod common;

use std::time::Instant;

use common::*;
use num_bigint::BigUint;
use num_traits::One;
use treehopf::arbo::{arbo_hoffman_exp, arborify, contract_arborify};
use treehopf::bck::bck_coproduct;
use treehopf::hk::{hk_psi, hk_psi_tilde};
use treehopf::poly::PolyVectorField;
use treehopf::prelie::{forest_graft, gl_product, left_power};
use treehopf::qshuffle::{hoffman_exp, hoffman_exp_lc, hoffman_log};
use treehopf::substitution::{invert_character, psi_v, sub_coproduct, PlusCharacter};
use treehopf::tree::{factorial, linear_extension_count, tree_sigma, tree_stats, Enumerator};
use treehopf::verify::{random_plus_character, random_quadratic_field, run_suite, Bounds};
use treehopf::{cli, Forest, LinComb, SemigroupElement, Tree};

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn same<B: Ord + Clone + std::fmt::Display>(what: &str, got: &LinComb<B>, want: &LinComb<B>) -> Result<(), String> {
    ensure(got == want, || format!("{}: got {} ; expected {}", what, got, want))
}

/// Run a suite and require the named checks to be present and passing.
fn suite_checks(suite: &str, bounds: &Bounds, names: &[&str]) -> Result<usize, String> {
    let report = run_suite(suite, bounds).map_err(|e| e.to_string())?;
    let mut cases = 0;
    for name in names {
        let c = report.check(name).ok_or_else(|| format!("{} suite has no check `{}`", suite, name))?;
        ensure(c.passed, || format!("{}: {} failed: {}", suite, name, c.counterexample.clone().unwrap_or_default()))?;
        cases += c.cases;
    }
    Ok(cases)
}

fn golden_values() -> Outcome {
    for (t, fact, sigma) in [("o(o(o,o))", 12u32, 2u32), ("o(o(o),o)", 8, 1)] {
        let s = tree_stats(&tree(t));
        ensure(s.factorial == BigUint::from(fact) && s.sigma == BigUint::from(sigma), || {
            format!("{}: τ! = {}, σ = {}", t, s.factorial, s.sigma)
        })?;
    }
    for (t, cm) in [("o", 1), ("o(o)", 1), ("o(o,o)", 1), ("o(o(o,o))", 1), ("o(o(o),o)", 3)] {
        let got = tree_stats(&tree(t)).cm;
        ensure(got == q(cm, 1), || format!("cm({}) = {}", t, got))?;
    }
    let o = trees("o");
    same("L²", &left_power(&o, &o, 2), &trees("o(o,o) + o(o(o))"))?;
    same("L³", &left_power(&o, &o, 3), &trees("3 * o(o(o),o) + o(o,o,o) + o(o(o(o))) + o(o(o,o))"))?;
    same("•_i ∗ •_j", &gl_product(&forest("i"), &forest("j")), &forests("i·j + j(i)"))?;

    same("δ⁺(•_i)", &sub_coproduct(&tree("i")), &forest_tree_pairs("i ⊗ i"))?;
    same("δ⁺ two vertices", &sub_coproduct(&tree("j(i)")), &forest_tree_pairs("j(i) ⊗ [i j] + i·j ⊗ j(i)"))?;
    same(
        "δ⁺ cherry",
        &sub_coproduct(&tree("i3(i1,i2)")),
        &forest_tree_pairs(
            "i3(i1,i2) ⊗ [i1 i2 i3] + i1·i2·i3 ⊗ i3(i1,i2) + i3(i1)·i2 ⊗ [i1 i3](i2) + i3(i2)·i1 ⊗ [i2 i3](i1)",
        ),
    )?;

    // v(•_i)=1, v(•_j(•_i)) = δ_ij/2, zero on larger trees
    let v = character(&[("a(a)", q(1, 2)), ("b(b)", q(1, 2))]);
    let psi = |s: &str| psi_v(&v, &forest(s)).map_err(|e| e.to_string());
    same("Ψ_v(•_b(•_a))", &psi("b(a)")?, &forests("b(a)"))?;
    same("Ψ_v(•_a(•_a))", &psi("a(a)")?, &forests("a(a) + 1/2 * [a a]"))?;
    same("Ψ_v cherry i1=i3", &psi("a(a,b)")?, &forests("a(a,b) + 1/2 * [a a](b)"))?;
    same("Ψ_v cherry i2=i3", &psi("b(a,b)")?, &forests("b(a,b) + 1/2 * [b b](a)"))?;
    same("Ψ_v cherry all equal", &psi("a(a,a)")?, &forests("a(a,a) + [a a](a)"))?;

    same("exp_H length 1", &hoffman_exp(&word("a")), &words("a"))?;
    same("log_H length 1", &hoffman_log(&word("a")), &words("a"))?;
    same("exp_H length 2", &hoffman_exp(&word("a.b")), &words("a.b + 1/2 * [a b]"))?;
    same("log_H length 2", &hoffman_log(&word("a.b")), &words("a.b + -1/2 * [a b]"))?;
    same("exp_H length 3", &hoffman_exp(&word("a.b.c")), &words("a.b.c + 1/2 * [a b].c + 1/2 * a.[b c] + 1/6 * [a b c]"))?;
    same("log_H length 3", &hoffman_log(&word("a.b.c")), &words("a.b.c + -1/2 * [a b].c + -1/2 * a.[b c] + 1/3 * [a b c]"))?;

    let cherry = forest("i3(i1,i2)");
    let psi_cherry = arbo_hoffman_exp(&cherry);
    same("Ψ_(1/τ!)(cherry)", &psi_cherry, &forests("1/3 * [i1 i2 i3] + i3(i1,i2) + 1/2 * [i1 i3](i2) + 1/2 * [i2 i3](i1)"))?;
    let displayed = words("1/3 * [i1 i2 i3] + i1.i2.i3 + i2.i1.i3 + [i1 i2].i3 + 1/2 * i2.[i1 i3] + 1/2 * i1.[i2 i3]");
    same("𝔞^c∘Ψ_v(cherry)", &psi_cherry.flat_map(contract_arborify), &displayed)?;
    same("exp_H∘𝔞(cherry)", &hoffman_exp_lc(&arborify(&cherry)), &displayed)?;

    let hk = |s: &str| hk_psi(&tree(s)).map_err(|e| e.to_string());
    same("ψ(ladder)", &hk("o(o(o))")?, &tensor_words("o(o(o)) + o(o) ⊗ o + o ⊗ o ⊗ o + o ⊗ o(o)"))?;
    same("ψ(cherry)", &hk("o(o,o)")?, &tensor_words("o(o,o) + 2 * o ⊗ o ⊗ o + 2 * o ⊗ o(o)"))?;
    let tilde = hk_psi_tilde(&forest("o(o,o)")).map_err(|e| e.to_string())?;
    same("ψ̃(cherry)", &tilde, &forests("o(o,o) + 2 * o·o·o + 2 * o·o(o)"))?;

    let run = |args: &[&str]| cli::run(std::iter::once("treehopf").chain(args.iter().copied()).map(String::from).collect());
    let (code, out) = run(&["graft", "o", "o(o)"]);
    ensure(code == 0 && out.trim() == "1 * o(o,o) + 1 * o(o(o))", || format!("cli graft: {} {}", code, out))?;
    let (code, out) = run(&["hoffman-exp", "a.b"]);
    ensure(code == 0 && out.trim() == "1 * a.b + 1/2 * [a b]", || format!("cli hoffman-exp: {} {}", code, out))?;
    Ok("statistics, cm, L², L³, GL, δ⁺, Ψ_v, exp_H/log_H, arborified cherry, ψ, ψ̃, CLI".into())
}

fn main_theorem() -> Outcome {
    let bounds = Bounds { max_vertices: Some(5), ..Bounds::default() };
    let graded = suite_checks("diagram", &bounds, &["𝔞^c∘Ψ_v = exp_H∘𝔞"])?;
    // all trees with ≤ 5 vertices whose decorations have weight ≤ 2
    let letters = vec![SemigroupElement::letter("a"), SemigroupElement::letter("b")];
    let mut labels = letters.clone();
    for (k, x) in letters.iter().enumerate() {
        for y in &letters[k..] {
            labels.push(x.join(y));
        }
    }
    let trees = Enumerator::new(&labels).trees_up_to(5);
    for t in &trees {
        let f = Forest::tree(t.clone());
        let lhs = arbo_hoffman_exp(&f).flat_map(contract_arborify);
        let rhs = hoffman_exp_lc(&arborify(&f));
        same(&format!("t = {}", t), &lhs, &rhs)?;
    }
    Ok(format!("{} weight-graded trees, {} trees with decorations of weight ≤ 2", graded, trees.len()))
}

fn hopf_axioms() -> Outcome {
    let bounds = Bounds { max_vertices: Some(5), max_length: Some(5), ..Bounds::default() };
    let mut n = suite_checks("bck", &bounds, &["coassociativity", "counit laws"])?;
    n += suite_checks("substitution", &bounds, &["coassociativity of δ⁺", "counit laws of δ⁺"])?;
    n += suite_checks("qshuffle", &bounds, &["deconcatenation is a quasi-shuffle morphism"])?;
    let forests = Enumerator::letters(&["a", "b"]).forests_up_to(5);
    for f in &forests {
        same(&format!("Δ vs recursive oracle, F = {}", f), &bck_coproduct(f), &bck_recursive(f))?;
    }
    Ok(format!("{} cases; coproduct matches the recursive oracle on {} forests", n, forests.len()))
}

fn inverse_pairs() -> Outcome {
    let bounds = Bounds { max_length: Some(6), samples: 10, ..Bounds::default() };
    let mut n = suite_checks("qshuffle", &bounds, &["Hoffman log and exp are inverse"])?;
    let five = Bounds { max_length: Some(5), ..Bounds::default() };
    let report = run_suite("qshuffle", &five).map_err(|e| e.to_string())?;
    let c = report.check("ψ_f∘ψ_g = ψ_(f∘g)").ok_or("missing ψ_f check")?;
    ensure(c.passed && c.cases == 20, || format!("ψ_f∘ψ_g: {:?}", c))?;
    n += suite_checks("substitution", &Bounds { max_vertices: Some(4), ..Bounds::default() }, &["Ψ_(v⁻)∘Ψ_v = id"])?;
    n += suite_checks("hk", &Bounds { max_vertices: Some(5), ..Bounds::default() }, &["ψ̃ and ψ̃⁻¹ are inverse"])?;

    let letters = [SemigroupElement::letter("a"), SemigroupElement::letter("b")];
    let support = treehopf::arbo::graded_trees(&treehopf::Semigroup::Free, &letters, 4).map_err(|e| e.to_string())?;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
    let mut chars = vec![PlusCharacter::inverse_factorial()];
    chars.extend((0..5).map(|_| random_plus_character(&mut rng, &support)));
    let trees = Enumerator::letters(&["a", "b"]).trees_up_to(4);
    for v in &chars {
        let inv = invert_character(v, 3).map_err(|e| e.to_string())?;
        for t in &trees {
            let got = inv.eval_tree(t).map_err(|e| e.to_string())?;
            let want = pseudo_antipode_inverse(v, t);
            ensure(got == want, || format!("v⁻({}) = {} but the pseudo-antipode series gives {}", t, got, want))?;
        }
    }
    Ok(format!("{} cases; inverse characters match the pseudo-antipode series", n + 20))
}

fn duality() -> Outcome {
    let mut n = suite_checks("bck", &Bounds { max_vertices: Some(5), ..Bounds::default() }, &[
        "Grossman–Larson product is dual to the coproduct",
    ])?;
    let bounds = Bounds { order: Some(4), samples: 10, ..Bounds::default() };
    n += suite_checks("adjoint", &bounds, &["flow adjoint residual vanishes"])?;
    n += suite_checks("hk", &bounds, &["flow identity"])?;
    Ok(format!("{} cases", n))
}

fn oracles() -> Outcome {
    let mut en = Enumerator::letters(&["o"]);
    let undecorated = en.trees_up_to(7);
    for t in &undecorated {
        let count = linear_extension_count(t).map_err(|e| e.to_string())?;
        let s = tree_stats(t);
        ensure(&count * &s.factorial == factorial(t.size()), || format!("linear extensions of {}", t))?;
        ensure(count == BigUint::from(linear_extensions_brute(t)), || format!("brute-force extensions of {}", t))?;
        ensure(tree_sigma(t) == BigUint::from(automorphisms_brute(t)), || format!("σ({}) vs brute force", t))?;
    }
    let mut den = Enumerator::letters(&["a", "b"]);
    let targets = den.trees_up_to(4);
    let sources = den.forests_up_to(3);
    for f in &sources {
        for t in &targets {
            same(&format!("F = {}, t = {}", f, t), &forest_graft(f, t), &forest_graft_direct(f, t))?;
        }
    }
    let o = trees("o");
    for k in 1..=7 {
        let want: LinComb<Tree> = en.trees(k).into_iter().map(|t| {
            let c = tree_stats(&t).cm;
            (t, c)
        }).collect();
        same(&format!("L^{}(•)", k - 1), &left_power(&o, &o, k - 1), &want)?;
    }
    Ok(format!("{} trees, {} graft pairs, n ≤ 7", undecorated.len(), sources.len() * targets.len()))
}

fn marcus() -> Outcome {
    let n = suite_checks("marcus", &Bounds { order: Some(5), ..Bounds::default() }, &[
        "Itô–Stratonovich corrections",
        "Marcus field matches the adjoint on the diffusion letter",
    ])?;
    let m = treehopf::arbo::marcus_modified_field(3).map_err(|e| e.to_string())?;
    let l = treehopf::arbo::MarcusAlphabet::letter;
    same("n = 2", &m[&l(2)], &trees("1/2 * 1(1)"))?;
    same("n = 3", &m[&l(3)], &trees("1/6 * 1(1,1) + 1/6 * 1(1(1))"))?;
    Ok(format!("{} cases", n))
}

fn bseries() -> Outcome {
    let bounds = Bounds { order: Some(4), samples: 10, ..Bounds::default() };
    let n = suite_checks("bseries", &bounds, &["substitution law", "exact flows of y' = y and y' = y²"])?;
    let inv = PlusCharacter::inverse_factorial();
    let a = |t: &Tree| inv.eval_tree(t);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
    let cases = vec![
        (PolyVectorField::parse("y").unwrap(), vec![q(1, 1)]),
        (PolyVectorField::parse("y^2").unwrap(), vec![q(1, 1)]),
        (PolyVectorField::parse("y^2").unwrap(), vec![q(-2, 3)]),
        (random_quadratic_field(&mut rng), vec![q(1, 2), q(-1, 3)]),
    ];
    for (f, y0) in cases {
        let got = treehopf::bseries::bseries_truncated(&a, &one_field(f.clone()), 4, &y0).map_err(|e| e.to_string())?;
        let want = exact_flow_taylor(&f, &y0, 4);
        ensure(got == want, || format!("f = {}: B-series {:?} vs Taylor {:?}", f, got, want))?;
    }
    let e = treehopf::bseries::bseries_truncated(&a, &one_field(PolyVectorField::parse("y").unwrap()), 4, &[q(1, 1)])
        .map_err(|e| e.to_string())?;
    ensure(e.iter().enumerate().all(|(k, v)| v[0] == q(1, 1) / treehopf::Q::from_integer(factorial(k).into())), || {
        "e^h coefficients".into()
    })?;
    let r = treehopf::bseries::bseries_truncated(&a, &one_field(PolyVectorField::parse("y^2").unwrap()), 4, &[q(1, 1)])
        .map_err(|e| e.to_string())?;
    ensure(r.iter().all(|v| v[0].is_one()), || "1/(1-h) coefficients".into())?;
    Ok(format!("{} cases; flows match iterated Lie derivatives", n))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("golden values", golden_values),
        ("main theorem sweep", main_theorem),
        ("Hopf and bialgebra axioms", hopf_axioms),
        ("inverse pairs", inverse_pairs),
        ("duality suite", duality),
        ("oracle equivalences", oracles),
        ("Marcus and Itô–Stratonovich", marcus),
        ("B-series substitution law", bseries),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {} ({:.2} s): {}", k + 1, name, secs, detail),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {} ({:.2} s): {}", k + 1, name, secs, why);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
