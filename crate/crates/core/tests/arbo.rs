mod common;

use common::strategies;
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treehopf::arbo::{
    adjoint_weight, arbo_hoffman_adjoint, arbo_hoffman_exp, arborify, contract_arborify, flow_adjoint_residual,
    marcus_modified_field, MarcusAlphabet,
};
use treehopf::qshuffle::{hoffman_exp_lc, quasi_shuffle_lc, shuffle_lc};
use treehopf::semigroup::Letter;
use treehopf::substitution::PlusCharacter;
use treehopf::tree::{tree_stats, Enumerator};
use treehopf::verify::random_plus_character;
use treehopf::{Forest, Semigroup, SemigroupElement};

const ABC: &[&str] = &["a", "b", "c"];

#[test]
fn arborification_of_cherry() {
    assert_eq!(contract_arborify(&forest("l(i,j)")), words("i.j.l + j.i.l + [i j].l"));
    assert_eq!(arborify(&forest("l(i,j)")), words("i.j.l + j.i.l"));
    assert_eq!(arborify(&forest("c(b(a))")), words("a.b.c"));
}

#[test]
fn adjoint_weights_are_cm_over_factorial() {
    for t in Enumerator::letters(&["o"]).trees_up_to(7) {
        let s = tree_stats(&t);
        let want = s.cm / q(treehopf::tree::factorial(t.size()).try_into().unwrap(), 1);
        assert_eq!(adjoint_weight(&t), want, "t = {}", t);
    }
}

#[test]
fn adjoint_on_a_free_letter_sums_over_its_content() {
    let ab = SemigroupElement::letter("a").join(&SemigroupElement::letter("b"));
    let adj = arbo_hoffman_adjoint(&Semigroup::Free, &ab, 2).unwrap();
    assert_eq!(adj, trees("[a b] + 1/2 * a(b) + 1/2 * b(a)"));
}

#[test]
fn marcus_images() {
    let m = marcus_modified_field(4).unwrap();
    assert_eq!(m[&SemigroupElement::letter(MarcusAlphabet::DRIFT)], trees("1 * 0"));
    assert_eq!(m[&MarcusAlphabet::letter(1)], trees("1"));
    assert_eq!(m[&MarcusAlphabet::letter(2)], trees("1/2 * 1(1)"));
    assert_eq!(m[&MarcusAlphabet::letter(3)], trees("1/6 * 1(1,1) + 1/6 * 1(1(1))"));
    assert_eq!(MarcusAlphabet::render(&MarcusAlphabet::letter(3)), "3");
}

#[test]
fn flow_residual_vanishes_over_a_table_semigroup() {
    // two idempotents that absorb each other: a·a = a, b·b = b, a·b = b
    let (a, b) = (Letter::new("a"), Letter::new("b"));
    let sg = Semigroup::table(vec![(a.clone(), a.clone(), a.clone()), (b.clone(), b.clone(), b.clone()), (a.clone(), b.clone(), b)])
        .unwrap();
    let letters = [SemigroupElement::letter("a"), SemigroupElement::letter("b")];
    let support = Enumerator::new(&letters).trees_up_to(4);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..3 {
        let v = random_plus_character(&mut rng, &support);
        assert!(flow_adjoint_residual(&sg, &v, &letters, 4).unwrap().is_zero());
    }
    assert!(flow_adjoint_residual(&sg, &PlusCharacter::inverse_factorial(), &letters, 4).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn main_theorem_on_six_vertices(t in strategies::tree(ABC, 6)) {
        let f = Forest::tree(t);
        prop_assert_eq!(arbo_hoffman_exp(&f).flat_map(contract_arborify), hoffman_exp_lc(&arborify(&f)));
    }

    #[test]
    fn arborifications_are_multiplicative(f in strategies::forest(ABC, 3), g in strategies::forest(ABC, 3)) {
        prop_assert_eq!(arborify(&f.mul(&g)), shuffle_lc(&arborify(&f), &arborify(&g)));
        prop_assert_eq!(contract_arborify(&f.mul(&g)), quasi_shuffle_lc(&contract_arborify(&f), &contract_arborify(&g)));
    }

    #[test]
    fn shuffle_arborification_counts_linear_extensions(t in strategies::tree(&["o"], 7)) {
        let total = arborify(&Forest::tree(t.clone())).iter().fold(q(0, 1), |acc, (_, c)| acc + c);
        prop_assert_eq!(total, q(linear_extensions_brute(&t) as i64, 1));
    }
}

