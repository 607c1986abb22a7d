mod common;

use common::strategies;
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treehopf::linear::Tensor;
use treehopf::prelie::forest_mul_lc;
use treehopf::semigroup::Letter;
use treehopf::substitution::{
    coaction, convolve_plus, invert_character, psi_v, psi_v_in, sub_coproduct, sub_coproduct_in, PlusCharacter,
};
use treehopf::tree::Enumerator;
use treehopf::verify::random_plus_character;
use treehopf::{Forest, LinComb, Semigroup, SemigroupElement, Tree};

const AB: &[&str] = &["a", "b"];

fn support() -> Vec<Tree> {
    let letters = [SemigroupElement::letter("a"), SemigroupElement::letter("b")];
    treehopf::arbo::graded_trees(&Semigroup::Free, &letters, 5).unwrap()
}

#[test]
fn inverse_factorial_squared_on_the_two_ladder() {
    let v = PlusCharacter::inverse_factorial();
    assert_eq!(convolve_plus(&v, &v, &tree("j(i)")).unwrap(), q(1, 1));
    let twice = psi_v(&v, &forest("j(i)")).unwrap().flat_map(|f| psi_v(&v, f).unwrap());
    assert_eq!(twice, forests("j(i) + [i j]"));
}

#[test]
fn unit_action_and_empty_forest() {
    assert_eq!(coaction(&Forest::unit()), forest_pairs("1 ⊗ 1"));
    let f = forest("a(b)·b");
    assert_eq!(psi_v(&PlusCharacter::unit(), &f).unwrap(), LinComb::basis(f));
}

#[test]
fn table_semigroup_contracts_into_elements() {
    let x = Letter::new("x");
    let sg = Semigroup::table(vec![(x.clone(), x.clone(), x)]).unwrap();
    assert_eq!(sub_coproduct_in(&sg, &tree("x(x)")).unwrap(), forest_tree_pairs("x(x) ⊗ x + x·x ⊗ x(x)"));
    let v = PlusCharacter::inverse_factorial();
    assert_eq!(psi_v_in(&sg, &v, &forest("x(x)")).unwrap(), forests("x(x) + 1/2 * x"));
}

#[test]
fn inverse_matches_pseudo_antipode_on_five_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let support = support();
    let v = random_plus_character(&mut rng, &support);
    let inv = invert_character(&v, 4).unwrap();
    for t in Enumerator::letters(AB).trees_up_to(5) {
        assert_eq!(inv.eval_tree(&t).unwrap(), pseudo_antipode_inverse(&v, &t), "t = {}", t);
    }
}

#[test]
fn ladder_coproduct_is_over_compositions() {
    // root-first ladder c(b(a)): blocks are consecutive runs
    assert_eq!(
        sub_coproduct(&tree("c(b(a))")),
        forest_tree_pairs(
            "a·b·c ⊗ c(b(a)) + a·c(b) ⊗ [b c](a) + c·b(a) ⊗ c([a b]) + c(b(a)) ⊗ [a b c]"
        )
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn edges_are_preserved(t in strategies::tree(AB, 6)) {
        for Tensor(a, b) in sub_coproduct(&t).keys() {
            prop_assert_eq!(a.edges() + b.edges(), t.edges());
            prop_assert_eq!(a.size(), t.size());
        }
    }

    #[test]
    fn composition_law(seed in any::<u64>(), f in strategies::forest(AB, 4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let support = support();
        let u = random_plus_character(&mut rng, &support);
        let v = random_plus_character(&mut rng, &support);
        let vu = PlusCharacter::convolution(&v, &u, &Semigroup::Free);
        let lhs = psi_v(&v, &f).unwrap().flat_map(|g| psi_v(&u, g).unwrap());
        prop_assert_eq!(lhs, psi_v(&vu, &f).unwrap());
    }

    #[test]
    fn action_is_multiplicative(seed in any::<u64>(), f in strategies::forest(AB, 3), g in strategies::forest(AB, 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_plus_character(&mut rng, &support());
        let lhs = psi_v(&v, &f.mul(&g)).unwrap();
        prop_assert_eq!(lhs, forest_mul_lc(&psi_v(&v, &f).unwrap(), &psi_v(&v, &g).unwrap()));
    }

    #[test]
    fn inverse_undoes_action(seed in any::<u64>(), f in strategies::forest(AB, 4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_plus_character(&mut rng, &support());
        let inv = invert_character(&v, 4).unwrap();
        let back = psi_v(&v, &f).unwrap().flat_map(|g| psi_v(&inv, g).unwrap());
        prop_assert_eq!(back, LinComb::basis(f.clone()));
        let forth = psi_v(&inv, &f).unwrap().flat_map(|g| psi_v(&v, g).unwrap());
        prop_assert_eq!(forth, LinComb::basis(f));
    }
}
