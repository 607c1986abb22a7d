//! Arborification, the arborified Hoffman exponential and its pre-Lie adjoint.

use std::collections::BTreeMap;



use crate::error::{Error, Result};
use crate::linear::{LinComb, Tensor, Q};
use crate::prelie::{left_power, GeneratorAssignment, PrelieMorphism};
use crate::qshuffle::{quasi_shuffle_by, shuffle_lc};
use crate::semigroup::{Letter, Semigroup, SemigroupElement};
use crate::substitution::{psi_v_in, PlusCharacter};
use crate::tree::{
    factorial, forest_sigma, free_elements_up_to, tree_factorial, tree_sigma, trees_with_content, Enumerator, Forest,
    Tree,
};
use crate::word::Word;

fn append_root(a: &LinComb<Word>, root: &SemigroupElement) -> LinComb<Word> {
    a.map_basis(|w| w.push(root.clone()))
}

/// `𝔞(B^i_+(τ_1⋯τ_n)) = (𝔞(τ_1) ⧢ ⋯ ⧢ 𝔞(τ_n)) i`.
pub fn arborify(f: &Forest) -> LinComb<Word> {
    f.trees().iter().fold(LinComb::basis(Word::empty()), |acc, t| shuffle_lc(&acc, &arborify_tree(t)))
}

fn arborify_tree(t: &Tree) -> LinComb<Word> {
    append_root(&arborify(&crate::tree::b_minus(t)), t.root())
}

/// `𝔞^c`, the same recursion with the quasi-shuffle of `sg`.
pub fn contract_arborify_in(sg: &Semigroup, f: &Forest) -> Result<LinComb<Word>> {
    let mut acc = LinComb::basis(Word::empty());
    for t in f.trees() {
        let a = contract_arborify_in(sg, &crate::tree::b_minus(t))?;
        let image = append_root(&a, t.root());
        acc = acc.try_flat_map(|u| image.try_flat_map(|v| crate::qshuffle::quasi_shuffle_in(sg, u, v)))?;
    }
    Ok(acc)
}

pub fn contract_arborify(f: &Forest) -> LinComb<Word> {
    let bracket = |x: &SemigroupElement, y: &SemigroupElement| x.join(y);
    f.trees().iter().fold(LinComb::basis(Word::empty()), |acc, t| {
        let image = append_root(&contract_arborify(&crate::tree::b_minus(t)), t.root());
        acc.bilinear(&image, |u, v| quasi_shuffle_by(&u.0, &v.0, Some(&bracket)).map_basis(|w| Word(w.clone())))
    })
}

pub fn inv_tree_factorial_char() -> PlusCharacter {
    PlusCharacter::inverse_factorial()
}

/// `Ψ_v` with `v = 1/τ!`.
pub fn arbo_hoffman_exp_in(sg: &Semigroup, f: &Forest) -> Result<LinComb<Forest>> {
    psi_v_in(sg, &inv_tree_factorial_char(), f)
}

pub fn arbo_hoffman_exp(f: &Forest) -> LinComb<Forest> {
    arbo_hoffman_exp_in(&Semigroup::Free, f).expect("free semigroup")
}

/// `1/(σ(τ) τ!) = cm(τ)/|τ|!`.
pub fn adjoint_weight(t: &Tree) -> Q {
    Q::from_integer((tree_sigma(t) * tree_factorial(t)).into()).recip()
}

/// Trees up to `max_vertices` whose decorations multiply to `i` in `sg`.
pub fn trees_over(sg: &Semigroup, i: &SemigroupElement, max_vertices: usize) -> Result<Vec<Tree>> {
    match sg {
        Semigroup::Free => Ok(trees_with_content(i).into_iter().filter(|t| t.size() <= max_vertices).collect()),
        Semigroup::Table(table) => {
            let elems: Vec<SemigroupElement> =
                table.elements().iter().map(|l| SemigroupElement::letter(l.as_str())).collect();
            let mut out = Vec::new();
            for t in Enumerator::new(&elems).trees_up_to(max_vertices) {
                if sg.reduce(&t.content())? == *i {
                    out.push(t);
                }
            }
            Ok(out)
        }
    }
}

/// `Ψ*_v(•_i) = Σ_{[τ]=i} cm(τ)/|τ|! τ` over trees with at most `max_vertices` vertices.
pub fn arbo_hoffman_adjoint(sg: &Semigroup, i: &SemigroupElement, max_vertices: usize) -> Result<LinComb<Tree>> {
    if max_vertices < 1 {
        return Err(Error::InvalidArgument("max_vertices must be at least 1".into()));
    }
    let i = sg.reduce(i)?;
    Ok(trees_over(sg, &i, max_vertices)?.into_iter().map(|t| {
        let w = adjoint_weight(&t);
        (t, w)
    }).collect())
}

/// Marcus alphabet: drift `0`, diffusion `1`, and `[1 ⋯ 1]` with `n` ones standing for `n`.
pub struct MarcusAlphabet;

impl MarcusAlphabet {
    pub const DRIFT: &'static str = "0";
    pub const DIFFUSION: &'static str = "1";

    /// The letter for the `n`-fold quadratic variation.
    pub fn letter(n: usize) -> SemigroupElement {
        SemigroupElement::from_letters(vec![Letter::new(Self::DIFFUSION); n]).expect("n >= 1")
    }

    pub fn render(x: &SemigroupElement) -> String {
        if x.letters().iter().all(|l| l.as_str() == Self::DIFFUSION) {
            x.weight().to_string()
        } else {
            x.to_string()
        }
    }
}

/// Generator images of the Marcus extension: `n ↦ (1/n!) L^{n-1}_{•_1▷}(•_1)`, `0 ↦ •_0`.
pub fn marcus_modified_field(n_max: usize) -> Result<GeneratorAssignment> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let mut out = BTreeMap::new();
    out.insert(SemigroupElement::letter(MarcusAlphabet::DRIFT), LinComb::basis(Tree::vertex(MarcusAlphabet::DRIFT)));
    let b = LinComb::basis(Tree::vertex(MarcusAlphabet::DIFFUSION));
    for n in 1..=n_max {
        let c = Q::from_integer(factorial(n).into()).recip();
        out.insert(MarcusAlphabet::letter(n), left_power(&b, &b, n - 1).scale(&c));
    }
    Ok(out)
}

pub type FlowTerms = LinComb<Tensor<Forest, Forest>>;

/// Every tree up to degree `n` over the decorations generated by `alphabet` in `sg`.
///
/// Degree is the number of base letters for the free semigroup and the number of vertices otherwise.
pub fn graded_trees(sg: &Semigroup, alphabet: &[SemigroupElement], n: usize) -> Result<Vec<Tree>> {
    match sg {
        Semigroup::Free => {
            let mut out = Vec::new();
            for x in free_elements_up_to(alphabet, n) {
                out.extend(trees_with_content(&x));
            }
            out.sort();
            Ok(out)
        }
        Semigroup::Table(table) => {
            let elems: Vec<SemigroupElement> =
                table.elements().iter().map(|l| SemigroupElement::letter(l.as_str())).collect();
            Ok(Enumerator::new(&elems).trees_up_to(n))
        }
    }
}

fn degree(sg: &Semigroup, t: &Tree) -> usize {
    if sg.is_free() {
        t.weight()
    } else {
        t.size()
    }
}

/// `Σ_τ 1/σ(τ) [g(τ) ⊗ τ − τ ⊗ Ψ_a(τ)]` truncated at degree `n`, where
/// `g(•_l) = Σ_{[τ]=l} a(τ)/σ(τ) τ` is extended as a pre-Lie morphism.
pub fn flow_adjoint_residual(
    sg: &Semigroup,
    a: &PlusCharacter,
    alphabet: &[SemigroupElement],
    n: usize,
) -> Result<FlowTerms> {
    let trees = graded_trees(sg, alphabet, n)?;
    let mut gens: GeneratorAssignment = BTreeMap::new();
    for t in &trees {
        let l = sg.reduce(&t.content())?;
        let c = a.eval_tree(t)? / Q::from_integer(tree_sigma(t).into());
        gens.entry(l).or_default().add_term(t.clone(), c);
    }
    let mut g = PrelieMorphism::truncated(&gens, |t| degree(sg, t), n);
    let mut out = LinComb::zero();
    for t in &trees {
        let w = Q::from_integer(forest_sigma(&Forest::tree(t.clone())).into()).recip();
        let ft = Forest::tree(t.clone());
        for (x, c) in g.apply(t)?.iter() {
            if degree(sg, x) <= n {
                out.add_term(Tensor(Forest::tree(x.clone()), ft.clone()), c * &w);
            }
        }
        for (y, c) in psi_v_in(sg, a, &ft)?.iter() {
            out.add_term(Tensor(ft.clone(), y.clone()), -(c * &w));
        }
    }
    Ok(out)
}

/// `Σ_{|τ|≤n} 1/σ(τ) τ ⊗ τ` over the given trees.
pub fn flow_truncation(trees: &[Tree]) -> FlowTerms {
    trees
        .iter()
        .map(|t| {
            let f = Forest::tree(t.clone());
            let c = Q::from_integer(forest_sigma(&f).into()).recip();
            (Tensor(f.clone(), f), c)
        })
        .collect()
}
