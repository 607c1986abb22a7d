//! The Hairer–Kelly map into tensor words over trees, its symmetrisation and inverse.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::bck::bck_coproduct_tree;
use crate::error::{Error, Result};
use crate::linear::{LinComb, Tensor, Q};
use crate::prelie::{forest_mul_lc, gl_product_lc};
use crate::qshuffle::quasi_shuffle_by;
use crate::semigroup::Semigroup;
use crate::substitution::sub_coproduct_in;
use crate::tree::{factorial, forest_sigma, tree_factorial, Enumerator, Forest, Tree};

/// A word whose letters are trees; the empty word is the unit.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord(pub Vec<Tree>);

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ⊗ ")?;
            }
            write!(f, "{}", t)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn tensor_shuffle(a: &LinComb<TensorWord>, b: &LinComb<TensorWord>) -> LinComb<TensorWord> {
    a.bilinear(b, |u, v| quasi_shuffle_by(&u.0, &v.0, None).map_basis(|w| TensorWord(w.clone())))
}

fn undecorated(t: &Tree) -> Result<Tree> {
    if t.is_undecorated() {
        Ok(t.shape())
    } else {
        Err(Error::Decorated(t.to_string()))
    }
}

fn undecorated_forest(f: &Forest) -> Result<Forest> {
    Ok(Forest::new(f.trees().iter().map(undecorated).collect::<Result<_>>()?))
}

/// `ψ(τ) = (ψ ⊗ γ)Δ(τ)`, with the right leg appended as a letter.
pub fn hk_psi(t: &Tree) -> Result<LinComb<TensorWord>> {
    let t = undecorated(t)?;
    Ok(HkPsi::default().tree(&t))
}

/// `ψ` on forests: the shuffle of the tree images.
pub fn hk_psi_forest(f: &Forest) -> Result<LinComb<TensorWord>> {
    let f = undecorated_forest(f)?;
    Ok(HkPsi::default().forest(&f))
}

#[derive(Default)]
struct HkPsi {
    memo: HashMap<Tree, LinComb<TensorWord>>,
}

impl HkPsi {
    fn tree(&mut self, t: &Tree) -> LinComb<TensorWord> {
        if let Some(v) = self.memo.get(t) {
            return v.clone();
        }
        let mut out = LinComb::zero();
        for (Tensor(left, right), c) in bck_coproduct_tree(t).iter() {
            let Some(r) = right.as_tree() else { continue };
            let head = self.forest(left);
            out.add_scaled(&head.map_basis(|w| TensorWord(w.0.iter().cloned().chain([r.clone()]).collect())), c);
        }
        self.memo.insert(t.clone(), out.clone());
        out
    }

    fn forest(&mut self, f: &Forest) -> LinComb<TensorWord> {
        let mut acc = LinComb::basis(TensorWord::default());
        for t in f.trees() {
            acc = tensor_shuffle(&acc, &self.tree(t));
        }
        acc
    }
}

/// `π`: forget the order of the letters.
pub fn project_forest(w: &TensorWord) -> Forest {
    Forest::new(w.0.clone())
}

/// `(cm·σ)(s) = |s|!/s!`.
pub fn cm_sigma(s: &Tree) -> Q {
    Q::new(factorial(s.size()).into(), tree_factorial(s).into())
}

fn component_factorial(f: &Forest) -> Q {
    Q::from_integer(factorial(f.len()).into())
}

fn psi_tilde_tree(t: &Tree) -> Result<LinComb<Forest>> {
    let mut out = LinComb::zero();
    for (Tensor(left, right), c) in sub_coproduct_in(&Semigroup::undecorated(), t)?.iter() {
        out.add_term(left.clone(), c * cm_sigma(right));
    }
    Ok(out)
}

/// `ψ̃ = π∘ψ`. On a tree this is `Σ F̄ · (cm·σ)(τ/F̄)`; forests combine through `G ↦ G/m(G)!`,
/// where `m(G)` counts components, which is multiplicative.
pub fn hk_psi_tilde(f: &Forest) -> Result<LinComb<Forest>> {
    let f = undecorated_forest(f)?;
    let mut acc = LinComb::basis(Forest::unit());
    for t in f.trees() {
        let image = psi_tilde_tree(t)?.flat_map(|g| LinComb::term(g.clone(), component_factorial(g).recip()));
        acc = forest_mul_lc(&acc, &image);
    }
    Ok(acc.flat_map(|g| LinComb::term(g.clone(), component_factorial(g))))
}

pub fn hk_psi_tilde_lc(x: &LinComb<Forest>) -> Result<LinComb<Forest>> {
    x.try_flat_map(hk_psi_tilde)
}

/// `ψ̃⁻¹`, by triangular recursion on trees and `ψ̃⁻¹(τ_1⋯τ_n) = (1/n!) ∏ ψ̃⁻¹(τ_i)` on forests.
pub fn hk_psi_tilde_inv(f: &Forest) -> Result<LinComb<Forest>> {
    let f = undecorated_forest(f)?;
    PsiTildeInv::default().forest(&f)
}

pub fn hk_psi_tilde_inv_lc(x: &LinComb<Forest>) -> Result<LinComb<Forest>> {
    let mut inv = PsiTildeInv::default();
    x.try_flat_map(|f| inv.forest(&undecorated_forest(f)?))
}

#[derive(Default)]
struct PsiTildeInv {
    memo: HashMap<Tree, LinComb<Forest>>,
}

impl PsiTildeInv {
    fn tree(&mut self, t: &Tree) -> Result<LinComb<Forest>> {
        if let Some(v) = self.memo.get(t) {
            return Ok(v.clone());
        }
        let whole = Forest::tree(t.clone());
        let mut out = LinComb::basis(whole.clone());
        for (Tensor(left, right), c) in sub_coproduct_in(&Semigroup::undecorated(), t)?.iter() {
            if *left != whole {
                out.add_scaled(&self.forest(left)?, &-(c * cm_sigma(right)));
            }
        }
        self.memo.insert(t.clone(), out.clone());
        Ok(out)
    }

    fn forest(&mut self, f: &Forest) -> Result<LinComb<Forest>> {
        let mut acc = LinComb::basis(Forest::unit());
        for t in f.trees() {
            acc = forest_mul_lc(&acc, &self.tree(t)?);
        }
        Ok(acc.scale(&component_factorial(f).recip()))
    }
}

/// `Σ_F 1/σ(F) F ⊗ F − Σ_{(τ_1,…,τ_n)} 1/∏σ(τ_i) (τ_1∗⋯∗τ_n) ⊗ ψ̃⁻¹(τ_1⋯τ_n)` over
/// nonempty forests and ordered tuples of trees with at most `n` vertices in total.
pub fn hk_flow_identity_residual(n: usize) -> Result<LinComb<Tensor<Forest, Forest>>> {
    if n < 1 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let mut en = Enumerator::letters(&[crate::semigroup::UNDECORATED]);
    let mut out = LinComb::zero();
    for k in 1..=n {
        for f in en.forests(k) {
            let c = Q::from_integer(forest_sigma(&f).into()).recip();
            out.add_term(Tensor(f.clone(), f), c);
        }
    }
    let trees = en.trees_up_to(n);
    let mut inv = PsiTildeInv::default();
    // Depth-first over ordered tuples, carrying the running GL product.
    let mut stack: Vec<(Vec<Tree>, LinComb<Forest>, Q)> = vec![(Vec::new(), LinComb::basis(Forest::unit()), Q::one())];
    while let Some((tuple, prod, weight)) = stack.pop() {
        if !tuple.is_empty() {
            let rhs = inv.forest(&Forest::new(tuple.clone()))?;
            out.add_scaled(&crate::linear::tensor(&prod, &rhs), &-weight.clone());
        }
        let used: usize = tuple.iter().map(Tree::size).sum();
        for t in trees.iter().filter(|t| used + t.size() <= n) {
            let mut next = tuple.clone();
            next.push(t.clone());
            let p = gl_product_lc(&prod, &LinComb::basis(Forest::tree(t.clone())));
            let w = &weight / Q::from_integer(forest_sigma(&Forest::tree(t.clone())).into());
            if !w.is_zero() {
                stack.push((next, p, w));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::text::{parse_forest, parse_lincomb, parse_tree};

    fn lcf(s: &str) -> LinComb<Forest> {
        parse_lincomb(s, parse_forest).unwrap()
    }

    #[test]
    fn psi_tilde_examples() {
        assert_eq!(hk_psi_tilde(&parse_forest("o(o,o)").unwrap()).unwrap(), lcf("o(o,o) + 2 * o·o·o + 2 * o·o(o)"));
        assert_eq!(hk_psi_tilde(&parse_forest("o·o").unwrap()).unwrap(), lcf("2 * o·o"));
        assert_eq!(hk_psi_tilde_inv(&parse_forest("o(o)").unwrap()).unwrap(), lcf("o(o) + -1/2 * o·o"));
    }

    #[test]
    fn decorated_input_is_rejected() {
        assert!(hk_psi(&parse_tree("a(b)").unwrap()).is_err());
        assert!(hk_psi(&parse_tree("a(a)").unwrap()).is_ok());
    }

    #[test]
    fn low_order_flow_identity() {
        assert!(hk_flow_identity_residual(1).unwrap().is_zero());
        assert!(hk_flow_identity_residual(2).unwrap().is_zero());
    }
}
