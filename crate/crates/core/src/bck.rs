//! The Butcher–Connes–Kreimer coproduct, its dual pairing and convolution.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::{LinComb, Tensor, Q};
use crate::tree::{forest_sigma, FlatTree, Forest, Tree};

pub type TensorFF = Tensor<Forest, Forest>;

/// `Δ(t)`: pruned forests on the left, trunks on the right.
pub fn bck_coproduct_tree(t: &Tree) -> LinComb<TensorFF> {
    let flat = FlatTree::new(t);
    let mut out = LinComb::basis(Tensor(Forest::tree(t.clone()), Forest::unit()));
    for cuts in 0..(1u64 << flat.edge_count()) {
        if flat.admissible(cuts) {
            let (pruned, trunk) = flat.cut(cuts);
            out.add_term(Tensor(pruned, Forest::tree(trunk)), Q::one());
        }
    }
    out
}

/// Legwise product of two tensors of forests.
pub fn tensor_mul(a: &LinComb<TensorFF>, b: &LinComb<TensorFF>) -> LinComb<TensorFF> {
    a.bilinear(b, |x, y| LinComb::basis(Tensor(x.0.mul(&y.0), x.1.mul(&y.1))))
}

/// `Δ(F)`, multiplicative over the trees of `F`.
pub fn bck_coproduct(f: &Forest) -> LinComb<TensorFF> {
    f.trees()
        .iter()
        .fold(LinComb::basis(Tensor(Forest::unit(), Forest::unit())), |acc, t| tensor_mul(&acc, &bck_coproduct_tree(t)))
}

/// `⟨d_F, G⟩ = σ(F)` when `F = G`, zero otherwise.
pub fn pairing(d: &Forest, g: &Forest) -> Q {
    if d == g {
        Q::from_integer(forest_sigma(d).into())
    } else {
        Q::zero()
    }
}

/// How a functional extends from its stored values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionalKind {
    /// Multiplicative; stored values are on single trees.
    Character,
    /// Nonzero only on single trees.
    Infinitesimal,
    /// Arbitrary finitely supported values on forests.
    General,
}

/// A linear functional on forests with an optional degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BckFunctional {
    pub kind: FunctionalKind,
    pub values: BTreeMap<Forest, Q>,
    pub max_degree: Option<usize>,
}

impl BckFunctional {
    pub fn new(kind: FunctionalKind, values: BTreeMap<Forest, Q>, max_degree: Option<usize>) -> Self {
        BckFunctional { kind, values, max_degree }
    }

    /// The counit `ε`.
    pub fn counit() -> Self {
        BckFunctional::new(FunctionalKind::Character, BTreeMap::new(), None)
    }

    /// `d_F`, dual to `F` under the pairing.
    pub fn dual_basis(f: &Forest) -> Self {
        let mut values = BTreeMap::new();
        values.insert(f.clone(), pairing(f, f));
        let kind = if f.len() == 1 { FunctionalKind::Infinitesimal } else { FunctionalKind::General };
        BckFunctional::new(kind, values, None)
    }

    /// `d_x` for a combination of forests.
    pub fn dual_of(x: &LinComb<Forest>) -> Self {
        let values = x.iter().map(|(f, c)| (f.clone(), c * pairing(f, f))).collect();
        BckFunctional::new(FunctionalKind::General, values, None)
    }

    fn tree_value(&self, t: &Tree) -> Q {
        self.values.get(&Forest::tree(t.clone())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, f: &Forest) -> Result<Q> {
        if let Some(bound) = self.max_degree {
            if f.size() > bound {
                return Err(Error::DegreeBound { bound, needed: f.size() });
            }
        }
        Ok(match self.kind {
            FunctionalKind::Character => f.trees().iter().map(|t| self.tree_value(t)).product(),
            FunctionalKind::Infinitesimal => match f.as_tree() {
                Some(t) => self.tree_value(t),
                None => Q::zero(),
            },
            FunctionalKind::General => self.values.get(f).cloned().unwrap_or_else(Q::zero),
        })
    }

    pub fn eval_lc(&self, x: &LinComb<Forest>) -> Result<Q> {
        x.try_eval(|f| self.eval(f))
    }
}

/// `(u ∗ w)(F) = Σ u(F_(1)) w(F_(2))`.
pub fn convolve_bck(u: &BckFunctional, w: &BckFunctional, f: &Forest) -> Result<Q> {
    bck_coproduct(f).try_eval(|Tensor(a, b)| Ok::<Q, Error>(u.eval(a)? * w.eval(b)?))
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::text::{parse_forest, parse_lincomb, parse_tensor};

    fn f(s: &str) -> Forest {
        parse_forest(s).unwrap()
    }

    #[test]
    fn cherry_coproduct() {
        let want = parse_lincomb("o(o,o) ⊗ 1 + 2 * o ⊗ o(o) + o·o ⊗ o + 1 ⊗ o(o,o)", |x| {
            parse_tensor(x, parse_forest, parse_forest)
        })
        .unwrap();
        assert_eq!(bck_coproduct(&f("o(o,o)")), want);
        assert_eq!(bck_coproduct(&Forest::unit()).to_string(), "1 * 1 ⊗ 1");
    }

    #[test]
    fn functionals() {
        let eps = BckFunctional::counit();
        assert_eq!(convolve_bck(&eps, &eps, &Forest::unit()).unwrap(), Q::one());
        assert!(convolve_bck(&eps, &eps, &f("o")).unwrap().is_zero());
        let d = BckFunctional::dual_basis(&f("o"));
        assert_eq!(convolve_bck(&d, &d, &f("o(o)")).unwrap(), Q::one());
        let bounded = BckFunctional::new(FunctionalKind::Character, BTreeMap::new(), Some(2));
        assert!(bounded.eval(&f("o(o,o)")).is_err());
    }
}
