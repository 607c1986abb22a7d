//! The extraction/contraction coproduct, its coaction on forests, and characters of ℋ⁺.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::{LinComb, Tensor, Q};
use crate::semigroup::Semigroup;
use crate::tree::{reduce_tree, tree_factorial, FlatTree, Forest, Tree};

pub type TensorFT = Tensor<Forest, Tree>;

/// `δ⁺(t)` over every subset of kept edges, contracted decorations in the free semigroup.
pub fn sub_coproduct(t: &Tree) -> LinComb<TensorFT> {
    sub_coproduct_in(&Semigroup::Free, t).expect("free semigroup")
}

/// `δ⁺(t)` with contracted decorations reduced in `sg`.
pub fn sub_coproduct_in(sg: &Semigroup, t: &Tree) -> Result<LinComb<TensorFT>> {
    let flat = FlatTree::new(t);
    let mut out = LinComb::zero();
    for mask in 0..(1u64 << flat.edge_count()) {
        let (left, right) = flat.extract_contract(mask);
        out.add_term(Tensor(left, reduce_tree(sg, &right)?), Q::one());
    }
    Ok(out)
}

/// `Φ(F)`, multiplicative over trees, with `Φ(1) = 1 ⊗ 1`.
pub fn coaction_in(sg: &Semigroup, f: &Forest) -> Result<LinComb<Tensor<Forest, Forest>>> {
    let mut out = LinComb::basis(Tensor(Forest::unit(), Forest::unit()));
    for t in f.trees() {
        let d = sub_coproduct_in(sg, t)?.map_basis(|Tensor(a, b)| Tensor(a.clone(), Forest::tree(b.clone())));
        out = crate::bck::tensor_mul(&out, &d);
    }
    Ok(out)
}

pub fn coaction(f: &Forest) -> LinComb<Tensor<Forest, Forest>> {
    coaction_in(&Semigroup::Free, f).expect("free semigroup")
}

enum Rule {
    Table { values: BTreeMap<Tree, Q>, unit_on_singletons: bool, max_vertices: Option<usize> },
    Unit,
    InverseFactorial,
    Convolution { u: PlusCharacter, w: PlusCharacter, sg: Semigroup },
    Inverse { base: PlusCharacter, max_edges: usize, sg: Semigroup, memo: Mutex<HashMap<Tree, Q>> },
}

/// A character of ℋ⁺: values on trees, extended multiplicatively to forests.
#[derive(Clone)]
pub struct PlusCharacter(Arc<Rule>);

impl PlusCharacter {
    /// Explicit tree values. Unlisted single vertices get 1 when `unit_on_singletons`, other trees 0.
    pub fn table(values: BTreeMap<Tree, Q>, unit_on_singletons: bool, max_vertices: Option<usize>) -> PlusCharacter {
        PlusCharacter(Arc::new(Rule::Table { values, unit_on_singletons, max_vertices }))
    }

    /// `Z_•`: 1 on single vertices, 0 on every tree with an edge.
    pub fn unit() -> PlusCharacter {
        PlusCharacter(Arc::new(Rule::Unit))
    }

    /// `τ ↦ 1/τ!`.
    pub fn inverse_factorial() -> PlusCharacter {
        PlusCharacter(Arc::new(Rule::InverseFactorial))
    }

    /// `u ⊛ w`, evaluated lazily.
    pub fn convolution(u: &PlusCharacter, w: &PlusCharacter, sg: &Semigroup) -> PlusCharacter {
        PlusCharacter(Arc::new(Rule::Convolution { u: u.clone(), w: w.clone(), sg: sg.clone() }))
    }

    /// Whether every single vertex is known to evaluate to 1.
    pub fn unit_on_singletons(&self) -> bool {
        match &*self.0 {
            Rule::Table { values, unit_on_singletons, .. } => {
                *unit_on_singletons && values.iter().all(|(t, v)| !t.is_vertex() || v.is_one())
            }
            Rule::Unit | Rule::InverseFactorial | Rule::Inverse { .. } => true,
            Rule::Convolution { u, w, .. } => u.unit_on_singletons() && w.unit_on_singletons(),
        }
    }

    pub fn eval_tree(&self, t: &Tree) -> Result<Q> {
        match &*self.0 {
            Rule::Table { values, unit_on_singletons, max_vertices } => {
                if let Some(bound) = max_vertices {
                    if t.size() > *bound {
                        return Err(Error::DegreeBound { bound: *bound, needed: t.size() });
                    }
                }
                Ok(match values.get(t) {
                    Some(v) => v.clone(),
                    None if t.is_vertex() && *unit_on_singletons => Q::one(),
                    None => Q::zero(),
                })
            }
            Rule::Unit => Ok(if t.is_vertex() { Q::one() } else { Q::zero() }),
            Rule::InverseFactorial => Ok(Q::from_integer(tree_factorial(t).into()).recip()),
            Rule::Convolution { u, w, sg } => convolve_plus_in(sg, u, w, t),
            Rule::Inverse { base, max_edges, sg, memo } => {
                if t.edges() > *max_edges {
                    return Err(Error::DegreeBound { bound: *max_edges, needed: t.edges() });
                }
                if let Some(v) = memo.lock().expect("memo lock").get(t) {
                    return Ok(v.clone());
                }
                let v = if t.is_vertex() {
                    let b = base.eval_tree(t)?;
                    if !b.is_one() {
                        return Err(Error::NotInvertible(format!("value {} on {}", b, t)));
                    }
                    Q::one()
                } else {
                    // v ⊛ v⁻ = Z_•; the term with no kept edge is v⁻(t) itself.
                    let mut acc = Q::zero();
                    for (Tensor(left, right), c) in sub_coproduct_in(sg, t)?.iter() {
                        if right != t {
                            acc += c * base.eval_forest(left)? * self.eval_tree(right)?;
                        }
                    }
                    -acc
                };
                memo.lock().expect("memo lock").insert(t.clone(), v.clone());
                Ok(v)
            }
        }
    }

    pub fn eval_forest(&self, f: &Forest) -> Result<Q> {
        let mut acc = Q::one();
        for t in f.trees() {
            acc *= self.eval_tree(t)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for PlusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Rule::Table { values, .. } => write!(f, "PlusCharacter::table({} values)", values.len()),
            Rule::Unit => write!(f, "PlusCharacter::unit"),
            Rule::InverseFactorial => write!(f, "PlusCharacter::inverse_factorial"),
            Rule::Convolution { .. } => write!(f, "PlusCharacter::convolution"),
            Rule::Inverse { max_edges, .. } => write!(f, "PlusCharacter::inverse(≤{} edges)", max_edges),
        }
    }
}

/// `(u ⊛ w)(t) = Σ u(F̄) w(t/F̄)`.
pub fn convolve_plus_in(sg: &Semigroup, u: &PlusCharacter, w: &PlusCharacter, t: &Tree) -> Result<Q> {
    let mut acc = Q::zero();
    for (Tensor(left, right), c) in sub_coproduct_in(sg, t)?.iter() {
        let x = u.eval_forest(left)?;
        if !x.is_zero() {
            acc += c * x * w.eval_tree(right)?;
        }
    }
    Ok(acc)
}

pub fn convolve_plus(u: &PlusCharacter, w: &PlusCharacter, t: &Tree) -> Result<Q> {
    convolve_plus_in(&Semigroup::Free, u, w, t)
}

/// `Ψ_v(F) = (v ⊗ id) Φ(F)`.
pub fn psi_v_in(sg: &Semigroup, v: &PlusCharacter, f: &Forest) -> Result<LinComb<Forest>> {
    let mut out = LinComb::basis(Forest::unit());
    for t in f.trees() {
        let mut image = LinComb::zero();
        for (Tensor(left, right), c) in sub_coproduct_in(sg, t)?.iter() {
            let x = v.eval_forest(left)?;
            image.add_term(Forest::tree(right.clone()), c * x);
        }
        out = crate::prelie::forest_mul_lc(&out, &image);
    }
    Ok(out)
}

pub fn psi_v(v: &PlusCharacter, f: &Forest) -> Result<LinComb<Forest>> {
    psi_v_in(&Semigroup::Free, v, f)
}

pub fn psi_v_lc_in(sg: &Semigroup, v: &PlusCharacter, x: &LinComb<Forest>) -> Result<LinComb<Forest>> {
    x.try_flat_map(|f| psi_v_in(sg, v, f))
}

/// The ⊛-inverse of `v`, valid on trees with at most `max_edges` edges.
pub fn invert_character_in(sg: &Semigroup, v: &PlusCharacter, max_edges: usize) -> Result<PlusCharacter> {
    if !v.unit_on_singletons() {
        return Err(Error::NotInvertible("v(•_i) must be 1 for every letter".into()));
    }
    Ok(PlusCharacter(Arc::new(Rule::Inverse {
        base: v.clone(),
        max_edges,
        sg: sg.clone(),
        memo: Mutex::new(HashMap::new()),
    })))
}

pub fn invert_character(v: &PlusCharacter, max_edges: usize) -> Result<PlusCharacter> {
    invert_character_in(&Semigroup::Free, v, max_edges)
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::linear::q;
    use crate::text::{parse_forest, parse_tree};

    fn t(s: &str) -> Tree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn ladder_substitution() {
        let d = sub_coproduct(&t("i(j)"));
        assert_eq!(d.to_string(), "1 * i·j ⊗ i(j) + 1 * i(j) ⊗ [i j]");
        assert_eq!(sub_coproduct(&t("i")).to_string(), "1 * i ⊗ i");
    }

    #[test]
    fn inverse_factorial_convolution() {
        let v = PlusCharacter::inverse_factorial();
        assert_eq!(convolve_plus(&v, &v, &t("o(o)")).unwrap(), q(1, 1));
        let inv = invert_character(&v, 3).unwrap();
        assert_eq!(inv.eval_tree(&t("o(o)")).unwrap(), q(-1, 2));
        assert!(inv.eval_tree(&t("o(o(o(o(o))))")).is_err());
    }

    #[test]
    fn non_unit_is_rejected() {
        let mut values = BTreeMap::new();
        values.insert(t("a"), q(2, 1));
        assert!(invert_character(&PlusCharacter::table(values, true, None), 3).is_err());
        assert!(invert_character(&PlusCharacter::table(BTreeMap::new(), false, None), 3).is_err());
    }

    #[test]
    fn unit_character_is_identity() {
        let f = parse_forest("a(b,c)·b").unwrap();
        assert_eq!(psi_v(&PlusCharacter::unit(), &f).unwrap(), LinComb::basis(f));
    }
}
