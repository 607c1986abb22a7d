//! Elementary differentials, truncated B-series and the substitution law on polynomial fields.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linear::{Tensor, Q};
use crate::poly::{PolyVectorField, Polynomial};
use crate::semigroup::{Semigroup, SemigroupElement};
use crate::substitution::{sub_coproduct_in, PlusCharacter};
use crate::tree::{tree_sigma, Enumerator, Tree};

/// One vector field per decoration.
pub type Fields = BTreeMap<SemigroupElement, PolyVectorField>;

/// A tree-indexed functional used as B-series coefficients.
pub type TreeFn<'a> = &'a dyn Fn(&Tree) -> Result<Q>;

/// `(f ▷ g)^i = Σ_j f^j ∂_j g^i`.
pub fn field_prelie(f: &PolyVectorField, g: &PolyVectorField) -> Result<PolyVectorField> {
    if f.dim != g.dim {
        return Err(Error::Dimension(f.dim, g.dim));
    }
    let mut out = g.zero_like();
    for (i, gi) in g.components.iter().enumerate() {
        for (j, fj) in f.components.iter().enumerate() {
            out.components[i] = out.components[i].add(&fj.mul(&gi.derivative(j)));
        }
    }
    Ok(out)
}

/// Step-size variable index and maximal power kept, for fields carrying `h`.
type Trunc = Option<(usize, u32)>;

fn trunc(p: Polynomial, t: Trunc) -> Polynomial {
    match t {
        Some((k, m)) => p.truncate(k, m),
        None => p,
    }
}

fn contract(p: &Polynomial, kids: &[PolyVectorField], dim: usize, t: Trunc) -> Polynomial {
    let Some((first, rest)) = kids.split_first() else {
        return p.clone();
    };
    let mut out = Polynomial::zero(p.nvars());
    for j in 0..dim {
        let d = p.derivative(j);
        if d.is_zero() || first.components[j].is_zero() {
            continue;
        }
        out = out.add(&trunc(first.components[j].mul(&contract(&d, rest, dim, t)), t));
    }
    out
}

fn elementary(fields: &Fields, t: &Tree, tr: Trunc) -> Result<PolyVectorField> {
    let f = fields.get(t.root()).ok_or_else(|| Error::UnassignedLetter(t.root().to_string()))?;
    let kids = t.children().iter().map(|c| elementary(fields, c, tr)).collect::<Result<Vec<_>>>()?;
    for k in &kids {
        if k.dim != f.dim {
            return Err(Error::Dimension(f.dim, k.dim));
        }
    }
    let components = f.components.iter().map(|p| contract(p, &kids, f.dim, tr)).collect();
    Ok(PolyVectorField { dim: f.dim, components })
}

/// `𝔉_f[B^i_+(τ_1⋯τ_n)] = f_i^{(n)}(𝔉_f[τ_1], …, 𝔉_f[τ_n])`.
pub fn elementary_differential(fields: &Fields, t: &Tree) -> Result<PolyVectorField> {
    elementary(fields, t, None)
}

fn check_fields(fields: &Fields) -> Result<(usize, usize)> {
    let mut it = fields.values();
    let f = it.next().ok_or_else(|| Error::InvalidArgument("no fields given".into()))?;
    for g in it {
        if g.dim != f.dim || g.nvars() != f.nvars() {
            return Err(Error::Dimension(f.dim, g.dim));
        }
    }
    Ok((f.dim, f.nvars()))
}

fn sigma_q(t: &Tree) -> Q {
    Q::from_integer(tree_sigma(t).into())
}

fn letters(fields: &Fields) -> Vec<SemigroupElement> {
    fields.keys().cloned().collect()
}

/// `y0 + Σ_{|τ|≤n} h^{|τ|} a(τ)/σ(τ) 𝔉_f[τ](y0)` as per-coordinate polynomials in `h`.
fn bseries_in_h(a: TreeFn, fields: &Fields, n: usize, y0: &[Q]) -> Result<Vec<Polynomial>> {
    let (dim, nvars) = check_fields(fields)?;
    if y0.len() != dim {
        return Err(Error::Dimension(dim, y0.len()));
    }
    let has_h = nvars == dim + 1;
    let tr = if has_h { Some((dim, n as u32)) } else { None };
    let mut out: Vec<Polynomial> = y0.iter().map(|y| Polynomial::constant(1, y.clone())).collect();
    for t in Enumerator::new(&letters(fields)).trees_up_to(n) {
        let c = a(&t)?;
        if c.is_zero() {
            continue;
        }
        let c = c / sigma_q(&t);
        let ed = elementary(fields, &t, tr)?;
        let mut shift = vec![0u32; 1];
        shift[0] = t.size() as u32;
        let mut hk = Polynomial::zero(1);
        hk.add_term(shift, c);
        for (o, comp) in out.iter_mut().zip(ed.eval(y0)?) {
            let comp = if has_h { comp } else { promote(&comp) };
            *o = o.add(&comp.mul(&hk).truncate(0, n as u32));
        }
    }
    Ok(out)
}

/// A zero-variable polynomial viewed as a constant in one variable.
fn promote(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(1);
    for (_, c) in p.terms() {
        out.add_term(vec![0], c.clone());
    }
    out
}

fn coefficient_vectors(series: &[Polynomial], n: usize) -> Vec<Vec<Q>> {
    (0..=n).map(|k| series.iter().map(|p| p.coeff1(k as u32)).collect()).collect()
}

/// Taylor coefficients of `B(a, f)` at `y0`: entry `k` is the vector multiplying `h^k`.
pub fn bseries_truncated(a: TreeFn, fields: &Fields, n: usize, y0: &[Q]) -> Result<Vec<Vec<Q>>> {
    Ok(coefficient_vectors(&bseries_in_h(a, fields, n, y0)?, n))
}

/// A vector field whose components are polynomials in the coordinates and in `h`, truncated at `h^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeriesField {
    pub order: usize,
    pub fields: Fields,
}

impl HSeriesField {
    /// The coefficient of `h^k` for the field attached to `letter`.
    pub fn coeff(&self, letter: &SemigroupElement, k: usize) -> Result<PolyVectorField> {
        let f = self.fields.get(letter).ok_or_else(|| Error::UnassignedLetter(letter.to_string()))?;
        let dim = f.dim;
        let components = f
            .components
            .iter()
            .map(|p| {
                let mut out = Polynomial::zero(dim);
                for (e, c) in p.terms() {
                    if e[dim] as usize == k {
                        out.add_term(e[..dim].to_vec(), c.clone());
                    }
                }
                out
            })
            .collect();
        PolyVectorField::new(components)
    }
}

/// `f̃_l = Σ_{[τ]=l, |τ|≤n} h^{|τ|−1} a(τ)/σ(τ) 𝔉_f[τ]`.
pub fn substitute_field(sg: &Semigroup, a: TreeFn, fields: &Fields, n: usize) -> Result<HSeriesField> {
    let (dim, nvars) = check_fields(fields)?;
    if nvars != dim {
        return Err(Error::InvalidArgument("substitute_field expects plain fields".into()));
    }
    let mut out: Fields = fields.iter().map(|(l, f)| (l.clone(), f.with_extra_var().scale(&Q::zero()))).collect();
    for t in Enumerator::new(&letters(fields)).trees_up_to(n) {
        if t.is_vertex() {
            let v = a(&t)?;
            if !v.is_one() {
                return Err(Error::InvalidArgument(format!("a({}) = {} but must be 1", t, v)));
            }
        }
        let c = a(&t)?;
        if c.is_zero() {
            continue;
        }
        let l = sg.reduce(&t.content())?;
        let Some(slot) = out.get_mut(&l) else { continue };
        let mut e = vec![0u32; dim + 1];
        e[dim] = (t.size() - 1) as u32;
        let mut hk = Polynomial::zero(dim + 1);
        hk.add_term(e, c / sigma_q(&t));
        let term = elementary_differential(fields, &t)?.with_extra_var().mul_poly(&hk);
        *slot = slot.add(&term)?;
    }
    Ok(HSeriesField { order: n, fields: out })
}

/// Largest absolute coefficient of `B(b, (1/h)B(a, f)) − B(a ⊛ b, f)` through `h^n`.
pub fn substitution_law_residual(
    sg: &Semigroup,
    a: &PlusCharacter,
    b: TreeFn,
    fields: &Fields,
    n: usize,
    y0: &[Q],
) -> Result<Q> {
    let a_fn = |t: &Tree| a.eval_tree(t);
    let tilde = substitute_field(sg, &a_fn, fields, n)?;
    let lhs = bseries_in_h(b, &tilde.fields, n, y0)?;
    let ab = |t: &Tree| -> Result<Q> {
        let mut acc = Q::zero();
        for (Tensor(left, right), c) in sub_coproduct_in(sg, t)?.iter() {
            let x = a.eval_forest(left)?;
            if !x.is_zero() {
                acc += c * x * b(right)?;
            }
        }
        Ok(acc)
    };
    let rhs = bseries_in_h(&ab, fields, n, y0)?;
    let mut worst = Q::zero();
    for (l, r) in lhs.iter().zip(&rhs) {
        for (_, c) in l.add(&r.scale(&-Q::one())).terms() {
            if c.abs() > worst {
                worst = c.abs();
            }
        }
    }
    Ok(worst)
}

/// Single-letter fields for undecorated trees.
pub fn undecorated_fields(f: PolyVectorField) -> Fields {
    let mut out = Fields::new();
    out.insert(SemigroupElement::letter(crate::semigroup::UNDECORATED), f);
    out
}
