//! Grafting, its extension to forests, and the Grossman–Larson product.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linear::{LinComb, Q};
use crate::semigroup::SemigroupElement;
use crate::tree::{b_minus, b_plus, Forest, Tree};

/// Reserved root decoration for the Grossman–Larson product. `#` cannot occur in parsed input.
pub const AUX_LETTER: &str = "#gl";

/// Images of the generators `•_i`, keyed by decoration.
pub type GeneratorAssignment = BTreeMap<SemigroupElement, LinComb<Tree>>;

fn attach_everywhere(t1: &Tree, t2: &Tree, out: &mut Vec<Tree>) {
    let mut kids = t2.children().to_vec();
    kids.push(t1.clone());
    out.push(Tree::new(t2.root().clone(), kids));
    for (k, c) in t2.children().iter().enumerate() {
        if k > 0 && t2.children()[k - 1] == *c {
            // identical siblings give identical trees; count them via the first copy
            continue;
        }
        let mult = t2.children().iter().filter(|d| *d == c).count();
        let mut sub = Vec::new();
        attach_everywhere(t1, c, &mut sub);
        for s in sub {
            let mut kids = t2.children().to_vec();
            kids[k] = s;
            let g = Tree::new(t2.root().clone(), kids);
            for _ in 0..mult {
                out.push(g.clone());
            }
        }
    }
}

/// `t1 ▷ t2`: sum over the vertices of `t2` of `t1` grafted there.
pub fn graft(t1: &Tree, t2: &Tree) -> LinComb<Tree> {
    let mut v = Vec::with_capacity(t2.size());
    attach_everywhere(t1, t2, &mut v);
    v.into_iter().map(|t| (t, Q::from_integer(1.into()))).collect()
}

pub fn graft_lc(a: &LinComb<Tree>, b: &LinComb<Tree>) -> LinComb<Tree> {
    a.bilinear(b, graft)
}

/// `τ ▷ F` by the Leibniz rule over the trees of `F`.
pub fn graft_onto_forest(t: &Tree, f: &Forest) -> LinComb<Forest> {
    let mut out = LinComb::zero();
    for (k, s) in f.trees().iter().enumerate() {
        let mut rest = f.trees().to_vec();
        rest.remove(k);
        let rest = Forest::new(rest);
        for (g, c) in graft(t, s).iter() {
            out.add_term(rest.mul(&Forest::tree(g.clone())), c.clone());
        }
    }
    out
}

/// `F ▷ t` via `(τ·F) ▷ t = τ ▷ (F ▷ t) − (τ ▷ F) ▷ t`.
pub fn forest_graft(f: &Forest, t: &Tree) -> LinComb<Tree> {
    let mut memo = HashMap::new();
    forest_graft_memo(f, t, &mut memo)
}

fn forest_graft_memo(f: &Forest, t: &Tree, memo: &mut HashMap<(Forest, Tree), LinComb<Tree>>) -> LinComb<Tree> {
    let Some((tau, rest)) = f.trees().split_first() else {
        return LinComb::basis(t.clone());
    };
    let key = (f.clone(), t.clone());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let rest = Forest::new(rest.to_vec());
    let inner = forest_graft_memo(&rest, t, memo);
    let mut out = inner.flat_map(|s| graft(tau, s));
    for (g, c) in graft_onto_forest(tau, &rest).iter() {
        out.add_scaled(&forest_graft_memo(g, t, memo), &-c);
    }
    memo.insert(key, out.clone());
    out
}

/// Bilinear `F ▷ t` on combinations.
pub fn forest_graft_lc(f: &LinComb<Forest>, t: &LinComb<Tree>) -> LinComb<Tree> {
    let mut memo = HashMap::new();
    f.bilinear(t, |a, b| forest_graft_memo(a, b, &mut memo))
}

/// `L^n_{a▷}(b)`.
pub fn left_power(a: &LinComb<Tree>, b: &LinComb<Tree>, n: usize) -> LinComb<Tree> {
    (0..n).fold(b.clone(), |acc, _| graft_lc(a, &acc))
}

/// Grossman–Larson product `F ∗ G = B_-(F ▷ B_+(G))`.
pub fn gl_product(f: &Forest, g: &Forest) -> LinComb<Forest> {
    let aux = SemigroupElement::letter(AUX_LETTER);
    forest_graft(f, &b_plus(&aux, g)).map_basis(b_minus)
}

pub fn gl_product_lc(f: &LinComb<Forest>, g: &LinComb<Forest>) -> LinComb<Forest> {
    f.bilinear(g, gl_product)
}

/// Product of forest combinations.
pub fn forest_mul_lc(a: &LinComb<Forest>, b: &LinComb<Forest>) -> LinComb<Forest> {
    a.bilinear(b, |x, y| LinComb::basis(x.mul(y)))
}

pub fn trees_as_forests(a: &LinComb<Tree>) -> LinComb<Forest> {
    a.map_basis(|t| Forest::tree(t.clone()))
}

/// Image of `t` under the pre-Lie morphism determined by `g`.
pub fn prelie_extend(g: &GeneratorAssignment, t: &Tree) -> Result<LinComb<Tree>> {
    PrelieMorphism::new(g).apply(t)
}

type Degree<'a> = Box<dyn Fn(&Tree) -> usize + 'a>;

/// A pre-Lie morphism with a per-instance cache.
pub struct PrelieMorphism<'a> {
    g: &'a GeneratorAssignment,
    memo: HashMap<Tree, LinComb<Tree>>,
    bound: Option<(Degree<'a>, usize)>,
}

impl<'a> PrelieMorphism<'a> {
    pub fn new(g: &'a GeneratorAssignment) -> Self {
        PrelieMorphism { g, memo: HashMap::new(), bound: None }
    }

    /// Drop terms whose degree exceeds `max` as soon as they appear.
    ///
    /// Exact on the kept terms when `degree` is additive over vertices and every generator image has
    /// degree at least that of its generator.
    pub fn truncated(g: &'a GeneratorAssignment, degree: impl Fn(&Tree) -> usize + 'a, max: usize) -> Self {
        PrelieMorphism { g, memo: HashMap::new(), bound: Some((Box::new(degree), max)) }
    }

    fn forest_ok(&self, f: &Forest) -> bool {
        self.bound.as_ref().map_or(true, |(d, max)| f.trees().iter().map(|t| d(t)).sum::<usize>() <= *max)
    }

    pub fn apply(&mut self, t: &Tree) -> Result<LinComb<Tree>> {
        if let Some(v) = self.memo.get(t) {
            return Ok(v.clone());
        }
        let gen = self.g.get(t.root()).ok_or_else(|| Error::UnassignedLetter(t.root().to_string()))?;
        let mut forest = LinComb::basis(Forest::unit());
        for c in t.children() {
            forest = forest_mul_lc(&forest, &trees_as_forests(&self.apply(c)?));
            if self.bound.is_some() {
                forest = forest.filter(|f| self.forest_ok(f));
            }
        }
        let mut out = forest_graft_lc(&forest, gen);
        if let Some((d, max)) = &self.bound {
            out = out.filter(|x| d(x) <= *max);
        }
        self.memo.insert(t.clone(), out.clone());
        Ok(out)
    }

    pub fn apply_forest(&mut self, f: &Forest) -> Result<LinComb<Forest>> {
        let mut out = LinComb::basis(Forest::unit());
        for t in f.trees() {
            out = forest_mul_lc(&out, &trees_as_forests(&self.apply(t)?));
        }
        Ok(out)
    }
}
