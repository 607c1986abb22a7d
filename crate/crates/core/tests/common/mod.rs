//! Independent reference implementations used as test oracles, plus parsing shorthands.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use treehopf::bseries::Fields;
use treehopf::hk::TensorWord;
use treehopf::linear::Tensor;
use treehopf::poly::{PolyVectorField, Polynomial};
use treehopf::substitution::{coaction, PlusCharacter};
use treehopf::text::{parse_forest, parse_lincomb, parse_tree, parse_word};
use treehopf::tree::b_plus;
use treehopf::{Forest, LinComb, SemigroupElement, Tree, Word, Q};

pub fn tree(s: &str) -> Tree {
    parse_tree(s).unwrap()
}

pub fn forest(s: &str) -> Forest {
    parse_forest(s).unwrap()
}

pub fn word(s: &str) -> Word {
    parse_word(s).unwrap()
}

pub fn trees(s: &str) -> LinComb<Tree> {
    parse_lincomb(s, parse_tree).unwrap()
}

pub fn forests(s: &str) -> LinComb<Forest> {
    parse_lincomb(s, parse_forest).unwrap()
}

pub fn words(s: &str) -> LinComb<Word> {
    parse_lincomb(s, parse_word).unwrap()
}

pub fn forest_pairs(s: &str) -> LinComb<Tensor<Forest, Forest>> {
    parse_lincomb(s, |b| {
        let (l, r) = b.split_once('⊗').expect("tensor");
        Ok(Tensor(parse_forest(l.trim())?, parse_forest(r.trim())?))
    })
    .unwrap()
}

pub fn forest_tree_pairs(s: &str) -> LinComb<Tensor<Forest, Tree>> {
    parse_lincomb(s, |b| {
        let (l, r) = b.split_once('⊗').expect("tensor");
        Ok(Tensor(parse_forest(l.trim())?, parse_tree(r.trim())?))
    })
    .unwrap()
}

pub fn tensor_words(s: &str) -> LinComb<TensorWord> {
    parse_lincomb(s, |b| Ok(TensorWord(b.split('⊗').map(|t| parse_tree(t.trim())).collect::<Result<_, _>>()?))).unwrap()
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn leg_product(a: &LinComb<Tensor<Forest, Forest>>, b: &LinComb<Tensor<Forest, Forest>>) -> LinComb<Tensor<Forest, Forest>> {
    a.bilinear(b, |Tensor(x1, y1), Tensor(x2, y2)| LinComb::basis(Tensor(x1.mul(x2), y1.mul(y2))))
}

/// BCK coproduct by the recursion `Δ(B⁺_i F) = B⁺_i F ⊗ 1 + (id ⊗ B⁺_i) Δ(F)`, multiplicative on forests.
pub fn bck_recursive(f: &Forest) -> LinComb<Tensor<Forest, Forest>> {
    let mut out = LinComb::basis(Tensor(Forest::unit(), Forest::unit()));
    for t in f.trees() {
        out = leg_product(&out, &bck_recursive_tree(t));
    }
    out
}

fn bck_recursive_tree(t: &Tree) -> LinComb<Tensor<Forest, Forest>> {
    let below = bck_recursive(&Forest::new(t.children().to_vec()));
    let mut out = below.map_basis(|Tensor(a, b)| Tensor(a.clone(), Forest::tree(b_plus(t.root(), b))));
    out.add_term(Tensor(Forest::tree(t.clone()), Forest::unit()), Q::one());
    out
}

/// A tree as parent pointers in preorder, root at index 0.
pub struct Flat {
    pub labels: Vec<SemigroupElement>,
    pub parent: Vec<Option<usize>>,
}

pub fn flatten(t: &Tree) -> Flat {
    fn go(t: &Tree, p: Option<usize>, out: &mut Flat) {
        let me = out.labels.len();
        out.labels.push(t.root().clone());
        out.parent.push(p);
        for c in t.children() {
            go(c, Some(me), out);
        }
    }
    let mut out = Flat { labels: Vec::new(), parent: Vec::new() };
    go(t, None, &mut out);
    out
}

/// Rebuild the subtree at `v`, with extra trees hung below the listed vertices.
fn rebuild(flat: &Flat, v: usize, extra: &[(usize, Tree)]) -> Tree {
    let mut kids: Vec<Tree> = (0..flat.labels.len()).filter(|&c| flat.parent[c] == Some(v)).map(|c| rebuild(flat, c, extra)).collect();
    kids.extend(extra.iter().filter(|(at, _)| *at == v).map(|(_, t)| t.clone()));
    Tree::new(flat.labels[v].clone(), kids)
}

/// `F ▷ t` by attaching every tree of `F` to an independently chosen vertex of `t`.
pub fn forest_graft_direct(f: &Forest, t: &Tree) -> LinComb<Tree> {
    let flat = flatten(t);
    let n = flat.labels.len();
    let k = f.len();
    let mut out = LinComb::zero();
    let mut choice = vec![0usize; k];
    loop {
        let extra: Vec<(usize, Tree)> = choice.iter().zip(f.trees()).map(|(&v, s)| (v, s.clone())).collect();
        out.add_term(rebuild(&flat, 0, &extra), Q::one());
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            choice[pos] += 1;
            if choice[pos] < n {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Label-preserving vertex permutations that preserve the parent map.
pub fn automorphisms_brute(t: &Tree) -> usize {
    let flat = flatten(t);
    let n = flat.labels.len();
    permutations(n)
        .into_iter()
        .filter(|p| {
            (0..n).all(|v| flat.labels[p[v]] == flat.labels[v] && flat.parent[p[v]] == flat.parent[v].map(|u| p[u]))
        })
        .count()
}

/// Orderings of the vertices in which every parent precedes its children.
pub fn linear_extensions_brute(t: &Tree) -> usize {
    let flat = flatten(t);
    let n = flat.labels.len();
    permutations(n)
        .into_iter()
        .filter(|order| {
            let mut pos = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            (0..n).all(|v| flat.parent[v].map_or(true, |p| pos[p] < pos[v]))
        })
        .count()
}

/// `(v − ε)` on forests of `ℋ⁺`, where `ε` is 1 exactly on forests of single vertices.
fn v_minus_counit(v: &PlusCharacter, f: &Forest) -> Q {
    let eps = if f.trees().iter().all(Tree::is_vertex) { Q::one() } else { Q::zero() };
    v.eval_forest(f).unwrap() - eps
}

/// Inverse character from the pseudo-antipode series `Σ_k (−1)^k (v − ε)^{⊛k}`.
pub fn pseudo_antipode_inverse(v: &PlusCharacter, t: &Tree) -> Q {
    let f = Forest::tree(t.clone());
    // powers[k](F) = (v − ε)^{⊛k}(F); the series stops once k exceeds the edge count.
    let mut total = Q::zero();
    let mut sign = Q::one();
    for k in 0..=t.edges() {
        total += &sign * power(v, k, &f);
        sign = -sign;
    }
    total
}

fn power(v: &PlusCharacter, k: usize, f: &Forest) -> Q {
    match k {
        0 => {
            if f.trees().iter().all(Tree::is_vertex) {
                Q::one()
            } else {
                Q::zero()
            }
        }
        1 => v_minus_counit(v, f),
        _ => coaction(f).eval(|Tensor(a, b)| {
            let x = v_minus_counit(v, b);
            if x.is_zero() {
                x
            } else {
                power(v, k - 1, a) * x
            }
        }),
    }
}

/// Taylor coefficients of the exact flow of `y' = f(y)` at `y0`, by iterated Lie derivatives.
pub fn exact_flow_taylor(f: &PolyVectorField, y0: &[Q], n: usize) -> Vec<Vec<Q>> {
    let dim = y0.len();
    let fc = f.components();
    let mut d: Vec<Polynomial> = (0..dim).map(|k| Polynomial::var(dim, k)).collect();
    let mut out = Vec::new();
    let mut fact = Q::one();
    for k in 0..=n {
        if k > 0 {
            fact *= Q::from_integer((k as i64).into());
        }
        out.push(d.iter().map(|p| evaluate(p, y0) / &fact).collect());
        d = d
            .iter()
            .map(|p| (0..dim).fold(Polynomial::zero(dim), |acc, j| acc.add(&p.derivative(j).mul(&fc[j]))))
            .collect();
    }
    out
}

fn evaluate(p: &Polynomial, y: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (e, c) in p.terms() {
        let mut term = c.clone();
        for (k, &pow) in e.iter().enumerate() {
            for _ in 0..pow {
                term *= &y[k];
            }
        }
        acc += term;
    }
    acc
}

pub fn one_field(f: PolyVectorField) -> Fields {
    treehopf::bseries::undecorated_fields(f)
}

pub fn character(values: &[(&str, Q)]) -> PlusCharacter {
    let map: BTreeMap<Tree, Q> = values.iter().map(|(t, c)| (tree(t), c.clone())).collect();
    PlusCharacter::table(map, true, None)
}

pub mod strategies {
    use proptest::prelude::*;
    use treehopf::{Forest, SemigroupElement, Tree, Word};

    /// Random trees over `letters` with at most `max` vertices.
    pub fn tree(letters: &'static [&'static str], max: usize) -> impl Strategy<Value = Tree> {
        let leaf = prop::sample::select(letters).prop_map(Tree::vertex);
        leaf.prop_recursive(4, max as u32, 3, move |inner| {
            (prop::sample::select(letters), prop::collection::vec(inner, 0..3))
                .prop_map(|(l, kids)| Tree::new(SemigroupElement::letter(l), kids))
        })
        .prop_filter("too many vertices", move |t| t.size() <= max)
    }

    pub fn forest(letters: &'static [&'static str], max: usize) -> impl Strategy<Value = Forest> {
        prop::collection::vec(tree(letters, max), 0..3)
            .prop_map(Forest::new)
            .prop_filter("too many vertices", move |f| f.size() <= max)
    }

    pub fn word(letters: &'static [&'static str], max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::sample::select(letters), 0..=max)
            .prop_map(|ls| Word(ls.into_iter().map(SemigroupElement::letter).collect()))
    }
}
