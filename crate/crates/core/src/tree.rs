//! Decorated non-planar rooted trees and forests in canonical form.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::linear::Q;
use crate::semigroup::{Letter, Semigroup, SemigroupElement};

#[derive(PartialEq, Eq, Hash)]
struct Node {
    root: SemigroupElement,
    children: Vec<Tree>,
    size: usize,
}

/// A decorated rooted tree. Children are kept sorted, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree(Arc<Node>);

impl Tree {
    pub fn new(root: SemigroupElement, mut children: Vec<Tree>) -> Tree {
        children.sort();
        let size = 1 + children.iter().map(Tree::size).sum::<usize>();
        Tree(Arc::new(Node { root, children, size }))
    }

    pub fn leaf(root: SemigroupElement) -> Tree {
        Tree::new(root, Vec::new())
    }

    /// Single vertex decorated by a base letter.
    pub fn vertex(letter: &str) -> Tree {
        Tree::leaf(SemigroupElement::letter(letter))
    }

    /// Ladder whose decorations are listed from the root upwards.
    pub fn ladder(decorations: &[SemigroupElement]) -> Tree {
        let (first, rest) = decorations.split_first().expect("nonempty ladder");
        if rest.is_empty() {
            Tree::leaf(first.clone())
        } else {
            Tree::new(first.clone(), vec![Tree::ladder(rest)])
        }
    }

    pub fn root(&self) -> &SemigroupElement {
        &self.0.root
    }

    pub fn children(&self) -> &[Tree] {
        &self.0.children
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn edges(&self) -> usize {
        self.0.size - 1
    }

    pub fn is_vertex(&self) -> bool {
        self.0.size == 1
    }

    /// Decorations of all vertices, sorted.
    pub fn decorations(&self) -> Vec<SemigroupElement> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_decorations(&mut out);
        out.sort();
        out
    }

    fn collect_decorations(&self, out: &mut Vec<SemigroupElement>) {
        out.push(self.root().clone());
        for c in self.children() {
            c.collect_decorations(out);
        }
    }

    /// `[τ]`: product of every decoration in the free semigroup.
    pub fn content(&self) -> SemigroupElement {
        let letters: Vec<Letter> = self.decorations().iter().flat_map(|d| d.letters().iter().cloned()).collect();
        SemigroupElement::from_letters(letters).expect("trees are nonempty")
    }

    /// Total number of base letters over all vertices.
    pub fn weight(&self) -> usize {
        self.decorations().iter().map(SemigroupElement::weight).sum()
    }

    pub fn try_map_decorations(&self, f: &mut impl FnMut(&SemigroupElement) -> Result<SemigroupElement>) -> Result<Tree> {
        let root = f(self.root())?;
        let children = self.children().iter().map(|c| c.try_map_decorations(f)).collect::<Result<Vec<_>>>()?;
        Ok(Tree::new(root, children))
    }

    /// Whether every vertex carries the same base letter.
    pub fn is_undecorated(&self) -> bool {
        let d = self.decorations();
        d[0].is_base() && d.iter().all(|x| x == &d[0])
    }

    /// Redecorate every vertex with the undecorated letter.
    pub fn shape(&self) -> Tree {
        Tree::new(
            SemigroupElement::letter(crate::semigroup::UNDECORATED),
            self.children().iter().map(Tree::shape).collect(),
        )
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.size()
            .cmp(&other.size())
            .then_with(|| self.root().cmp(other.root()))
            .then_with(|| self.children().cmp(other.children()))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root())?;
        if !self.children().is_empty() {
            write!(f, "(")?;
            for (k, c) in self.children().iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", c)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A commutative product of trees; the empty forest is the unit `1`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest(Vec<Tree>);

impl Forest {
    pub fn unit() -> Forest {
        Forest(Vec::new())
    }

    pub fn new(mut trees: Vec<Tree>) -> Forest {
        trees.sort();
        Forest(trees)
    }

    pub fn tree(t: Tree) -> Forest {
        Forest(vec![t])
    }

    pub fn trees(&self) -> &[Tree] {
        &self.0
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of components.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.0.iter().map(Tree::size).sum()
    }

    pub fn edges(&self) -> usize {
        self.0.iter().map(Tree::edges).sum()
    }

    pub fn mul(&self, other: &Forest) -> Forest {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend(self.0.iter().cloned());
        v.extend(other.0.iter().cloned());
        Forest::new(v)
    }

    /// The single tree of a one-component forest.
    pub fn as_tree(&self) -> Option<&Tree> {
        match self.0.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(Tree::weight).sum()
    }

    pub fn is_undecorated(&self) -> bool {
        self.0.iter().all(Tree::is_undecorated)
    }

    /// Each distinct tree with its multiplicity.
    pub fn multiplicities(&self) -> Vec<(&Tree, usize)> {
        let mut out: Vec<(&Tree, usize)> = Vec::new();
        for t in &self.0 {
            match out.last_mut() {
                Some((s, m)) if *s == t => *m += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Forest {
        Forest::tree(t)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "{}", t)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `B^i_+(F)`: graft every tree of `F` onto a new root decorated `i`.
pub fn b_plus(i: &SemigroupElement, f: &Forest) -> Tree {
    Tree::new(i.clone(), f.trees().to_vec())
}

/// `B_-(t)`: remove the root.
pub fn b_minus(t: &Tree) -> Forest {
    Forest(t.children().to_vec())
}

/// Reduce every decoration to normal form in `sg`.
pub fn reduce_tree(sg: &Semigroup, t: &Tree) -> Result<Tree> {
    if sg.is_free() {
        return Ok(t.clone());
    }
    t.try_map_decorations(&mut |d| sg.reduce(d))
}

pub fn reduce_forest(sg: &Semigroup, f: &Forest) -> Result<Forest> {
    if sg.is_free() {
        return Ok(f.clone());
    }
    Ok(Forest::new(f.trees().iter().map(|t| reduce_tree(sg, t)).collect::<Result<_>>()?))
}

/// Size, tree factorial, symmetry factor and Connes–Moscovici coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub vertices: usize,
    pub edges: usize,
    pub factorial: BigUint,
    pub sigma: BigUint,
    pub cm: Q,
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn tree_factorial(t: &Tree) -> BigUint {
    t.children().iter().fold(BigUint::from(t.size()), |acc, c| acc * tree_factorial(c))
}

/// `|Aut(t)|`, from the multiplicities of identical subtrees.
pub fn tree_sigma(t: &Tree) -> BigUint {
    let mut out = BigUint::one();
    for (c, m) in b_minus(t).multiplicities() {
        out *= tree_sigma(c).pow(m as u32) * factorial(m);
    }
    out
}

pub fn tree_stats(t: &Tree) -> TreeStats {
    let factorial_t = tree_factorial(t);
    let sigma = tree_sigma(t);
    let cm = Q::new(factorial(t.size()).into(), (&factorial_t * &sigma).into());
    TreeStats { vertices: t.size(), edges: t.edges(), factorial: factorial_t, sigma, cm }
}

/// Full automorphism count of a forest, including permutations of identical trees.
pub fn forest_sigma(f: &Forest) -> BigUint {
    let mut out = BigUint::one();
    for (t, m) in f.multiplicities() {
        out *= tree_sigma(t).pow(m as u32) * factorial(m);
    }
    out
}

pub fn forest_factorial(f: &Forest) -> BigUint {
    f.trees().iter().fold(BigUint::one(), |acc, t| acc * tree_factorial(t))
}

/// Number of total orders of the vertices in which every parent precedes its children.
pub fn linear_extension_count(t: &Tree) -> Result<BigUint> {
    if t.size() > 10 {
        return Err(Error::InvalidArgument(format!("linear_extension_count refuses {} > 10 vertices", t.size())));
    }
    let flat = FlatTree::new(t);
    let n = flat.len();
    let full = (1u32 << n) - 1;
    let mut memo: HashMap<u32, BigUint> = HashMap::new();
    fn go(placed: u32, full: u32, flat: &FlatTree, memo: &mut HashMap<u32, BigUint>) -> BigUint {
        if placed == full {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&placed) {
            return v.clone();
        }
        let mut total = BigUint::default();
        for v in 0..flat.len() {
            let free = placed & (1 << v) == 0;
            let ready = v == 0 || placed & (1 << flat.parent[v]) != 0;
            if free && ready {
                total += go(placed | (1 << v), full, flat, memo);
            }
        }
        memo.insert(placed, total.clone());
        total
    }
    Ok(go(0, full, &flat, &mut memo))
}

/// Preorder array view of a tree: vertex 0 is the root and edge `v - 1` joins `v` to its parent.
#[derive(Clone, Debug)]
pub struct FlatTree {
    pub labels: Vec<SemigroupElement>,
    pub parent: Vec<usize>,
    pub children: Vec<Vec<usize>>,
}

impl FlatTree {
    pub fn new(t: &Tree) -> FlatTree {
        let mut flat = FlatTree { labels: Vec::new(), parent: Vec::new(), children: Vec::new() };
        flat.push(t, usize::MAX);
        flat
    }

    fn push(&mut self, t: &Tree, parent: usize) {
        let v = self.labels.len();
        self.labels.push(t.root().clone());
        self.parent.push(parent);
        self.children.push(Vec::new());
        if parent != usize::MAX {
            self.children[parent].push(v);
        }
        for c in t.children() {
            self.push(c, v);
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len() - 1
    }

    fn kept(mask: u64, v: usize) -> bool {
        v > 0 && mask & (1 << (v - 1)) != 0
    }

    /// Subtree at `v` keeping only the edges in `mask`.
    pub fn subtree(&self, v: usize, mask: u64) -> Tree {
        let children = self.children[v].iter().filter(|&&c| Self::kept(mask, c)).map(|&c| self.subtree(c, mask)).collect();
        Tree::new(self.labels[v].clone(), children)
    }

    /// Representative (topmost vertex) of each vertex's block under the kept edges.
    pub fn blocks(&self, mask: u64) -> Vec<usize> {
        let mut rep = vec![0; self.len()];
        for v in 1..self.len() {
            rep[v] = if Self::kept(mask, v) { rep[self.parent[v]] } else { v };
        }
        rep
    }

    /// Split along the kept edges: the forest of blocks and the contracted tree.
    pub fn extract_contract(&self, mask: u64) -> (Forest, Tree) {
        let rep = self.blocks(mask);
        let heads: Vec<usize> = (0..self.len()).filter(|&v| rep[v] == v).collect();
        let left = Forest::new(heads.iter().map(|&h| self.subtree(h, mask)).collect());
        let mut deco: BTreeMap<usize, Vec<Letter>> = BTreeMap::new();
        for v in 0..self.len() {
            deco.entry(rep[v]).or_default().extend(self.labels[v].letters().iter().cloned());
        }
        let mut kids: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &h in &heads[1..] {
            kids.entry(rep[self.parent[h]]).or_default().push(h);
        }
        fn build(h: usize, deco: &BTreeMap<usize, Vec<Letter>>, kids: &BTreeMap<usize, Vec<usize>>) -> Tree {
            let root = SemigroupElement::from_letters(deco[&h].clone()).expect("nonempty block");
            let children = kids.get(&h).map(|ks| ks.iter().map(|&k| build(k, deco, kids)).collect()).unwrap_or_default();
            Tree::new(root, children)
        }
        (left, build(0, &deco, &kids))
    }

    /// Whether a set of cut edges is admissible: no cut lies below another.
    pub fn admissible(&self, cuts: u64) -> bool {
        (1..self.len()).filter(|&v| Self::kept(cuts, v)).all(|v| {
            let mut u = self.parent[v];
            while u != 0 {
                if Self::kept(cuts, u) {
                    return false;
                }
                u = self.parent[u];
            }
            true
        })
    }

    /// Pruned forest and trunk of an admissible cut.
    pub fn cut(&self, cuts: u64) -> (Forest, Tree) {
        let all = (1u64 << self.edge_count()) - 1;
        let pruned = (1..self.len()).filter(|&v| Self::kept(cuts, v)).map(|v| self.subtree(v, all)).collect();
        (Forest::new(pruned), self.subtree(0, all & !cuts))
    }
}

/// Generates all trees and forests over a finite set of vertex decorations.
pub struct Enumerator {
    alphabet: Vec<SemigroupElement>,
    by_size: Vec<Vec<Tree>>,
}

impl Enumerator {
    pub fn new(alphabet: &[SemigroupElement]) -> Enumerator {
        let mut a = alphabet.to_vec();
        a.sort();
        a.dedup();
        Enumerator { alphabet: a, by_size: vec![Vec::new()] }
    }

    pub fn letters(letters: &[&str]) -> Enumerator {
        Enumerator::new(&letters.iter().map(|l| SemigroupElement::letter(l)).collect::<Vec<_>>())
    }

    fn grow(&mut self, n: usize) {
        while self.by_size.len() <= n {
            let k = self.by_size.len();
            let mut out = Vec::new();
            for f in self.forests_exact(k - 1) {
                for a in &self.alphabet {
                    out.push(b_plus(a, &f));
                }
            }
            out.sort();
            self.by_size.push(out);
        }
    }

    /// Trees with exactly `n` vertices.
    pub fn trees(&mut self, n: usize) -> Vec<Tree> {
        self.grow(n);
        self.by_size[n].clone()
    }

    pub fn trees_up_to(&mut self, n: usize) -> Vec<Tree> {
        (1..=n).flat_map(|k| self.trees(k)).collect()
    }

    /// Forests with exactly `n` vertices.
    pub fn forests(&mut self, n: usize) -> Vec<Forest> {
        self.grow(n);
        self.forests_exact(n)
    }

    pub fn forests_up_to(&mut self, n: usize) -> Vec<Forest> {
        (0..=n).flat_map(|k| self.forests(k)).collect()
    }

    fn forests_exact(&self, n: usize) -> Vec<Forest> {
        let pool: Vec<&Tree> = self.by_size[1..].iter().take(n).flatten().collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec<'a>(rem: usize, start: usize, pool: &[&'a Tree], cur: &mut Vec<&'a Tree>, out: &mut Vec<Forest>) {
            if rem == 0 {
                out.push(Forest::new(cur.iter().map(|t| (*t).clone()).collect()));
                return;
            }
            for (k, t) in pool.iter().enumerate().skip(start) {
                if t.size() <= rem {
                    cur.push(t);
                    rec(rem - t.size(), k, pool, cur, out);
                    cur.pop();
                }
            }
        }
        rec(n, 0, &pool, &mut cur, &mut out);
        out
    }
}

/// All trees with exactly `n` vertices decorated by the given base letters.
pub fn enumerate_trees(n: usize, alphabet: &[SemigroupElement]) -> Result<Vec<Tree>> {
    if n < 1 {
        return Err(Error::InvalidArgument("tree size must be at least 1".into()));
    }
    if alphabet.is_empty() {
        return Err(Error::InvalidArgument("empty alphabet".into()));
    }
    Ok(Enumerator::new(alphabet).trees(n))
}

pub fn enumerate_forests(n: usize, alphabet: &[SemigroupElement]) -> Result<Vec<Forest>> {
    if alphabet.is_empty() {
        return Err(Error::InvalidArgument("empty alphabet".into()));
    }
    Ok(Enumerator::new(alphabet).forests(n))
}

/// All trees whose vertex decorations are exactly the given multiset.
pub fn trees_with_labels(labels: &[SemigroupElement]) -> Vec<Tree> {
    let mut labels = labels.to_vec();
    labels.sort();
    let mut memo = HashMap::new();
    trees_labelled(&labels, &mut memo).into_iter().collect()
}

type LabelMemo = HashMap<Vec<SemigroupElement>, BTreeSet<Tree>>;

fn trees_labelled(labels: &[SemigroupElement], memo: &mut LabelMemo) -> BTreeSet<Tree> {
    if let Some(v) = memo.get(labels) {
        return v.clone();
    }
    let mut out = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for k in 0..labels.len() {
        if !seen.insert(&labels[k]) {
            continue;
        }
        let mut rest = labels.to_vec();
        let root = rest.remove(k);
        for f in forests_labelled(&rest, memo) {
            out.insert(b_plus(&root, &f));
        }
    }
    memo.insert(labels.to_vec(), out.clone());
    out
}

fn forests_labelled(labels: &[SemigroupElement], memo: &mut LabelMemo) -> BTreeSet<Forest> {
    let mut out = BTreeSet::new();
    if labels.is_empty() {
        out.insert(Forest::unit());
        return out;
    }
    // The first tree holds labels[0]; the remaining labels are split by bitmask.
    let rest = &labels[1..];
    for mask in 0u32..(1 << rest.len()) {
        let mut mine = vec![labels[0].clone()];
        let mut other = Vec::new();
        for (k, l) in rest.iter().enumerate() {
            if mask & (1 << k) != 0 {
                mine.push(l.clone());
            } else {
                other.push(l.clone());
            }
        }
        mine.sort();
        let firsts = trees_labelled(&mine, memo);
        let others = forests_labelled(&other, memo);
        for t in &firsts {
            for f in &others {
                out.insert(f.mul(&Forest::tree(t.clone())));
            }
        }
    }
    out
}

/// All ways to split a multiset of base letters into a multiset of nonempty blocks.
pub fn multiset_partitions(x: &SemigroupElement) -> Vec<Vec<SemigroupElement>> {
    let letters = x.letters().to_vec();
    let mut out = BTreeSet::new();
    let n = letters.len();
    // Assign each letter a block index in restricted-growth form.
    let mut assign = vec![0usize; n];
    fn rec(k: usize, nblocks: usize, letters: &[Letter], assign: &mut Vec<usize>, out: &mut BTreeSet<Vec<SemigroupElement>>) {
        if k == letters.len() {
            let mut blocks: Vec<Vec<Letter>> = vec![Vec::new(); nblocks];
            for (l, &b) in letters.iter().zip(assign.iter()) {
                blocks[b].push(l.clone());
            }
            let mut elems: Vec<SemigroupElement> =
                blocks.into_iter().map(|b| SemigroupElement::from_letters(b).expect("nonempty")).collect();
            elems.sort();
            out.insert(elems);
            return;
        }
        for b in 0..=nblocks {
            assign[k] = b;
            rec(k + 1, nblocks.max(b + 1), letters, assign, out);
        }
    }
    if n > 0 {
        rec(0, 0, &letters, &mut assign, &mut out);
    }
    out.into_iter().collect()
}

/// All trees `t` with `[t] = x` in the free semigroup.
pub fn trees_with_content(x: &SemigroupElement) -> Vec<Tree> {
    let mut out = BTreeSet::new();
    for p in multiset_partitions(x) {
        out.extend(trees_with_labels(&p));
    }
    out.into_iter().collect()
}

/// Every element of the free semigroup on `letters` with weight at most `n`.
pub fn free_elements_up_to(letters: &[SemigroupElement], n: usize) -> Vec<SemigroupElement> {
    let mut base: Vec<Letter> = letters.iter().flat_map(|l| l.letters().iter().cloned()).collect();
    base.sort();
    base.dedup();
    let mut out = Vec::new();
    fn rec(start: usize, cur: &mut Vec<Letter>, n: usize, base: &[Letter], out: &mut Vec<SemigroupElement>) {
        if !cur.is_empty() {
            out.push(SemigroupElement::from_letters(cur.clone()).expect("nonempty"));
        }
        if cur.len() == n {
            return;
        }
        for k in start..base.len() {
            cur.push(base[k].clone());
            rec(k, cur, n, base, out);
            cur.pop();
        }
    }
    rec(0, &mut Vec::new(), n, &base, &mut out);
    out.sort();
    out
}

pub fn to_u64(x: &BigUint) -> u64 {
    x.to_u64().expect("fits in u64")
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::text::parse_tree;

    fn t(s: &str) -> Tree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn stats_of_four_vertex_trees() {
        let s = tree_stats(&t("o(o(o,o))"));
        assert_eq!((to_u64(&s.sigma), to_u64(&s.factorial)), (2, 12));
        let s = tree_stats(&t("o(o(o),o)"));
        assert_eq!((to_u64(&s.sigma), to_u64(&s.factorial)), (1, 8));
        assert_eq!(s.cm, crate::linear::qi(3));
    }

    #[test]
    fn undecorated_counts() {
        let mut e = Enumerator::letters(&["o"]);
        let counts: Vec<usize> = (1..=6).map(|n| e.trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20]);
    }

    #[test]
    fn labelled_trees_match_enumeration() {
        let mut e = Enumerator::letters(&["a", "b"]);
        let a = SemigroupElement::letter("a");
        let b = SemigroupElement::letter("b");
        let labels = vec![a.clone(), a.clone(), b.clone(), b.clone()];
        let direct: Vec<Tree> = e.trees(4).into_iter().filter(|t| t.decorations() == labels).collect();
        assert_eq!(trees_with_labels(&labels), direct);
    }

    #[test]
    fn multiset_partition_count() {
        // partitions of {a,a,b}: aab | a,ab | b,aa | a,a,b
        let x = SemigroupElement::from_letters(vec![Letter::new("a"), Letter::new("a"), Letter::new("b")]).unwrap();
        assert_eq!(multiset_partitions(&x).len(), 4);
    }
}
