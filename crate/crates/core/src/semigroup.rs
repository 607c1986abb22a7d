//! Decoration alphabets: base letters and commutative semigroup products.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A base letter of the alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(s: &str) -> Letter {
        Letter(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Element of the free commutative semigroup: a nonempty sorted multiset of letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemigroupElement(Arc<[Letter]>);

impl SemigroupElement {
    pub fn letter(s: &str) -> SemigroupElement {
        SemigroupElement(Arc::from(vec![Letter::new(s)]))
    }

    pub fn from_letters(mut letters: Vec<Letter>) -> Result<SemigroupElement> {
        if letters.is_empty() {
            return Err(Error::EmptyProduct);
        }
        letters.sort();
        Ok(SemigroupElement(Arc::from(letters)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Number of base letters, counted with multiplicity.
    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn is_base(&self) -> bool {
        self.0.len() == 1
    }

    /// The bracket `[x y]` in the free semigroup.
    pub fn join(&self, other: &SemigroupElement) -> SemigroupElement {
        let mut v: Vec<Letter> = self.0.iter().chain(other.0.iter()).cloned().collect();
        v.sort();
        SemigroupElement(Arc::from(v))
    }
}

impl fmt::Display for SemigroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "[")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SemigroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[x_1 ... x_n]` in the free commutative semigroup.
pub fn semigroup_mul(xs: &[SemigroupElement]) -> Result<SemigroupElement> {
    let (first, rest) = xs.split_first().ok_or(Error::EmptyProduct)?;
    Ok(rest.iter().fold(first.clone(), |acc, x| acc.join(x)))
}

/// Finite commutative semigroup given by a multiplication table on base letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSemigroup {
    elements: Vec<Letter>,
    table: BTreeMap<(Letter, Letter), Letter>,
}

impl TableSemigroup {
    /// Build and validate closure, commutativity and associativity.
    pub fn new(entries: Vec<(Letter, Letter, Letter)>) -> Result<TableSemigroup> {
        let mut table = BTreeMap::new();
        let mut elements: Vec<Letter> = Vec::new();
        for (a, b, c) in entries {
            for x in [&a, &b, &c] {
                if !elements.contains(x) {
                    elements.push(x.clone());
                }
            }
            if let Some(prev) = table.insert((a.clone(), b.clone()), c.clone()) {
                if prev != c {
                    return Err(Error::Table(format!("conflicting entries for {}*{}", a, b)));
                }
            }
        }
        elements.sort();
        if elements.is_empty() {
            return Err(Error::Table("no entries".into()));
        }
        let get = |a: &Letter, b: &Letter| -> Result<Letter> {
            table
                .get(&(a.clone(), b.clone()))
                .or_else(|| table.get(&(b.clone(), a.clone())))
                .cloned()
                .ok_or_else(|| Error::Table(format!("missing entry {}*{}", a, b)))
        };
        for a in &elements {
            for b in &elements {
                let ab = get(a, b)?;
                if let (Some(x), Some(y)) = (table.get(&(a.clone(), b.clone())), table.get(&(b.clone(), a.clone()))) {
                    if x != y {
                        return Err(Error::Table(format!("{}*{} is not commutative", a, b)));
                    }
                }
                for c in &elements {
                    if get(&ab, c)? != get(a, &get(b, c)?)? {
                        return Err(Error::Table(format!("({}*{})*{} is not associative", a, b, c)));
                    }
                }
            }
        }
        let mut full = BTreeMap::new();
        for a in &elements {
            for b in &elements {
                full.insert((a.clone(), b.clone()), get(a, b)?);
            }
        }
        Ok(TableSemigroup { elements, table: full })
    }

    pub fn elements(&self) -> &[Letter] {
        &self.elements
    }

    pub fn mul(&self, a: &Letter, b: &Letter) -> Result<Letter> {
        self.table
            .get(&(a.clone(), b.clone()))
            .cloned()
            .ok_or_else(|| Error::Table(format!("{} or {} is not an element", a, b)))
    }
}

/// The decoration semigroup in force: free, or a finite table.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Semigroup {
    #[default]
    Free,
    Table(Arc<TableSemigroup>),
}

impl Semigroup {
    /// The one-element idempotent semigroup `{o}`, used for undecorated trees.
    pub fn undecorated() -> Semigroup {
        let o = Letter::new(UNDECORATED);
        Semigroup::Table(Arc::new(TableSemigroup::new(vec![(o.clone(), o.clone(), o)]).expect("valid table")))
    }

    pub fn table(entries: Vec<(Letter, Letter, Letter)>) -> Result<Semigroup> {
        Ok(Semigroup::Table(Arc::new(TableSemigroup::new(entries)?)))
    }

    /// Normal form of an element; the identity for the free semigroup.
    pub fn reduce(&self, x: &SemigroupElement) -> Result<SemigroupElement> {
        match self {
            Semigroup::Free => Ok(x.clone()),
            Semigroup::Table(t) => {
                let (first, rest) = x.letters().split_first().ok_or(Error::EmptyProduct)?;
                if !t.elements.contains(first) {
                    return Err(Error::Table(format!("{} is not an element", first)));
                }
                let mut acc = first.clone();
                for l in rest {
                    acc = t.mul(&acc, l)?;
                }
                Ok(SemigroupElement(Arc::from(vec![acc])))
            }
        }
    }

    pub fn mul(&self, xs: &[SemigroupElement]) -> Result<SemigroupElement> {
        self.reduce(&semigroup_mul(xs)?)
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Semigroup::Free)
    }
}

/// Letter used for undecorated trees.
pub const UNDECORATED: &str = "o";
