//! Multivariate polynomials with rational coefficients and polynomial vector fields.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::Q;
use crate::text::parse_rational;

/// Sparse polynomial in `nvars` variables; exponent vectors map to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_k` (0-based).
    pub fn var(nvars: usize, k: usize) -> Polynomial {
        let mut e = vec![0; nvars];
        e[k] = 1;
        let mut p = Polynomial::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, x) in &self.terms {
            for (f, y) in &other.terms {
                out.add_term(e.iter().zip(f).map(|(a, b)| a + b).collect(), x * y);
            }
        }
        out
    }

    pub fn derivative(&self, k: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut f = e.clone();
                f[k] -= 1;
                out.add_term(f, c * Q::from_integer(e[k].into()));
            }
        }
        out
    }

    /// Drop every term whose exponent of `x_k` exceeds `max`.
    pub fn truncate(&self, k: usize, max: u32) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().filter(|(e, _)| e[k] <= max).map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    /// Substitute values for the leading variables, keeping the rest.
    pub fn eval_prefix(&self, values: &[Q]) -> Polynomial {
        let k = values.len();
        let mut out = Polynomial::zero(self.nvars - k);
        for (e, c) in &self.terms {
            let mut x = c.clone();
            for (v, &p) in values.iter().zip(e.iter()) {
                x *= num_traits::pow(v.clone(), p as usize);
            }
            out.add_term(e[k..].to_vec(), x);
        }
        out
    }

    /// Coefficient of `x_0^d` in a univariate polynomial.
    pub fn coeff1(&self, d: u32) -> Q {
        self.terms.get(&vec![d]).cloned().unwrap_or_else(Q::zero)
    }

    /// Parse `c*x1^a*x2^b + ...`; `y` is accepted as `x1`.
    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut out = Polynomial::zero(nvars);
        let mut start = 0;
        let bytes: Vec<char> = s.chars().collect();
        let mut terms = Vec::new();
        for k in 1..=bytes.len() {
            let boundary = k == bytes.len() || ((bytes[k] == '+' || bytes[k] == '-') && bytes[k - 1] != '^' && bytes[k - 1] != '*' && bytes[k - 1] != '/');
            if boundary {
                terms.push(bytes[start..k].iter().collect::<String>());
                start = k;
            }
        }
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-Q::one(), b.to_string()),
                None => (Q::one(), term.strip_prefix('+').unwrap_or(&term).to_string()),
            };
            let mut c = sign;
            let mut e = vec![0u32; nvars];
            for factor in body.split('*') {
                let (base, pow) = match factor.split_once('^') {
                    Some((b, p)) => (b, p.parse::<u32>().map_err(|_| bad(factor))?),
                    None => (factor, 1),
                };
                let var = if base == "y" { Some(1) } else { base.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) };
                match var {
                    Some(j) if j >= 1 && j <= nvars => e[j - 1] += pow,
                    Some(_) => return Err(bad(factor)),
                    None => c *= num_traits::pow(parse_rational(base).map_err(|_| bad(factor))?, pow as usize),
                }
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

fn bad(s: &str) -> Error {
    Error::Parse { pos: 0, msg: format!("bad polynomial factor `{}`", s) }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            for (j, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", j + 1)?,
                    _ => write!(f, "*x{}^{}", j + 1, p)?,
                }
            }
        }
        Ok(())
    }
}

/// A vector field on `dim` coordinates. Components may carry extra trailing variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    pub dim: usize,
    pub components: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<PolyVectorField> {
        let dim = components.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("vector field needs at least one component".into()));
        }
        let nvars = components[0].nvars();
        if nvars < dim || components.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::InvalidArgument("components must share one variable set".into()));
        }
        Ok(PolyVectorField { dim, components })
    }

    /// Parse components separated by `;`.
    pub fn parse(text: &str) -> Result<PolyVectorField> {
        let parts: Vec<&str> = text.split(';').collect();
        let d = parts.len();
        PolyVectorField::new(parts.iter().map(|p| Polynomial::parse(p, d)).collect::<Result<_>>()?)
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn zero_like(&self) -> PolyVectorField {
        PolyVectorField { dim: self.dim, components: vec![Polynomial::zero(self.nvars()); self.dim] }
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        if self.dim != other.dim {
            return Err(Error::Dimension(self.dim, other.dim));
        }
        Ok(PolyVectorField { dim: self.dim, components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn scale(&self, c: &Q) -> PolyVectorField {
        PolyVectorField { dim: self.dim, components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> PolyVectorField {
        PolyVectorField { dim: self.dim, components: self.components.iter().map(|c| c.mul(p)).collect() }
    }

    /// Append one extra variable (used for a formal step size).
    pub fn with_extra_var(&self) -> PolyVectorField {
        let components = self
            .components
            .iter()
            .map(|p| {
                let mut q = Polynomial::zero(p.nvars() + 1);
                for (e, c) in p.terms() {
                    let mut f = e.clone();
                    f.push(0);
                    q.add_term(f, c.clone());
                }
                q
            })
            .collect();
        PolyVectorField { dim: self.dim, components }
    }

    pub fn eval(&self, y0: &[Q]) -> Result<Vec<Polynomial>> {
        if y0.len() != self.dim {
            return Err(Error::Dimension(self.dim, y0.len()));
        }
        Ok(self.components.iter().map(|p| p.eval_prefix(y0)).collect())
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}
