//! Shuffle and quasi-shuffle algebras, compositions, and Hoffman's exponential.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::{LinComb, Tensor, Q};
use crate::semigroup::{Semigroup, SemigroupElement};
use crate::word::Word;

/// Quasi-shuffle of two sequences; `bracket = None` gives the plain shuffle.
pub fn quasi_shuffle_by<T: Clone + Ord>(u: &[T], v: &[T], bracket: Option<&dyn Fn(&T, &T) -> T>) -> LinComb<Vec<T>> {
    let mut memo: HashMap<(usize, usize), LinComb<Vec<T>>> = HashMap::new();
    fn go<T: Clone + Ord>(
        i: usize,
        j: usize,
        u: &[T],
        v: &[T],
        bracket: Option<&dyn Fn(&T, &T) -> T>,
        memo: &mut HashMap<(usize, usize), LinComb<Vec<T>>>,
    ) -> LinComb<Vec<T>> {
        if i == u.len() || j == v.len() {
            let mut rest = u[i..].to_vec();
            rest.extend_from_slice(&v[j..]);
            return LinComb::basis(rest);
        }
        if let Some(x) = memo.get(&(i, j)) {
            return x.clone();
        }
        let prepend = |x: &T, l: &LinComb<Vec<T>>| {
            l.map_basis(|w| {
                let mut out = Vec::with_capacity(w.len() + 1);
                out.push(x.clone());
                out.extend_from_slice(w);
                out
            })
        };
        let mut out = prepend(&u[i], &go(i + 1, j, u, v, bracket, memo));
        out += &prepend(&v[j], &go(i, j + 1, u, v, bracket, memo));
        if let Some(b) = bracket {
            out += &prepend(&b(&u[i], &v[j]), &go(i + 1, j + 1, u, v, bracket, memo));
        }
        memo.insert((i, j), out.clone());
        out
    }
    go(0, 0, u, v, bracket, &mut memo)
}

/// `u ⋆ v` with the bracket of `sg`.
pub fn quasi_shuffle_in(sg: &Semigroup, u: &Word, v: &Word) -> Result<LinComb<Word>> {
    // Check reducibility once per letter pair so the closure can stay infallible.
    for x in &u.0 {
        for y in &v.0 {
            sg.mul(&[x.clone(), y.clone()])?;
        }
    }
    let bracket = |x: &SemigroupElement, y: &SemigroupElement| sg.mul(&[x.clone(), y.clone()]).expect("checked above");
    Ok(quasi_shuffle_by(&u.0, &v.0, Some(&bracket)).map_basis(|w| Word(w.clone())))
}

/// `u ⋆ v` in the free semigroup.
pub fn quasi_shuffle(u: &Word, v: &Word) -> LinComb<Word> {
    quasi_shuffle_in(&Semigroup::Free, u, v).expect("free bracket never fails")
}

/// `u ⧢ v`.
pub fn shuffle(u: &Word, v: &Word) -> LinComb<Word> {
    quasi_shuffle_by(&u.0, &v.0, None).map_basis(|w| Word(w.clone()))
}

pub fn quasi_shuffle_lc(a: &LinComb<Word>, b: &LinComb<Word>) -> LinComb<Word> {
    a.bilinear(b, quasi_shuffle)
}

pub fn shuffle_lc(a: &LinComb<Word>, b: &LinComb<Word>) -> LinComb<Word> {
    a.bilinear(b, shuffle)
}

/// All `|w| + 1` splittings of `w` into prefix and suffix.
pub fn deconcat(w: &Word) -> Vec<(Word, Word)> {
    (0..=w.len()).map(|k| (Word(w.0[..k].to_vec()), Word(w.0[k..].to_vec()))).collect()
}

pub fn deconcat_lc(a: &LinComb<Word>) -> LinComb<Tensor<Word, Word>> {
    a.flat_map(|w| deconcat(w).into_iter().map(|(x, y)| (Tensor(x, y), Q::one())).collect())
}

/// `R^i(w) = w i`.
pub fn append_letter(w: &Word, i: &SemigroupElement) -> Word {
    w.push(i.clone())
}

/// Integer compositions of `n` in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `I[w]`: multiply consecutive blocks of letters.
pub fn contract_word_in(sg: &Semigroup, parts: &[usize], w: &Word) -> Result<Word> {
    if parts.iter().sum::<usize>() != w.len() || parts.contains(&0) {
        return Err(Error::InvalidArgument(format!("composition {:?} does not fit a word of length {}", parts, w.len())));
    }
    let mut out = Vec::with_capacity(parts.len());
    let mut k = 0;
    for &p in parts {
        out.push(sg.mul(&w.0[k..k + p])?);
        k += p;
    }
    Ok(Word(out))
}

pub fn contract_word(parts: &[usize], w: &Word) -> Result<Word> {
    contract_word_in(&Semigroup::Free, parts, w)
}

/// `f = Σ_{n=1}^{N} f_n t^n`, known up to degree `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Q>,
}

impl PowerSeries {
    /// Coefficients `f_1, ..., f_N`.
    pub fn new(coeffs: Vec<Q>) -> PowerSeries {
        PowerSeries { coeffs }
    }

    pub fn from_fn(degree: usize, f: impl Fn(usize) -> Q) -> PowerSeries {
        PowerSeries::new((1..=degree).map(f).collect())
    }

    pub fn identity(degree: usize) -> PowerSeries {
        PowerSeries::from_fn(degree, |n| if n == 1 { Q::one() } else { Q::zero() })
    }

    /// `exp(t) - 1`.
    pub fn exp_minus_one(degree: usize) -> PowerSeries {
        let mut fact = Q::one();
        PowerSeries::new(
            (1..=degree)
                .map(|n| {
                    fact *= Q::from_integer(n.into());
                    fact.recip()
                })
                .collect(),
        )
    }

    /// `log(1 + t)`.
    pub fn log_one_plus(degree: usize) -> PowerSeries {
        PowerSeries::from_fn(degree, |n| {
            let c = Q::new(1.into(), (n as i64).into());
            if n % 2 == 1 {
                c
            } else {
                -c
            }
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `f_n`, for `1 <= n <= degree`.
    pub fn coeff(&self, n: usize) -> Result<&Q> {
        self.coeffs
            .get(n.wrapping_sub(1))
            .ok_or(Error::DegreeBound { bound: self.coeffs.len(), needed: n })
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// `f ∘ g`, truncated to the smaller degree.
    pub fn compose(&self, g: &PowerSeries) -> PowerSeries {
        let n = self.degree().min(g.degree());
        // polynomials indexed from t^0, truncated at t^n
        let mul = |a: &[Q], b: &[Q]| {
            let mut out = vec![Q::zero(); n + 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    if i + j <= n && !x.is_zero() {
                        out[i + j] += x * y;
                    }
                }
            }
            out
        };
        let mut gp = vec![Q::zero(); n + 1];
        gp[1..].clone_from_slice(&g.coeffs[..n]);
        let mut power = gp.clone();
        let mut out = vec![Q::zero(); n + 1];
        for k in 1..=n {
            for (o, p) in out.iter_mut().zip(power.iter()) {
                *o += &self.coeffs[k - 1] * p;
            }
            power = mul(&power, &gp);
        }
        PowerSeries::new(out[1..].to_vec())
    }
}

/// `ψ_f(w) = Σ_I f_{i_1} ⋯ f_{i_m} I[w]`.
pub fn psi_series_in(sg: &Semigroup, f: &PowerSeries, w: &Word) -> Result<LinComb<Word>> {
    if w.len() > f.degree() {
        return Err(Error::DegreeBound { bound: f.degree(), needed: w.len() });
    }
    let mut out = LinComb::zero();
    for parts in compositions(w.len()) {
        let mut c = Q::one();
        for &p in &parts {
            c *= f.coeff(p)?;
        }
        if !c.is_zero() {
            out.add_term(contract_word_in(sg, &parts, w)?, c);
        }
    }
    Ok(out)
}

pub fn psi_series(f: &PowerSeries, w: &Word) -> Result<LinComb<Word>> {
    psi_series_in(&Semigroup::Free, f, w)
}

pub fn psi_series_lc(f: &PowerSeries, a: &LinComb<Word>) -> Result<LinComb<Word>> {
    a.try_flat_map(|w| psi_series(f, w))
}

pub fn hoffman_exp_in(sg: &Semigroup, w: &Word) -> Result<LinComb<Word>> {
    psi_series_in(sg, &PowerSeries::exp_minus_one(w.len()), w)
}

pub fn hoffman_log_in(sg: &Semigroup, w: &Word) -> Result<LinComb<Word>> {
    psi_series_in(sg, &PowerSeries::log_one_plus(w.len()), w)
}

/// `exp_H(w)`.
pub fn hoffman_exp(w: &Word) -> LinComb<Word> {
    hoffman_exp_in(&Semigroup::Free, w).expect("free semigroup")
}

/// `log_H(w)`.
pub fn hoffman_log(w: &Word) -> LinComb<Word> {
    hoffman_log_in(&Semigroup::Free, w).expect("free semigroup")
}

pub fn hoffman_exp_lc(a: &LinComb<Word>) -> LinComb<Word> {
    a.flat_map(hoffman_exp)
}

pub fn hoffman_log_lc(a: &LinComb<Word>) -> LinComb<Word> {
    a.flat_map(hoffman_log)
}
