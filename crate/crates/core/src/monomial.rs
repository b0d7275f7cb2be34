//! Lattice monomials: points of `Z^S` with sparse storage, used as exponents
//! of the commuting generators in the affine-algebra modules and as
//! translation parts of affine Weyl elements.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::laurent::LaurentPoly;

/// A point of `Z^S`, stored as a sparse index -> exponent map with no zero
/// entries.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    exps: BTreeMap<usize, i64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonomialError {
    #[error("numerator difference is not an integer multiple of the direction")]
    NotDivisible,
}

impl Monomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn var(index: usize) -> Self {
        Self::from_pairs([(index, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Self {
        let mut m = Self::unit();
        for (i, e) in pairs {
            m.bump(i, e);
        }
        m
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, index: usize) -> i64 {
        self.exps.get(&index).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.exps.iter().map(|(&i, &e)| (i, e))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.keys().copied()
    }

    fn bump(&mut self, index: usize, by: i64) {
        if by == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.exps.entry(index) {
            Entry::Vacant(v) => {
                v.insert(by);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += by;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Componentwise sum, i.e. the product of the monomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, e) in other.iter() {
            out.bump(i, e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::unit();
        }
        Self {
            exps: self.exps.iter().map(|(&i, &e)| (i, e * k)).collect(),
        }
    }

    /// Scaled translate `self + k * dir` in additive (exponent) notation.
    pub fn translate(&self, dir: &Self, k: i64) -> Self {
        self.mul(&dir.pow(k))
    }

    /// Writes the exponent vector densely against `dim` coordinates.
    pub fn dense(&self, dim: usize) -> Vec<i64> {
        let mut v = vec![0; dim];
        for (i, e) in self.iter() {
            if i < dim {
                v[i] = e;
            }
        }
        v
    }

    pub fn from_dense(v: &[i64]) -> Self {
        Self::from_pairs(v.iter().enumerate().map(|(i, &e)| (i, e)))
    }

    pub fn render(&self, dim: usize) -> String {
        let dense = self.dense(dim);
        let body: Vec<String> = dense.iter().map(|e| e.to_string()).collect();
        format!("[{}]", body.join(","))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", self.exps)
    }
}

/// A finite integer combination of monomials, the output shape of
/// [`geometric_quotient`].
pub type MonomialCombination = Vec<(LaurentPoly, Monomial)>;

/// Exact telescoping expansion of `(t^lambda - t^mu) / (1 - t^-delta)` where
/// `t^x` denotes the monomial with exponent vector `x`.
///
/// Requires `lambda - mu = k * delta` for an integer `k`; multiplying the
/// result back by `1 - t^-delta` reproduces the numerator exactly.
pub fn geometric_quotient(
    lambda: &Monomial,
    mu: &Monomial,
    delta: &Monomial,
) -> Result<MonomialCombination, MonomialError> {
    let k = proportionality(lambda, mu, delta)?;
    let mut out: MonomialCombination = Vec::new();
    if k > 0 {
        // (t^l - t^(l - k d)) / (1 - t^-d) = sum_{t=0}^{k-1} t^(l - t d)
        for t in 0..k {
            out.push((LaurentPoly::one(), lambda.translate(delta, -t)));
        }
    } else if k < 0 {
        // k = -m: the expansion telescopes on the other side with a sign.
        for t in 1..=(-k) {
            out.push((-LaurentPoly::one(), lambda.translate(delta, t)));
        }
    }
    Ok(out)
}

/// Solve `lambda - mu = k * delta` for the integer `k`.
fn proportionality(lambda: &Monomial, mu: &Monomial, delta: &Monomial) -> Result<i64, MonomialError> {
    let diff = lambda.mul(&mu.inv());
    if diff.is_unit() {
        return Ok(0);
    }
    if delta.is_unit() {
        return Err(MonomialError::NotDivisible);
    }
    let (i0, d0) = delta.iter().next().expect("non-unit has support");
    let n0 = diff.exponent(i0);
    if d0 == 0 || n0 % d0 != 0 {
        return Err(MonomialError::NotDivisible);
    }
    let k = n0 / d0;
    if diff != delta.pow(k) {
        return Err(MonomialError::NotDivisible);
    }
    Ok(k)
}
