//! Laurent polynomials in `v` over the integers, the coefficient ring of
//! every Hecke-level computation in this crate.
//!
//! The representation is a sparse exponent -> coefficient map with no zero
//! coefficients stored; the zero polynomial is the empty map. The canonical
//! text rendering is ascending in the exponent, e.g. `-v^-2 + 3 + v^4`, and
//! [`LaurentPoly::parse`] accepts the same grammar.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

/// Sparse Laurent polynomial in one variable `v` with `BigInt` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c.into());
        p
    }

    /// The monomial `v^k`.
    pub fn v_pow(k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, BigInt::one());
        p
    }

    /// `v - v^-1`, the quantum parameter that shows up in every quadratic relation.
    pub fn v_minus_vinv() -> Self {
        let mut p = Self::zero();
        p.add_term(1, BigInt::one());
        p.add_term(-1, -BigInt::one());
        p
    }

    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Ring homomorphism `v -> 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Evaluate at a rational point, used by the specialization rank bound.
    pub fn eval_at_rational(&self, x: &num::BigRational) -> num::BigRational {
        let mut acc = num::BigRational::zero();
        for (&e, c) in &self.coeffs {
            let p = if e >= 0 {
                num::BigRational::from(x.numer().pow(e as u32))
                    / num::BigRational::from(x.denom().pow(e as u32))
            } else {
                num::BigRational::from(x.denom().pow((-e) as u32))
                    / num::BigRational::from(x.numer().pow((-e) as u32))
            };
            acc += p * num::BigRational::from(c.clone());
        }
        acc
    }

    /// Exact division: returns `Some(q)` with `self = q * d`, or `None` when
    /// `d` does not divide exactly over `Z[v, v^-1]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Long division from the top. When the division is exact the quotient's
        // exponents lie in [lo_n - lo_d, hi_n - hi_d], so any step that would
        // reach below that window proves non-divisibility.
        let lo_n = self.min_exp().unwrap();
        let lo_d = d.min_exp().unwrap();
        let mut rem = self.coeffs.clone();
        let d_top = d.max_exp().unwrap();
        let d_lead = d.coeffs[&d_top].clone();
        let mut quot: BTreeMap<i64, BigInt> = BTreeMap::new();
        while let Some((&r_top, _)) = rem.iter().next_back() {
            let r_lead = rem[&r_top].clone();
            let (q, r) = num::Integer::div_rem(&r_lead, &d_lead);
            if !r.is_zero() {
                return None;
            }
            let shift = r_top - d_top;
            if shift < lo_n - lo_d {
                return None;
            }
            *quot.entry(shift).or_insert_with(BigInt::zero) += &q;
            for (&e, c) in &d.coeffs {
                let target = e + shift;
                let entry = rem.entry(target).or_insert_with(BigInt::zero);
                *entry -= c * &q;
                if entry.is_zero() {
                    rem.remove(&target);
                }
            }
        }
        let mut out = Self::zero();
        for (e, c) in quot {
            out.add_term(e, c);
        }
        Some(out)
    }

    /// Parse the canonical rendering produced by `Display`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut out = Self::zero();
        let s = s.trim();
        if s.is_empty() {
            return Err("empty Laurent polynomial".into());
        }
        if s == "0" {
            return Ok(out);
        }
        // Tokenize on +/- signs that separate terms (exponent minus signs
        // follow '^' and are not separators).
        let mut terms: Vec<(i64, String)> = Vec::new(); // (sign, body)
        let mut sign = 1i64;
        let mut body = String::new();
        let mut chars = s.chars().peekable();
        let mut prev_was_caret = false;
        while let Some(ch) = chars.next() {
            match ch {
                '+' | '-' if !prev_was_caret => {
                    if !body.trim().is_empty() {
                        terms.push((sign, body.trim().to_string()));
                    }
                    body = String::new();
                    sign = if ch == '-' { -1 } else { 1 };
                }
                '^' => {
                    prev_was_caret = true;
                    body.push(ch);
                    continue;
                }
                _ => body.push(ch),
            }
            prev_was_caret = false;
        }
        if !body.trim().is_empty() {
            terms.push((sign, body.trim().to_string()));
        }
        for (sgn, t) in terms {
            let (exp, coeff) = Self::parse_term(&t)?;
            out.add_term(exp, coeff * BigInt::from(sgn));
        }
        Ok(out)
    }

    fn parse_term(t: &str) -> Result<(i64, BigInt), String> {
        let t = t.trim();
        if let Some(rest) = t.strip_prefix('v').or_else(|| t.strip_prefix("1v")) {
            let exp = Self::parse_exp(rest)?;
            return Ok((exp, BigInt::one()));
        }
        if let Some(vpos) = t.find('v') {
            let (c, rest) = t.split_at(vpos);
            let c = c.trim().trim_end_matches('*').trim();
            let coeff: BigInt = c.parse().map_err(|_| format!("bad coefficient `{c}`"))?;
            let exp = Self::parse_exp(&rest[1..])?;
            return Ok((exp, coeff));
        }
        let coeff: BigInt = t.parse().map_err(|_| format!("bad constant `{t}`"))?;
        Ok((0, coeff))
    }

    fn parse_exp(rest: &str) -> Result<i64, String> {
        let rest = rest.trim();
        if rest.is_empty() {
            return Ok(1);
        }
        let rest = rest
            .strip_prefix('^')
            .ok_or_else(|| format!("expected `^` in `{rest}`"))?;
        rest.trim()
            .parse()
            .map_err(|_| format!("bad exponent `{rest}`"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{mag}v")?,
                (_, true) => write!(f, "v^{e}")?,
                (_, false) => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$imp(rhs)
            }
        }
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> LaurentPoly {
        LaurentPoly::v_pow(1)
    }

    fn vinv() -> LaurentPoly {
        LaurentPoly::v_pow(-1)
    }

    #[test]
    fn difference_of_squares() {
        // (v - v^-1)(v + v^-1) = v^2 - v^-2
        let got = (v() - vinv()) * (v() + vinv());
        let want = LaurentPoly::from_terms([(2, 1), (-2, -1)]);
        assert_eq!(got, want);
    }

    #[test]
    fn eval_at_one_kills_quantum_parameter() {
        assert_eq!(LaurentPoly::v_minus_vinv().eval_at_one(), BigInt::zero());
        assert_eq!(LaurentPoly::from_terms([(3, 2), (0, -1)]).eval_at_one(), BigInt::one());
    }

    #[test]
    fn square_of_quantum_parameter() {
        // (v - v^-1)^2 = v^2 - 2 + v^-2
        let c = LaurentPoly::v_minus_vinv();
        let got = &c * &c;
        let want = LaurentPoly::from_terms([(2, 1), (0, -2), (-2, 1)]);
        assert_eq!(got, want);
    }

    #[test]
    fn canonical_rendering() {
        let p = LaurentPoly::from_terms([(4, 1), (0, 3), (-2, -1)]);
        assert_eq!(p.to_string(), "-v^-2 + 3 + v^4");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::from_terms([(1, -2)]).to_string(), "-2v");
    }

    #[test]
    fn parse_round_trip() {
        for p in [
            LaurentPoly::zero(),
            LaurentPoly::one(),
            LaurentPoly::from_terms([(4, 1), (0, 3), (-2, -1)]),
            LaurentPoly::from_terms([(1, -2), (-1, 7), (5, -3)]),
            LaurentPoly::v_minus_vinv(),
        ] {
            let s = p.to_string();
            assert_eq!(LaurentPoly::parse(&s).unwrap(), p, "round-trip of `{s}`");
        }
    }

    #[test]
    fn exact_division() {
        let a = (v() - vinv()) * (v() + vinv());
        let q = a.div_exact(&(v() - vinv())).unwrap();
        assert_eq!(q, v() + vinv());
        // v^2 - 1 does not divide v + 1 over Z[v, v^-1]
        let n = LaurentPoly::from_terms([(1, 1), (0, 1)]);
        let d = LaurentPoly::from_terms([(2, 1), (0, -1)]);
        assert!(n.div_exact(&d).is_none());
        // but (v^2 - 1) / (v + 1) = v - 1
        assert_eq!(d.div_exact(&n).unwrap(), LaurentPoly::from_terms([(1, 1), (0, -1)]));
    }

    #[test]
    fn eval_at_one_is_ring_hom_on_samples() {
        let ps = [
            LaurentPoly::from_terms([(2, 3), (0, -1)]),
            LaurentPoly::v_minus_vinv(),
            LaurentPoly::from_terms([(-3, 5), (1, 2), (4, -7)]),
        ];
        for a in &ps {
            for b in &ps {
                assert_eq!((a * b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
            }
        }
    }
}
