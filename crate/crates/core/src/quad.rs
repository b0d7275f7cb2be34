//! Exact arithmetic in the real field `Q(sqrt 2, sqrt 3, sqrt 5)`, which
//! contains `2 cos(pi/m)` for every bond order `m` in {2, 3, 4, 5, 6, inf}.
//!
//! Elements are rational coordinate vectors over the eight-element basis
//! `{sqrt d : d | 30 squarefree}`. The basis is linearly independent over the
//! rationals, so the zero test is coordinatewise; the sign of a nonzero
//! element is decided by interval refinement with rational endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{bigint::BigInt, BigRational, One, Signed, Zero};

/// Radicands of the basis elements, in coordinate order.
pub const RADICANDS: [i64; 8] = [1, 2, 3, 5, 6, 10, 15, 30];

fn basis_index(d: i64) -> usize {
    RADICANDS.iter().position(|&r| r == d).expect("radicand in basis")
}

/// `sqrt a * sqrt b = c * sqrt d` with `c = gcd(a, b)` and `d = ab / c^2`.
fn radical_product(a: i64, b: i64) -> (i64, i64) {
    let g = num::integer::gcd(a, b);
    (g, a * b / (g * g))
}

/// Element of `Q(sqrt 2, sqrt 3, sqrt 5)` in exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    coords: [BigRational; 8],
}

impl QuadScalar {
    pub fn zero() -> Self {
        Self {
            coords: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        let mut s = Self::zero();
        s.coords[0] = BigRational::from(BigInt::from(n));
        s
    }

    pub fn from_rational(num: i64, den: i64) -> Self {
        let mut s = Self::zero();
        s.coords[0] = BigRational::new(BigInt::from(num), BigInt::from(den));
        s
    }

    /// `q * sqrt d` for a basis radicand `d`.
    pub fn root_term(num: i64, den: i64, d: i64) -> Self {
        let mut s = Self::zero();
        s.coords[basis_index(d)] = BigRational::new(BigInt::from(num), BigInt::from(den));
        s
    }

    /// `2 cos(pi / m)` for `m` in {2,3,4,5,6}, or 2 for the infinite bond.
    pub fn two_cos_pi_over(m: Option<u32>) -> Option<Self> {
        Some(match m {
            Some(2) => Self::zero(),
            Some(3) => Self::one(),
            Some(4) => Self::root_term(1, 1, 2),
            // 2 cos(pi/5) = (1 + sqrt 5) / 2
            Some(5) => &Self::from_rational(1, 2) + &Self::root_term(1, 2, 5),
            Some(6) => Self::root_term(1, 1, 3),
            None => Self::from_integer(2),
            _ => return None,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn coords(&self) -> &[BigRational; 8] {
        &self.coords
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..8 {
            out.coords[i] += &other.coords[i];
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..8 {
            out.coords[i] -= &other.coords[i];
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..8 {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if other.coords[j].is_zero() {
                    continue;
                }
                let (c, d) = radical_product(RADICANDS[i], RADICANDS[j]);
                let k = basis_index(d);
                out.coords[k] += &self.coords[i] * &other.coords[j] * BigRational::from(BigInt::from(c));
            }
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            *c *= q;
        }
        out
    }

    /// Exact sign in {-1, 0, +1}.
    ///
    /// Zero is decided coordinatewise (the basis is linearly independent over
    /// Q); a nonzero value is bracketed by rational interval arithmetic whose
    /// width halves every refinement round, so the loop always exits.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        // Brackets l_d <= sqrt d <= u_d, refined by bisection; the rational
        // coordinate (radicand 1) is exact from the start.
        let mut lo: Vec<BigRational> = RADICANDS
            .iter()
            .map(|&d| BigRational::from(BigInt::from(isqrt_floor(d))))
            .collect();
        let mut hi: Vec<BigRational> = RADICANDS
            .iter()
            .map(|&d| {
                if d == 1 {
                    BigRational::from(BigInt::from(1))
                } else {
                    BigRational::from(BigInt::from(isqrt_floor(d) + 1))
                }
            })
            .collect();
        loop {
            let mut sum_lo = BigRational::zero();
            let mut sum_hi = BigRational::zero();
            for i in 0..8 {
                let c = &self.coords[i];
                if c.is_zero() {
                    continue;
                }
                if c.is_positive() {
                    sum_lo += c * &lo[i];
                    sum_hi += c * &hi[i];
                } else {
                    sum_lo += c * &hi[i];
                    sum_hi += c * &lo[i];
                }
            }
            if sum_lo.is_positive() {
                return 1;
            }
            if sum_hi.is_negative() {
                return -1;
            }
            for i in 1..8 {
                let mid = (&lo[i] + &hi[i]) / BigRational::from(BigInt::from(2));
                let d = BigRational::from(BigInt::from(RADICANDS[i]));
                if &mid * &mid >= d {
                    hi[i] = mid;
                } else {
                    lo[i] = mid;
                }
            }
        }
    }
}

fn isqrt_floor(d: i64) -> i64 {
    let mut r = 0;
    while (r + 1) * (r + 1) <= d {
        r += 1;
    }
    r
}

macro_rules! forward_quad_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                self.$imp(rhs)
            }
        }
        impl $trait for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$imp(&rhs)
            }
        }
    };
}

forward_quad_binop!(Add, add, add_ref);
forward_quad_binop!(Sub, sub, sub_ref);
forward_quad_binop!(Mul, mul, mul_ref);

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        self.neg_ref()
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        self.neg_ref()
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "sqrt{}", RADICANDS[i])?;
            } else {
                write!(f, "{mag} sqrt{}", RADICANDS[i])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(d: i64) -> QuadScalar {
        QuadScalar::root_term(1, 1, d)
    }

    #[test]
    fn radical_closure() {
        // sqrt6 * sqrt10 = 2 sqrt15
        let p = sqrt(6) * sqrt(10);
        assert_eq!(p, QuadScalar::root_term(2, 1, 15));
        // sqrt2 * sqrt3 = sqrt6, so sqrt6 - sqrt2*sqrt3 = 0
        assert!((sqrt(6) - sqrt(2) * sqrt(3)).is_zero());
        // sqrt30^2 = 30
        assert_eq!(sqrt(30) * sqrt(30), QuadScalar::from_integer(30));
    }

    #[test]
    fn signs_from_interval_oracle() {
        // sqrt2 - 1 > 0, since sqrt2 is in (1.41, 1.42)
        let x = sqrt(2) - QuadScalar::one();
        assert_eq!(x.sign(), 1);
        // 1 - 2cos(pi/5) = 1 - (1 + sqrt5)/2 < 0
        let y = QuadScalar::one() - QuadScalar::two_cos_pi_over(Some(5)).unwrap();
        assert_eq!(y.sign(), -1);
        assert_eq!((sqrt(6) - sqrt(2) * sqrt(3)).sign(), 0);
    }

    #[test]
    fn sign_total_and_multiplicative() {
        let samples = [
            QuadScalar::zero(),
            QuadScalar::one(),
            -QuadScalar::from_rational(3, 7),
            sqrt(2) - QuadScalar::from_rational(3, 2),
            sqrt(3) - sqrt(2),
            QuadScalar::two_cos_pi_over(Some(5)).unwrap() - QuadScalar::from_rational(8, 5),
            sqrt(30) - sqrt(5) * sqrt(6),
            sqrt(15) - QuadScalar::from_integer(4),
        ];
        for a in &samples {
            for b in &samples {
                let lhs = (a * b).sign();
                let rhs = a.sign() * b.sign();
                assert_eq!(lhs, rhs, "sign multiplicativity on {a} and {b}");
            }
            assert_eq!(a.sign() == 0, a.is_zero());
        }
    }

    #[test]
    fn conjugate_norm_zero_test_agrees() {
        // Galois conjugates flip the signs of sqrt2, sqrt3, sqrt5; the norm
        // (the product over all eight sign patterns) is rational and vanishes
        // exactly on zero. Used here as an independent oracle for is_zero.
        fn conjugate(x: &QuadScalar, flip2: bool, flip3: bool, flip5: bool) -> QuadScalar {
            let mut out = x.clone();
            for (i, &d) in RADICANDS.iter().enumerate() {
                let mut s = 1i64;
                if flip2 && d % 2 == 0 {
                    s = -s;
                }
                if flip3 && d % 3 == 0 {
                    s = -s;
                }
                if flip5 && d % 5 == 0 {
                    s = -s;
                }
                if s < 0 {
                    out.coords[i] = -out.coords[i].clone();
                }
            }
            out
        }
        let samples = [
            QuadScalar::zero(),
            sqrt(6) - sqrt(2) * sqrt(3),
            sqrt(2) - QuadScalar::one(),
            sqrt(30) - sqrt(6) * sqrt(5),
            sqrt(15) - sqrt(3) * sqrt(5) + sqrt(2),
        ];
        for x in &samples {
            let mut norm = QuadScalar::one();
            for mask in 0..8u8 {
                norm = norm * conjugate(x, mask & 1 != 0, mask & 2 != 0, mask & 4 != 0);
            }
            assert!(norm.is_rational(), "norm of {x} must be rational");
            assert_eq!(norm.is_zero(), x.is_zero(), "norm zero iff element zero: {x}");
        }
    }
}
