//! The coefficient interface shared by the two reflection-representation
//! backends: plain integers (crystallographic K) and [`QuadScalar`]
//! (symmetric `2 cos` K).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use crate::quad::QuadScalar;

/// Exact commutative ring with a total, exact sign.
pub trait Scalar: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// -1, 0 or +1, exactly.
    fn sign(&self) -> i8;
    fn from_int(n: i64) -> Self;
    /// Exact `4 cos^2(pi/m)` when this ring contains it.
    fn four_cos_squared(m: u32) -> Option<Self>;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("integer overflow in scalar arithmetic")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(*other).expect("integer overflow in scalar arithmetic")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("integer overflow in scalar arithmetic")
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn sign(&self) -> i8 {
        match self.cmp(&0) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }
    fn from_int(n: i64) -> Self {
        n
    }
    fn four_cos_squared(m: u32) -> Option<Self> {
        match m {
            2 => Some(0),
            3 => Some(1),
            4 => Some(2),
            6 => Some(3),
            _ => None,
        }
    }
}

impl Scalar for QuadScalar {
    fn zero() -> Self {
        QuadScalar::zero()
    }
    fn one() -> Self {
        QuadScalar::one()
    }
    fn is_zero(&self) -> bool {
        QuadScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn sign(&self) -> i8 {
        QuadScalar::sign(self)
    }
    fn from_int(n: i64) -> Self {
        QuadScalar::from_integer(n)
    }
    fn four_cos_squared(m: u32) -> Option<Self> {
        let c = QuadScalar::two_cos_pi_over(Some(m))?;
        Some(c.mul_ref(&c))
    }
}
