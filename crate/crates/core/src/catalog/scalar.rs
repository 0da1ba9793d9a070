//! Minimal field abstraction shared by the exact-rational and
//! complex-double interpreters of catalog expressions.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// The operations catalog expressions need from a scalar type.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    /// Additive identity.
    fn zero() -> Self;
    /// Multiplicative identity.
    fn one() -> Self;
    /// Embeds a small integer.
    fn from_i64(n: i64) -> Self;
    /// Sum.
    fn add(&self, other: &Self) -> Self;
    /// Difference.
    fn sub(&self, other: &Self) -> Self;
    /// Product.
    fn mul(&self, other: &Self) -> Self;
    /// Quotient; only called on denominators the pole preflight admitted.
    fn div(&self, other: &Self) -> Self;
    /// Negation.
    fn neg(&self) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::ZERO
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}
