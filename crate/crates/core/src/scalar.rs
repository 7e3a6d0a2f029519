//! Numeric field abstraction shared by the exact and floating-point routes.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers backed by big integers.
pub type Rational = BigRational;

/// A field the polynomial transforms can run over.
///
/// `f64` is used by the Monte Carlo harness; [`Rational`] gives
/// cancellation-free identity checks.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// Converts an exact rational, rounding once at the end for `f64`.
    fn from_rational(v: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Non-negative integer power by repeated squaring.
    fn powi(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn from_rational(v: &Rational) -> Self {
        num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        num_traits::Float::abs(*self)
    }

    fn is_finite_value(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }

    fn from_rational(v: &Rational) -> Self {
        v.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
