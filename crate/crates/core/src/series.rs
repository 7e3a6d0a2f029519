//! Truncated formal power series `c_0 + c_1 s + ... + c_m s^m  (mod s^(m+1))`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A power series known up to and including `s^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T = f64> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// `coeffs[j]` is the coefficient of `s^j`; the order is `len - 1`.
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::SeriesTooShort { need: 0, have: 0 });
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: alloc::vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// The constant series `c`.
    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `s^j`, zero past the truncation.
    pub fn coeff(&self, j: usize) -> T {
        self.coeffs.get(j).cloned().unwrap_or_else(T::zero)
    }

    /// Drops (or zero-pads) to the given order.
    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: (0..=order).map(|j| self.coeff(j)).collect(),
        }
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.common_order(other);
        Self {
            coeffs: (0..=m)
                .map(|j| self.coeffs[j].clone() + other.coeffs[j].clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.common_order(other);
        Self {
            coeffs: (0..=m)
                .map(|j| self.coeffs[j].clone() - other.coeffs[j].clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        }
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.common_order(other);
        let coeffs = (0..=m)
            .map(|j| {
                (0..=j).fold(T::zero(), |acc, i| {
                    acc + self.coeffs[i].clone() * other.coeffs[j - i].clone()
                })
            })
            .collect();
        Self { coeffs }
    }

    /// `1 / f`; needs `c_0 != 0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::SeriesConstant {
                op: "reciprocal",
                expected: "non-zero",
            });
        }
        let m = self.order();
        let mut inv: Vec<T> = Vec::with_capacity(m + 1);
        inv.push(T::one() / c0.clone());
        for j in 1..=m {
            let acc = (1..=j).fold(T::zero(), |acc, i| {
                acc + self.coeffs[i].clone() * inv[j - i].clone()
            });
            inv.push(-acc / c0.clone());
        }
        Ok(Self { coeffs: inv })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// `f'`, one order lower.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c.clone() * T::from_usize(i + 1))
            .collect();
        Self { coeffs }
    }

    /// Antiderivative with zero constant term, one order higher.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() / T::from_usize(i + 1)),
        );
        Self { coeffs }
    }

    /// `f(c s)`.
    pub fn rescale(&self, c: &T) -> Self {
        let mut pow = T::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| {
                let out = x.clone() * pow.clone();
                pow = pow.clone() * c.clone();
                out
            })
            .collect();
        Self { coeffs }
    }

    /// `exp(f)` for `c_0 = 0`, via `g' = f' g`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesConstant {
                op: "exp",
                expected: "zero",
            });
        }
        let m = self.order();
        let mut g: Vec<T> = Vec::with_capacity(m + 1);
        g.push(T::one());
        for j in 1..=m {
            // j g_j = sum_{i=1}^{j} i f_i g_{j-i}
            let acc = (1..=j).fold(T::zero(), |acc, i| {
                acc + T::from_usize(i) * self.coeffs[i].clone() * g[j - i].clone()
            });
            g.push(acc / T::from_usize(j));
        }
        Ok(Self { coeffs: g })
    }

    /// `log(f)` for `c_0 = 1`, via `(log f)' = f'/f`.
    pub fn ln(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SeriesConstant {
                op: "log",
                expected: "one",
            });
        }
        let m = self.order();
        if m == 0 {
            return Ok(Self::zero(0));
        }
        let quotient = self.derivative().mul(&self.truncate(m - 1).reciprocal()?);
        Ok(quotient.integral())
    }

    /// `-f'/f`, one order lower.
    pub fn neg_log_derivative(&self) -> Result<Self> {
        let m = self.order();
        if m == 0 {
            return Err(Error::SeriesTooShort { need: 1, have: 0 });
        }
        Ok(self
            .derivative()
            .mul(&self.truncate(m - 1).reciprocal()?)
            .neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio, Rational};
    use alloc::vec;

    fn series(c: &[i64]) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(c.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn reciprocal_of_one_minus_s() {
        let inv = series(&[1, -1, 0, 0, 0]).reciprocal().unwrap();
        assert_eq!(inv, series(&[1, 1, 1, 1, 1]));
        assert!(series(&[0, 1]).reciprocal().is_err());
    }

    #[test]
    fn exp_and_log_are_inverse() {
        let f = TruncatedSeries::new(vec![
            rat(0),
            ratio(1, 2),
            rat(-3),
            ratio(2, 7),
            rat(5),
            rat(1),
        ])
        .unwrap();
        let e = f.exp().unwrap();
        assert_eq!(e.ln().unwrap(), f);
        // exp(s) = sum s^j / j!
        let ex = series(&[0, 1, 0, 0, 0]).exp().unwrap();
        assert_eq!(
            ex.coeffs(),
            &[rat(1), rat(1), ratio(1, 2), ratio(1, 6), ratio(1, 24)]
        );
        assert!(series(&[1, 1]).exp().is_err());
        assert!(series(&[2, 1]).ln().is_err());
    }

    #[test]
    fn neg_log_derivative_of_exponential_is_constant() {
        // e^{-a s}
        let a = rat(3);
        let f = TruncatedSeries::new(vec![rat(0), -a.clone(), rat(0), rat(0), rat(0)])
            .unwrap()
            .exp()
            .unwrap();
        assert_eq!(
            f.neg_log_derivative().unwrap(),
            TruncatedSeries::constant(a, 3)
        );
    }

    #[test]
    fn products_truncate_to_common_order() {
        let p = series(&[1, 2, 3]).mul(&series(&[1, 1]));
        assert_eq!(p, series(&[1, 3]));
        assert_eq!(series(&[1, 2, 3]).rescale(&rat(2)), series(&[1, 4, 12]));
        assert_eq!(
            series(&[5, 2, 3]).derivative().integral(),
            series(&[0, 2, 3])
        );
    }
}
