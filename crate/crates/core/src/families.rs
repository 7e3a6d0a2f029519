//! Probabilists' Hermite polynomials, generalized Laguerre polynomials in
//! monic form, and Appell polynomials `f(d/dx) x^l`.
//!
//! Coefficients come straight from the closed-form sums in exact integer or
//! rational arithmetic; three-term recurrences only appear in the tests.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::BigInt;
use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::partitions::factorial;
use crate::poly::Polynomial;
use crate::scalar::{Rational, Scalar};
use crate::series::TruncatedSeries;
use crate::transforms::series_apply;

/// Coefficients of `He_k`, highest degree first:
/// `He_k = sum_j k! (-1)^j / (j! (k-2j)!) x^(k-2j) / 2^j`.
pub fn hermite_coefficients<T: Scalar>(k: usize) -> Vec<T> {
    let mut coeffs = alloc::vec![T::zero(); k + 1];
    let kf = factorial(k as u64);
    for j in 0..=k / 2 {
        let den = factorial(j as u64) * factorial((k - 2 * j) as u64) * (BigInt::from(1) << j);
        let v = Rational::new(kf.clone(), den);
        coeffs[2 * j] = T::from_rational(&if j % 2 == 1 { -v } else { v });
    }
    coeffs
}

/// `He_k` as a monic polynomial.
pub fn hermite<T: Scalar>(k: usize) -> Result<Polynomial<T>> {
    if k == 0 {
        return Err(Error::EmptyRoots);
    }
    Polynomial::from_coefficients(&hermite_coefficients::<T>(k))
}

const ROOT_CACHE: usize = 32;
static HERMITE_ROOTS: [OnceBox<Vec<f64>>; ROOT_CACHE + 1] =
    [const { OnceBox::new() }; ROOT_CACHE + 1];

fn solve_hermite(l: usize) -> Result<Vec<f64>> {
    crate::poly::real_roots_sorted(&hermite_coefficients::<f64>(l))
}

/// Roots `z_{1,l} > ... > z_{l,l}` of `He_l`, cached for `l <= 32`.
pub fn hermite_roots(l: usize) -> Result<Vec<f64>> {
    if l == 0 {
        return Err(Error::EmptyRoots);
    }
    if l > ROOT_CACHE {
        return solve_hermite(l);
    }
    HERMITE_ROOTS[l]
        .get_or_try_init(|| solve_hermite(l).map(Box::new))
        .map(|v| v.to_vec())
}

/// Generalized binomial `binom(x, m) = x (x-1) ... (x-m+1) / m!`.
fn binom_real<T: Scalar>(x: &T, m: usize) -> T {
    let mut acc = T::one();
    for t in 0..m {
        acc = acc * (x.clone() - T::from_usize(t));
    }
    acc / T::from_bigint(&factorial(m as u64))
}

/// Coefficients of `n! (-1)^n L_n^(alpha)`, highest degree first, from
/// `L_n^(alpha)(x) = sum_i (-1)^i binom(n+alpha, n-i) x^i / i!`.
pub fn laguerre_coefficients<T: Scalar>(n: usize, alpha: &T) -> Vec<T> {
    let top = T::from_usize(n) + alpha.clone();
    let nf = T::from_bigint(&factorial(n as u64));
    (0..=n)
        .rev()
        .map(|i| {
            let v = nf.clone() * binom_real(&top, n - i) / T::from_bigint(&factorial(i as u64));
            if (n + i) % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// The monic Laguerre polynomial `n! (-1)^n L_n^(alpha)`.
pub fn laguerre<T: Scalar>(n: usize, alpha: T) -> Result<Polynomial<T>> {
    if n == 0 {
        return Err(Error::EmptyRoots);
    }
    if !alpha.is_finite_value() {
        return Err(Error::NonFinite("laguerre parameter"));
    }
    Polynomial::from_coefficients(&laguerre_coefficients(n, &alpha))
}

/// The Appell polynomial `f(d/dx) x^l`.
pub fn appell_from_series<T: Scalar>(f: &TruncatedSeries<T>, l: usize) -> Result<Polynomial<T>> {
    series_apply(f, l)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum FamilyKind {
    Hermite,
    Laguerre { alpha: f64 },
    Appell { series: Vec<f64> },
}

/// A member of one of the supported families.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilySpec {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub kind: FamilyKind,
    pub degree: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyRoots);
        }
        if let FamilyKind::Appell { series } = &kind {
            if series.len() <= degree {
                return Err(Error::SeriesTooShort {
                    need: degree,
                    have: series.len().saturating_sub(1),
                });
            }
        }
        Ok(Self { kind, degree })
    }

    pub fn polynomial(&self) -> Result<Polynomial<f64>> {
        match &self.kind {
            FamilyKind::Hermite => hermite(self.degree),
            FamilyKind::Laguerre { alpha } => laguerre(self.degree, *alpha),
            FamilyKind::Appell { series } => {
                appell_from_series(&TruncatedSeries::new(series.clone())?, self.degree)
            }
        }
    }
}
