//! Finite free cumulants, the finite R-transform and finite free additive
//! convolution.
//!
//! Each transform has two independent routes so the identity tests can check
//! one against the other:
//!
//! * coefficients <-> cumulants through the set-partition sum
//!   (memoized by block type, or streamed over every partition), and through
//!   the finite R-transform `-P'(Ns)/P(Ns)`;
//! * convolution through the explicit coefficient formula, and through the
//!   product of the differential-operator series `P(d/dx) Q(d/dx) x^N`.
//!
//! All routines are generic over [`Scalar`]; partition weights are exact big
//! integers and are converted to `T` once per term.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::partitions::{self, factorial, falling_factorial, BlockType, SetPartition};
use crate::poly::{MomentVector, Polynomial};
use crate::scalar::{Rational, Scalar};
use crate::series::TruncatedSeries;

/// Highest cumulant order handled through partition sums.
pub const MAX_CUMULANT_ORDER: usize = partitions::MAX_PARTITION_SIZE;

/// Finite free cumulants `kappa_1^N..kappa_l^N` of a degree-`N` polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantVector<T = f64> {
    pub degree: usize,
    pub values: Vec<T>,
}

impl<T: Scalar> CumulantVector<T> {
    pub fn new(degree: usize, values: Vec<T>) -> Result<Self> {
        if values.is_empty() || values.len() > degree {
            return Err(Error::OrderOutOfRange {
                order: values.len(),
                max: degree,
            });
        }
        Ok(Self { degree, values })
    }

    /// `kappa_j`, 1-based.
    pub fn get(&self, j: usize) -> &T {
        &self.values[j - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `(N)_k / (N^k k!)`.
fn coefficient_scale(n: usize, k: usize) -> Rational {
    let num = falling_factorial(n as u64, k as u64).unwrap_or_default();
    let den: BigInt = Pow::pow(BigInt::from(n), k as u32) * factorial(k as u64);
    Rational::new(num, den)
}

fn kappa_product<T: Scalar>(kappa: &[T], sizes: &[u8]) -> T {
    sizes
        .iter()
        .fold(T::one(), |acc, &s| acc * kappa[s as usize - 1].clone())
}

fn type_coefficient<T: Scalar>(t: &BlockType, scale: &Rational, n: usize, k: usize) -> T {
    T::from_rational(&(scale.clone() * Rational::from_integer(t.weight(n as u64, k))))
}

fn check_order(k: usize, available: usize, degree: usize) -> Result<()> {
    if k == 0 || k > MAX_CUMULANT_ORDER || k > degree {
        return Err(Error::OrderOutOfRange {
            order: k,
            max: MAX_CUMULANT_ORDER.min(degree),
        });
    }
    if k > available {
        return Err(Error::PrefixTooShort {
            needed: k,
            available,
        });
    }
    Ok(())
}

/// `a_1..a_k` from `kappa_1^N..kappa_k^N`:
/// `a_j = (N)_j/(N^j j!) sum_{pi in P(j)} (-1)^(j-|pi|) N^|pi| prod (|V|-1)! kappa_pi`.
pub fn cumulants_to_coeffs<T: Scalar>(kappa: &CumulantVector<T>, k: usize) -> Result<Vec<T>> {
    check_order(k, kappa.len(), kappa.degree)?;
    let n = kappa.degree;
    (1..=k)
        .map(|j| {
            let scale = coefficient_scale(n, j);
            let sum = partitions::block_types(j)?
                .iter()
                .fold(T::zero(), |acc, t| {
                    acc + type_coefficient::<T>(t, &scale, n, j)
                        * kappa_product(&kappa.values, &t.sizes)
                });
            Ok(sum)
        })
        .collect()
}

/// Same map as [`cumulants_to_coeffs`], summing over every partition
/// individually instead of the memoized block-type table.
pub fn cumulants_to_coeffs_by_enumeration<T: Scalar>(
    kappa: &CumulantVector<T>,
    k: usize,
) -> Result<Vec<T>> {
    check_order(k, kappa.len(), kappa.degree)?;
    let n = kappa.degree;
    (1..=k)
        .map(|j| {
            let scale = coefficient_scale(n, j);
            let mut acc = T::zero();
            for pi in partitions::set_partitions(j)? {
                let w = partitions::partition_weight(&pi, n as u64, j)? * scale.clone();
                acc = acc + T::from_rational(&w) * kappa_product(&kappa.values, &pi.block_sizes());
            }
            Ok(acc)
        })
        .collect()
}

/// Inverts the partition sum order by order; the `1_j` term carries
/// `kappa_j` with the non-zero weight `(-1)^(j-1) N (j-1)!`.
pub fn coeffs_to_cumulants<T: Scalar>(prefix: &[T], degree: usize) -> Result<CumulantVector<T>> {
    let k = prefix.len();
    check_order(k, k, degree)?;
    let mut kappa: Vec<T> = Vec::with_capacity(k);
    for j in 1..=k {
        let scale = coefficient_scale(degree, j);
        let one_block = SetPartition::one_block(j);
        let lead = T::from_rational(
            &(scale.clone() * partitions::partition_weight(&one_block, degree as u64, j)?),
        );
        let mut rest = T::zero();
        for t in partitions::block_types(j)? {
            if t.block_count() == 1 {
                continue;
            }
            rest = rest
                + type_coefficient::<T>(t, &scale, degree, j) * kappa_product(&kappa, &t.sizes);
        }
        kappa.push((prefix[j - 1].clone() - rest) / lead);
    }
    CumulantVector::new(degree, kappa)
}

/// `kappa_1^N..kappa_l^N` of `p` through the partition inversion.
pub fn finite_free_cumulants<T: Scalar>(p: &Polynomial<T>, l: usize) -> Result<CumulantVector<T>> {
    coeffs_to_cumulants(&p.top_coefficients(l)?, p.degree())
}

/// The series `P` with `P(d/dx) x^N = p`: `P_j = (-1)^j a_j / (N)_j`.
pub fn fourier_series_of<T: Scalar>(p: &Polynomial<T>, order: usize) -> Result<TruncatedSeries<T>> {
    let n = p.degree();
    if order > n {
        return Err(Error::OrderOutOfRange { order, max: n });
    }
    let a = p.top_coefficients(order)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(T::one());
    for (i, aj) in a.into_iter().enumerate() {
        let j = i + 1;
        let ff = T::from_bigint(&falling_factorial(n as u64, j as u64)?);
        let v = aj / ff;
        coeffs.push(if j % 2 == 1 { -v } else { v });
    }
    TruncatedSeries::new(coeffs)
}

/// Finite R-transform `-P'(Ns)/P(Ns)` truncated to `s^(order-1)`; its
/// coefficient of `s^(j-1)` is `kappa_j^N`.
pub fn finite_r_transform_to<T: Scalar>(
    p: &Polynomial<T>,
    order: usize,
) -> Result<TruncatedSeries<T>> {
    if order == 0 {
        return Err(Error::OrderOutOfRange {
            order,
            max: p.degree(),
        });
    }
    let big_p = fourier_series_of(p, order)?;
    Ok(big_p
        .neg_log_derivative()?
        .rescale(&T::from_usize(p.degree())))
}

/// Finite R-transform using every available coefficient (`mod s^N` when the
/// polynomial is fully known).
pub fn finite_r_transform<T: Scalar>(p: &Polynomial<T>) -> Result<TruncatedSeries<T>> {
    finite_r_transform_to(p, p.available_order())
}

/// Cumulants read off the finite R-transform.
pub fn cumulants_via_r_transform<T: Scalar>(
    p: &Polynomial<T>,
    l: usize,
) -> Result<CumulantVector<T>> {
    let r = finite_r_transform_to(p, l)?;
    CumulantVector::new(p.degree(), r.into_coeffs())
}

/// `f(d/dx) x^l`: the coefficient of `x^(l-j)` is `f_j (l)_j`.
pub fn series_apply<T: Scalar>(f: &TruncatedSeries<T>, l: usize) -> Result<Polynomial<T>> {
    if f.order() < l {
        return Err(Error::SeriesTooShort {
            need: l,
            have: f.order(),
        });
    }
    if !f.coeff(0).is_one() {
        return Err(Error::SeriesConstant {
            op: "series_apply",
            expected: "one",
        });
    }
    if l == 0 {
        return Err(Error::OrderOutOfRange { order: 0, max: 0 });
    }
    let prefix = (1..=l)
        .map(|j| {
            let v = f.coeff(j) * T::from_bigint(&falling_factorial(l as u64, j as u64)?);
            Ok(if j % 2 == 1 { -v } else { v })
        })
        .collect::<Result<Vec<T>>>()?;
    Polynomial::from_prefix(l, prefix)
}

/// `c_1..c_k` of `p boxplus_N q` from prefixes `a`, `b` (length `>= k`):
/// `c_k = sum_{i+j=k} (N-i)!(N-j)!/(N!(N-k)!) a_i b_j`.
pub fn finite_free_convolve_prefix<T: Scalar>(
    a: &[T],
    b: &[T],
    degree: usize,
    k: usize,
) -> Result<Vec<T>> {
    if k > degree {
        return Err(Error::OrderOutOfRange {
            order: k,
            max: degree,
        });
    }
    let available = a.len().min(b.len());
    if available < k {
        return Err(Error::PrefixTooShort {
            needed: k,
            available,
        });
    }
    let at = |v: &[T], i: usize| if i == 0 { T::one() } else { v[i - 1].clone() };
    (1..=k)
        .map(|m| {
            let mut acc = T::zero();
            for i in 0..=m {
                let j = m - i;
                // (N-i)!(N-j)!/(N!(N-m)!) = (N-j)_i / (N)_i
                let w = Rational::new(
                    falling_factorial((degree - j) as u64, i as u64)?,
                    falling_factorial(degree as u64, i as u64)?,
                );
                acc = acc + T::from_rational(&w) * at(a, i) * at(b, j);
            }
            Ok(acc)
        })
        .collect()
}

/// `p boxplus_N q` by the coefficient formula.
pub fn finite_free_convolve<T: Scalar>(
    p: &Polynomial<T>,
    q: &Polynomial<T>,
) -> Result<Polynomial<T>> {
    let n = p.degree();
    if q.degree() != n {
        return Err(Error::DegreeMismatch(n, q.degree()));
    }
    let c = finite_free_convolve_prefix(&p.top_coefficients(n)?, &q.top_coefficients(n)?, n, n)?;
    Polynomial::from_prefix(n, c)
}

/// `p boxplus_N q` as `P(d/dx) Q(d/dx) x^N`.
pub fn finite_free_convolve_via_series<T: Scalar>(
    p: &Polynomial<T>,
    q: &Polynomial<T>,
) -> Result<Polynomial<T>> {
    let n = p.degree();
    if q.degree() != n {
        return Err(Error::DegreeMismatch(n, q.degree()));
    }
    let f = fourier_series_of(p, n)?.mul(&fourier_series_of(q, n)?);
    series_apply(&f, n)
}

/// Free cumulants from moments by the non-crossing recursion
/// `kappa_j = m_j - sum_{sigma in NC(j), sigma != 1_j} kappa_sigma`.
pub fn free_cumulants_from_moments<T: Scalar>(m: &MomentVector<T>) -> Result<Vec<T>> {
    let l = m.len();
    if l > MAX_CUMULANT_ORDER {
        return Err(Error::OrderOutOfRange {
            order: l,
            max: MAX_CUMULANT_ORDER,
        });
    }
    let mut kappa: Vec<T> = Vec::with_capacity(l);
    for j in 1..=l {
        let mut rest = T::zero();
        for t in partitions::noncrossing_block_types(j)? {
            if t.block_count() == 1 {
                continue;
            }
            rest = rest + T::from_usize(t.count as usize) * kappa_product(&kappa, &t.sizes);
        }
        kappa.push(m.get(j).clone() - rest);
    }
    Ok(kappa)
}

/// Cumulants of `d_{k|N} p` from those of `p`:
/// `kappa_j^k = (k/N)^(j-1) kappa_j^N`, truncated to `min(k, len)` entries.
pub fn derivative_cumulant_map<T: Scalar>(
    kappa: &CumulantVector<T>,
    k: usize,
) -> Result<CumulantVector<T>> {
    if k == 0 || k > kappa.degree {
        return Err(Error::OrderOutOfRange {
            order: k,
            max: kappa.degree,
        });
    }
    let ratio = T::from_rational(&Rational::new(BigInt::from(k), BigInt::from(kappa.degree)));
    let len = k.min(kappa.len());
    let values = kappa.values[..len]
        .iter()
        .enumerate()
        .map(|(i, v)| v.clone() * ratio.powi(i as u32))
        .collect();
    CumulantVector::new(k, values)
}
