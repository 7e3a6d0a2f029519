//! Monic real-rooted polynomials in root and coefficient form.
//!
//! Coefficients use the signed convention
//! `p(x) = x^N + sum_j (-1)^j a_j x^(N-j)`, so `a_j` is the `j`-th elementary
//! symmetric function of the roots. A [`Polynomial`] may carry only the
//! leading prefix `a_1..a_k`; every operation here that only depends on that
//! prefix works without the lower coefficients.

pub mod newton;
pub mod roots;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

pub use roots::real_roots_sorted;

/// A monic polynomial of ambient degree `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T = f64> {
    degree: usize,
    roots: Option<Vec<T>>,
    prefix: Option<Vec<T>>,
}

/// Moments `m_1..m_l` of the empirical root measure of a degree-`N` polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector<T = f64> {
    pub degree: usize,
    pub values: Vec<T>,
}

impl<T: Scalar> MomentVector<T> {
    pub fn new(degree: usize, values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::OrderOutOfRange {
                order: 0,
                max: degree,
            });
        }
        Ok(Self { degree, values })
    }

    /// `m_j`, 1-based.
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

/// Exact binomial coefficient lifted into `T`.
pub(crate) fn binom<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    T::from_bigint(&binomial(BigInt::from(n), BigInt::from(k)))
}

fn sort_weyl<T: Scalar>(roots: &mut [T]) {
    // stable, non-increasing; ties keep their input order
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
}

impl<T: Scalar> Polynomial<T> {
    /// `prod_j (x - r_j)`, roots stored in the Weyl chamber (non-increasing).
    pub fn from_roots(mut roots: Vec<T>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::EmptyRoots);
        }
        if roots.iter().any(|r| !r.is_finite_value()) {
            return Err(Error::NonFinite("roots"));
        }
        sort_weyl(&mut roots);
        Ok(Self {
            degree: roots.len(),
            roots: Some(roots),
            prefix: None,
        })
    }

    /// Polynomial known only through `a_1..a_k`, `k <= degree`.
    pub fn from_prefix(degree: usize, prefix: Vec<T>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyRoots);
        }
        if prefix.len() > degree {
            return Err(Error::OrderOutOfRange {
                order: prefix.len(),
                max: degree,
            });
        }
        if prefix.iter().any(|c| !c.is_finite_value()) {
            return Err(Error::NonFinite("coefficients"));
        }
        Ok(Self {
            degree,
            roots: None,
            prefix: Some(prefix),
        })
    }

    /// Parses the exchange form: plain coefficients, highest degree first,
    /// with the leading `1` included.
    pub fn from_coefficients(coeffs: &[T]) -> Result<Self> {
        let (lead, rest) = coeffs.split_first().ok_or(Error::EmptyRoots)?;
        if !lead.is_one() {
            return Err(Error::NotMonic(alloc::format!("{lead:?}")));
        }
        let prefix = rest
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { -c.clone() } else { c.clone() })
            .collect();
        Self::from_prefix(rest.len(), prefix)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Roots in non-increasing order, when stored.
    pub fn roots(&self) -> Option<&[T]> {
        self.roots.as_deref()
    }

    /// The stored coefficient prefix `a_1..a_k`, if any.
    pub fn prefix(&self) -> Option<&[T]> {
        self.prefix.as_deref()
    }

    /// Length of the coefficient prefix that can be produced.
    pub fn available_order(&self) -> usize {
        match (&self.roots, &self.prefix) {
            (Some(_), _) => self.degree,
            (None, Some(p)) => p.len(),
            (None, None) => 0,
        }
    }

    /// `a_1..a_k`. From roots this goes through `k` power sums.
    pub fn top_coefficients(&self, k: usize) -> Result<Vec<T>> {
        if k > self.degree {
            return Err(Error::OrderOutOfRange {
                order: k,
                max: self.degree,
            });
        }
        if let Some(prefix) = &self.prefix {
            if prefix.len() >= k {
                return Ok(prefix[..k].to_vec());
            }
        }
        match &self.roots {
            Some(roots) => {
                let sums = newton::power_sums_from_roots(roots, k);
                Ok(newton::elementary_from_power_sums(&sums))
            }
            None => Err(Error::PrefixTooShort {
                needed: k,
                available: self.available_order(),
            }),
        }
    }

    /// Full coefficient list, highest degree first, leading 1 included.
    ///
    /// From roots this multiplies out the linear factors, which is exact for
    /// integer roots of moderate size.
    pub fn coefficients(&self) -> Result<Vec<T>> {
        let prefix = match (&self.prefix, &self.roots) {
            (Some(p), _) if p.len() == self.degree => p.clone(),
            (_, Some(roots)) => expand_elementary(roots),
            _ => {
                return Err(Error::PrefixTooShort {
                    needed: self.degree,
                    available: self.available_order(),
                })
            }
        };
        Ok(signed_coefficients(&prefix))
    }

    /// `m_1..m_l` of the empirical root measure.
    pub fn moments(&self, l: usize) -> Result<MomentVector<T>> {
        if l == 0 || l > self.degree {
            return Err(Error::OrderOutOfRange {
                order: l,
                max: self.degree,
            });
        }
        let n = T::from_usize(self.degree);
        let sums = match &self.roots {
            Some(roots) => newton::power_sums_from_roots(roots, l),
            None => newton::power_sums_from_elementary(&self.top_coefficients(l)?),
        };
        MomentVector::new(
            self.degree,
            sums.into_iter().map(|s| s / n.clone()).collect(),
        )
    }

    /// `D_a p`: every root multiplied by `a > 0`.
    pub fn dilate(&self, a: T) -> Result<Self> {
        if a.partial_cmp(&T::zero()) != Some(core::cmp::Ordering::Greater) {
            return Err(Error::NonPositiveDilation);
        }
        let roots = self
            .roots
            .as_ref()
            .map(|r| r.iter().map(|x| x.clone() * a.clone()).collect());
        let prefix = self.prefix.as_ref().map(|p| {
            let mut pow = T::one();
            p.iter()
                .map(|c| {
                    pow = pow.clone() * a.clone();
                    c.clone() * pow.clone()
                })
                .collect()
        });
        Ok(Self {
            degree: self.degree,
            roots,
            prefix,
        })
    }

    /// Every root moved by `+c`, i.e. `x -> p(x - c)`.
    pub fn shift_roots(&self, c: T) -> Self {
        let roots = self
            .roots
            .as_ref()
            .map(|r| r.iter().map(|x| x.clone() + c.clone()).collect());
        let prefix = self.prefix.as_ref().map(|p| {
            // e'_j = sum_{i<=j} C(N-i, j-i) c^(j-i) e_i
            let mut shifted = Vec::with_capacity(p.len());
            for j in 1..=p.len() {
                let mut acc = binom::<T>(self.degree, j) * c.powi(j as u32);
                for i in 1..=j {
                    acc = acc
                        + binom::<T>(self.degree - i, j - i)
                            * c.powi((j - i) as u32)
                            * p[i - 1].clone();
                }
                shifted.push(acc);
            }
            shifted
        });
        Self {
            degree: self.degree,
            roots,
            prefix,
        }
    }

    /// `d_{k|N} p`: the `(N-k)`-th derivative rescaled to a monic degree-`k`
    /// polynomial. Reads only `a_1..a_k`.
    pub fn normalized_derivative(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.degree {
            return Err(Error::OrderOutOfRange {
                order: k,
                max: self.degree,
            });
        }
        let top = self.top_coefficients(k)?;
        let prefix = normalized_derivative_prefix(&top, self.degree, k);
        Self::from_prefix(k, prefix)
    }

    /// Value at `x`: product over roots, else Horner on the full coefficients.
    pub fn evaluate(&self, x: T) -> Result<T> {
        if let Some(roots) = &self.roots {
            return Ok(roots
                .iter()
                .fold(T::one(), |acc, r| acc * (x.clone() - r.clone())));
        }
        let coeffs = self.coefficients()?;
        Ok(horner(&coeffs, x))
    }
}

impl Polynomial<f64> {
    /// Roots in the Weyl chamber, solving from coefficients when needed.
    pub fn real_roots(&self) -> Result<Vec<f64>> {
        match &self.roots {
            Some(r) => Ok(r.clone()),
            None => real_roots_sorted(&self.coefficients()?),
        }
    }

    /// Exact-rational copy; fails on non-finite data.
    pub fn to_exact(&self) -> Result<Polynomial<Rational>> {
        let conv = |v: &Vec<f64>| -> Result<Vec<Rational>> {
            v.iter()
                .map(|x| Rational::from_float(*x).ok_or(Error::NonFinite("coefficients")))
                .collect()
        };
        Ok(Polynomial {
            degree: self.degree,
            roots: self.roots.as_ref().map(conv).transpose()?,
            prefix: self.prefix.as_ref().map(conv).transpose()?,
        })
    }
}

impl Polynomial<Rational> {
    /// Rounds every stored value to `f64`.
    pub fn to_f64(&self) -> Polynomial<f64> {
        let conv = |v: &Vec<Rational>| v.iter().map(Scalar::to_f64).collect();
        Polynomial {
            degree: self.degree,
            roots: self.roots.as_ref().map(conv),
            prefix: self.prefix.as_ref().map(conv),
        }
    }
}

/// `a_j binom(N-j, k-j) / binom(N, k)` for `j = 1..k`.
pub fn normalized_derivative_prefix<T: Scalar>(top: &[T], degree: usize, k: usize) -> Vec<T> {
    let denom = binomial(BigInt::from(degree), BigInt::from(k));
    top.iter()
        .take(k)
        .enumerate()
        .map(|(i, a)| {
            let j = i + 1;
            let num = binomial(BigInt::from(degree - j), BigInt::from(k - j));
            a.clone() * T::from_rational(&Rational::new(num, denom.clone()))
        })
        .collect()
}

/// `a_1..a_N` by multiplying out `prod (x - r)`.
fn expand_elementary<T: Scalar>(roots: &[T]) -> Vec<T> {
    // e[j] over the roots processed so far
    let mut e = alloc::vec![T::zero(); roots.len() + 1];
    e[0] = T::one();
    for (n, r) in roots.iter().enumerate() {
        for j in (1..=n + 1).rev() {
            e[j] = e[j].clone() + r.clone() * e[j - 1].clone();
        }
    }
    e.remove(0);
    e
}

/// Signed prefix `a_1..a_N` to plain coefficients, leading 1 first.
pub fn signed_coefficients<T: Scalar>(prefix: &[T]) -> Vec<T> {
    core::iter::once(T::one())
        .chain(
            prefix
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 0 { -a.clone() } else { a.clone() }),
        )
        .collect()
}

pub(crate) fn horner<T: Scalar>(coeffs: &[T], x: T) -> T {
    coeffs
        .iter()
        .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use alloc::vec;

    fn he4() -> Polynomial<Rational> {
        Polynomial::from_coefficients(&[rat(1), rat(0), rat(-6), rat(0), rat(3)]).unwrap()
    }

    #[test]
    fn from_roots_sorts_into_weyl_chamber() {
        let p = Polynomial::from_roots(vec![-1.0, 1.0]).unwrap();
        assert_eq!(p.roots().unwrap(), &[1.0, -1.0]);
        assert_eq!(p.degree(), 2);
        assert!(p.prefix().is_none());
        let z = Polynomial::from_roots(vec![0.0, 0.0, 0.0]).unwrap();
        assert_eq!(z.coefficients().unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            Polynomial::<f64>::from_roots(vec![]),
            Err(Error::EmptyRoots)
        );
    }

    #[test]
    fn expansion_of_one_two_three() {
        let p = Polynomial::from_roots(vec![rat(1), rat(2), rat(3)]).unwrap();
        assert_eq!(
            p.top_coefficients(3).unwrap(),
            vec![rat(6), rat(11), rat(6)]
        );
        assert_eq!(
            p.coefficients().unwrap(),
            vec![rat(1), rat(-6), rat(11), rat(-6)]
        );
        assert_eq!(p.evaluate(rat(0)).unwrap(), rat(-6));
    }

    #[test]
    fn top_coefficients_examples() {
        let p = Polynomial::from_roots(vec![rat(1), rat(-1)]).unwrap();
        assert_eq!(p.top_coefficients(2).unwrap(), vec![rat(0), rat(-1)]);

        let roots = vec![
            Rational::from_float(2.3344142183389773).unwrap(),
            Rational::from_float(0.7419637843027258).unwrap(),
            Rational::from_float(-0.7419637843027258).unwrap(),
            Rational::from_float(-2.3344142183389773).unwrap(),
        ];
        let he4_roots = Polynomial::from_roots(roots).unwrap().to_f64();
        let top = he4_roots.top_coefficients(2).unwrap();
        assert!(top[0].abs() < 1e-12 && (top[1] + 6.0).abs() < 1e-12);

        let a = ratio(5, 2);
        let same = Polynomial::from_roots(vec![a.clone(); 3]).unwrap();
        assert_eq!(
            same.top_coefficients(3).unwrap(),
            vec![
                rat(3) * a.clone(),
                rat(3) * a.clone() * a.clone(),
                a.clone() * a.clone() * a
            ]
        );
        assert!(matches!(
            same.top_coefficients(4),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn moments_from_roots_and_prefix() {
        let p = Polynomial::from_roots(vec![rat(1), rat(-1)]).unwrap();
        assert_eq!(p.moments(2).unwrap().values, vec![rat(0), rat(1)]);
        assert_eq!(*he4().moments(2).unwrap().get(2), rat(3));
        let z = Polynomial::from_roots(vec![rat(0); 4]).unwrap();
        assert!(z.moments(4).unwrap().values.iter().all(|m| *m == rat(0)));
        let short = Polynomial::from_prefix(5, vec![rat(1), rat(2)]).unwrap();
        assert!(matches!(
            short.moments(3),
            Err(Error::PrefixTooShort { .. })
        ));
    }

    #[test]
    fn dilation_and_shift() {
        let p = Polynomial::from_coefficients(&[rat(1), rat(0), rat(-1)]).unwrap();
        let d = p.dilate(rat(2)).unwrap();
        assert_eq!(d.coefficients().unwrap(), vec![rat(1), rat(0), rat(-4)]);
        assert_eq!(p.dilate(rat(1)).unwrap(), p);
        assert_eq!(p.dilate(rat(0)), Err(Error::NonPositiveDilation));
        let r = Polynomial::from_roots(vec![1.0, 0.5, -0.5, -1.0])
            .unwrap()
            .dilate(2.0)
            .unwrap();
        assert_eq!(r.roots().unwrap()[0], 2.0);

        let s = p.shift_roots(rat(1));
        assert_eq!(s.coefficients().unwrap(), vec![rat(1), rat(-2), rat(0)]);
        let cube = Polynomial::from_coefficients(&[rat(1), rat(0), rat(0), rat(0)]).unwrap();
        let c = ratio(3, 2);
        let expected = Polynomial::from_roots(vec![c.clone(); 3])
            .unwrap()
            .coefficients()
            .unwrap();
        assert_eq!(cube.shift_roots(c).coefficients().unwrap(), expected);

        let q = Polynomial::from_roots(vec![rat(4), rat(-1), rat(3)]).unwrap();
        let m1 = q.moments(1).unwrap().values[0].clone();
        assert_eq!(q.shift_roots(-m1).moments(1).unwrap().values[0], rat(0));
    }

    #[test]
    fn normalized_derivative_examples() {
        let he4 = he4();
        assert_eq!(
            he4.normalized_derivative(4)
                .unwrap()
                .coefficients()
                .unwrap(),
            he4.coefficients().unwrap()
        );
        let d2 = he4.normalized_derivative(2).unwrap();
        assert_eq!(d2.coefficients().unwrap(), vec![rat(1), rat(0), rat(-1)]);

        let p = Polynomial::from_roots(vec![rat(5), rat(1), rat(-2), rat(7)]).unwrap();
        let d1 = p.normalized_derivative(1).unwrap();
        let m1 = p.moments(1).unwrap().values[0].clone();
        assert_eq!(d1.coefficients().unwrap(), vec![rat(1), -m1]);
        assert!(matches!(
            p.normalized_derivative(0),
            Err(Error::OrderOutOfRange { .. })
        ));
        assert!(matches!(
            p.normalized_derivative(5),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let he2 = Polynomial::from_coefficients(&[1.0, 0.0, -1.0]).unwrap();
        assert_eq!(he2.evaluate(0.0).unwrap(), -1.0);
        let xn = Polynomial::from_coefficients(&[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(xn.evaluate(1.0).unwrap(), 1.0);
        let p = Polynomial::from_roots(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(p.evaluate(0.0).unwrap(), -6.0);
    }

    #[test]
    fn from_coefficients_requires_monic() {
        assert!(matches!(
            Polynomial::from_coefficients(&[2.0, 1.0]),
            Err(Error::NotMonic(_))
        ));
    }
}
