//! Levy triples, Poisson point processes and the compensated-sum
//! realization of `Y`.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};

use super::DistSpec;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quad::integrate;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use crate::transforms::series_apply;

const QUAD_TOL: f64 = 1e-8;

/// One atom `weight * delta_at` of an atomic Levy measure.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct Atom {
    pub at: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)
)]
pub enum LevyMeasure {
    Atomic {
        atoms: Vec<Atom>,
    },
    /// Tails `nu(x > t) = scale * theta * t^-alpha`,
    /// `nu(x < -t) = scale * (1 - theta) * t^-alpha`.
    Stable {
        alpha: f64,
        theta: f64,
        scale: f64,
    },
}

/// `(c, sigma^2, nu)`, with truncation function `x / (1 + x^2)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct LevyTriple {
    pub drift: f64,
    pub sigma2: f64,
    pub measure: LevyMeasure,
}

fn h(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        x / (1.0 + x * x)
    }
}

impl LevyTriple {
    pub fn validate(&self) -> Result<()> {
        if !self.drift.is_finite() || !(self.sigma2.is_finite() && self.sigma2 >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "levy triple needs finite drift and sigma2 >= 0, got ({}, {})",
                self.drift, self.sigma2
            )));
        }
        match &self.measure {
            LevyMeasure::Atomic { atoms } => {
                for a in atoms {
                    if !(a.at.is_finite() && a.at != 0.0 && a.weight.is_finite() && a.weight > 0.0)
                    {
                        return Err(Error::InvalidParameter(format!(
                            "atoms need a non-zero location and positive weight, got ({}, {})",
                            a.at, a.weight
                        )));
                    }
                }
                Ok(())
            }
            &LevyMeasure::Stable {
                alpha,
                theta,
                scale,
            } => DistSpec::StableDomain {
                alpha,
                theta,
                scale,
            }
            .validate(),
        }
    }

    /// The triple of the limit law of `sum_j X_j` under the scaling that
    /// makes the roots of `q_N` converge: `N^(-1/2)` for the standardized
    /// finite-variance laws, none for scaled Bernoulli, `N^(-1/alpha)` for
    /// the stable domain.
    pub fn matching(dist: &DistSpec) -> Result<Self> {
        dist.validate()?;
        match *dist {
            DistSpec::Gaussian { .. } | DistSpec::Rademacher | DistSpec::Uniform { .. } => {
                Ok(Self {
                    drift: 0.0,
                    sigma2: 1.0,
                    measure: LevyMeasure::Atomic { atoms: Vec::new() },
                })
            }
            DistSpec::BernoulliScaled { lambda } => Ok(Self {
                drift: lambda * h(1.0),
                sigma2: 0.0,
                measure: LevyMeasure::Atomic {
                    atoms: alloc::vec![Atom {
                        at: 1.0,
                        weight: lambda
                    }],
                },
            }),
            DistSpec::StableDomain {
                alpha,
                theta,
                scale,
            } => {
                let drift = if theta == 0.5 {
                    0.0
                } else if alpha < 1.0 {
                    // int_0^inf h over both tails, so Y is the plain (uncentered) sum
                    (2.0 * theta - 1.0) * alpha * scale * core::f64::consts::PI
                        / (2.0 * (core::f64::consts::FRAC_PI_2 * alpha).cos())
                } else {
                    return Err(Error::InvalidParameter(format!(
                        "asymmetric stable_domain with alpha >= 1 needs centering; only theta = 0.5 is supported, got {theta}"
                    )));
                };
                Ok(Self {
                    drift,
                    sigma2: 0.0,
                    measure: LevyMeasure::Stable {
                        alpha,
                        theta,
                        scale,
                    },
                })
            }
        }
    }

    fn sides(&self) -> Option<(f64, f64, [f64; 2])> {
        match self.measure {
            LevyMeasure::Stable {
                alpha,
                theta,
                scale,
            } => Some((alpha, scale, [theta, 1.0 - theta])),
            LevyMeasure::Atomic { .. } => None,
        }
    }

    /// `sum_j c_j` over the sampled points: `sum_i weight_i h(at_i)` for
    /// atoms, `int_0^T h(N_+^-1(-t)) dt` minus its negative-side mirror for
    /// stable tails, with `T` the horizon of the last sampled point.
    pub fn compensator(&self, sample: &PointProcessSample) -> Result<f64> {
        match &self.measure {
            LevyMeasure::Atomic { atoms } => Ok(atoms.iter().map(|a| a.weight * h(a.at)).sum()),
            &LevyMeasure::Stable {
                alpha,
                theta,
                scale,
            } => {
                let gamma = sample.horizon.unwrap_or(0.0);
                let thetas = [theta, 1.0 - theta];
                let mut total = 0.0;
                for (side, sign) in thetas.iter().zip([1.0, -1.0]) {
                    let weight = scale * side;
                    let horizon = side * gamma;
                    if weight == 0.0 || horizon == 0.0 {
                        continue;
                    }
                    let g = move |t: f64| h((weight / t).powf(1.0 / alpha));
                    // dyadic pieces around the peak of h(g) at t = weight
                    let mut lo = 0.0;
                    let mut hi = weight.min(horizon);
                    let mut acc = 0.0;
                    while lo < horizon {
                        acc += integrate(g, lo, hi, QUAD_TOL)?;
                        lo = hi;
                        hi = (2.0 * hi).min(horizon);
                    }
                    total += sign * acc;
                }
                Ok(total)
            }
        }
    }

    /// `x_T = N_+^-1(-T_+)`, the magnitude where the sampled points stop.
    fn cutoff(&self, sample: &PointProcessSample) -> Option<(f64, f64, [f64; 2], f64)> {
        let (alpha, scale, thetas) = self.sides()?;
        let gamma = sample.horizon?;
        Some((alpha, scale, thetas, (scale / gamma).powf(1.0 / alpha)))
    }

    /// Expected compensated sum of the points beyond the truncation,
    /// `int_T^inf (g - h(g)) dt = alpha c theta int_0^{x_T} x^(2-alpha)/(1+x^2) dx`
    /// per side; zero for atomic measures.
    pub fn tail_correction(&self, sample: &PointProcessSample) -> Result<f64> {
        let Some((alpha, scale, thetas, x_t)) = self.cutoff(sample) else {
            return Ok(0.0);
        };
        let base = integrate(|x| x.powf(2.0 - alpha) / (1.0 + x * x), 0.0, x_t, QUAD_TOL)?;
        Ok(alpha * scale * (thetas[0] - thetas[1]) * base)
    }

    /// Standard deviation of the truncated remainder of `Y`,
    /// `sqrt(sum alpha c theta x_T^(2-alpha)/(2-alpha))`.
    pub fn y_tail_sd(&self, sample: &PointProcessSample) -> f64 {
        self.cutoff(sample).map_or(0.0, |(alpha, scale, _, x_t)| {
            (alpha * scale * x_t.powf(2.0 - alpha) / (2.0 - alpha)).sqrt()
        })
    }

    /// Expected absolute contribution of the untruncated points to `S_k`,
    /// `sum alpha c theta x_T^(k-alpha)/(k-alpha)`.
    pub fn power_sum_tail_bound(&self, sample: &PointProcessSample, k: usize) -> f64 {
        self.cutoff(sample).map_or(0.0, |(alpha, scale, _, x_t)| {
            let k = k as f64;
            alpha * scale * x_t.powf(k - alpha) / (k - alpha)
        })
    }
}

/// A (possibly truncated) realization of a Poisson point process.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PointProcessSample {
    /// Positive points, non-increasing.
    pub positive: Vec<f64>,
    /// Negative points, non-decreasing (largest magnitude first).
    pub negative: Vec<f64>,
    /// `J`, when the process was truncated.
    pub truncation: Option<usize>,
    /// `Gamma_J`, the arrival time of the last sampled point.
    pub horizon: Option<f64>,
}

impl PointProcessSample {
    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        self.positive.iter().chain(&self.negative).copied()
    }

    /// `S_k = sum_j alpha_j^k` over the sampled points.
    pub fn power_sum(&self, k: usize) -> f64 {
        let k = k as i32;
        let mut s = crate::stats::NeumaierSum::default();
        // smallest magnitudes first
        for &x in self.positive.iter().rev().chain(self.negative.iter().rev()) {
            s.add(x.powi(k));
        }
        s.value()
    }

    /// `(S_2, ..., S_l)`.
    pub fn power_sums(&self, l: usize) -> Vec<f64> {
        (2..=l).map(|k| self.power_sum(k)).collect()
    }
}

/// First `J` points `eps_k (c / Gamma_k)^(1/alpha)` of a stable process;
/// `Gamma_k` are partial sums of standard exponentials and `eps_k = +1`
/// with probability `theta`. The exponential and the sign of point `k` are
/// drawn together, so a longer truncation extends the same sequence.
pub fn sample_stable_points(
    alpha: f64,
    theta: f64,
    scale: f64,
    truncation: usize,
    rng: &mut ChaCha8Rng,
) -> Result<PointProcessSample> {
    DistSpec::StableDomain {
        alpha,
        theta,
        scale,
    }
    .validate()?;
    if truncation == 0 {
        return Err(Error::InvalidParameter(
            "stable truncation J must be >= 1".into(),
        ));
    }
    let mut gamma = 0.0;
    let (mut positive, mut negative) = (Vec::new(), Vec::new());
    for _ in 0..truncation {
        let e: f64 = Exp1.sample(rng);
        gamma += e;
        let magnitude = (scale / gamma).powf(1.0 / alpha);
        if rng.random::<f64>() < theta {
            positive.push(magnitude);
        } else {
            negative.push(-magnitude);
        }
    }
    Ok(PointProcessSample {
        positive,
        negative,
        truncation: Some(truncation),
        horizon: Some(gamma),
    })
}

/// Independent `Poisson(weight_i)` counts of points at each atom.
pub fn sample_atomic_points(atoms: &[Atom], rng: &mut ChaCha8Rng) -> Result<PointProcessSample> {
    let (mut positive, mut negative) = (Vec::new(), Vec::new());
    for a in atoms {
        let dist =
            Poisson::new(a.weight).map_err(|e| Error::InvalidParameter(format!("poisson: {e}")))?;
        let count = dist.sample(rng) as usize;
        let side = if a.at > 0.0 {
            &mut positive
        } else {
            &mut negative
        };
        side.extend(core::iter::repeat_n(a.at, count));
    }
    positive.sort_by(|a: &f64, b| b.total_cmp(a));
    negative.sort_by(f64::total_cmp);
    Ok(PointProcessSample {
        positive,
        negative,
        truncation: None,
        horizon: None,
    })
}

/// Points of `triple.measure`; `truncation` applies to stable tails only.
pub fn sample_points(
    triple: &LevyTriple,
    truncation: usize,
    rng: &mut ChaCha8Rng,
) -> Result<PointProcessSample> {
    triple.validate()?;
    match &triple.measure {
        LevyMeasure::Atomic { atoms } => sample_atomic_points(atoms, rng),
        &LevyMeasure::Stable {
            alpha,
            theta,
            scale,
        } => sample_stable_points(alpha, theta, scale, truncation, rng),
    }
}

/// The pieces of `Y = c + sigma Z + sum (alpha_j - c_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct YAssembly {
    pub y: f64,
    pub gaussian_part: f64,
    /// `sum_j (alpha_j - c_j)` over the sampled points.
    pub compensated_sum: f64,
    /// Deterministic expected remainder beyond the truncation.
    pub tail_correction: f64,
    /// Standard deviation of the remainder that is not simulated.
    pub tail_sd: f64,
}

/// Assembles `Y` for points drawn from `triple`; `Z` comes from `rng`.
pub fn assemble_y(
    triple: &LevyTriple,
    sample: &PointProcessSample,
    rng: &mut ChaCha8Rng,
) -> Result<YAssembly> {
    triple.validate()?;
    let gaussian_part: f64 = StandardNormal.sample(rng);
    let mut sum = crate::stats::NeumaierSum::default();
    for &x in sample
        .positive
        .iter()
        .rev()
        .chain(sample.negative.iter().rev())
    {
        sum.add(x);
    }
    let compensated_sum = sum.value() - triple.compensator(sample)?;
    let tail_correction = triple.tail_correction(sample)?;
    let y = triple.drift + triple.sigma2.sqrt() * gaussian_part + compensated_sum + tail_correction;
    Ok(YAssembly {
        y,
        gaussian_part,
        compensated_sum,
        tail_correction,
        tail_sd: triple.y_tail_sd(sample),
    })
}

/// `R_A(s) = Y + (sigma^2 + S_2) s + sum_{k>=3} S_k s^(k-1)`, i.e. `-f'/f`,
/// from `power_sums = (S_2, ..., S_l)`.
pub fn f_log_derivative_series<T: Scalar>(y: T, sigma2: T, power_sums: &[T]) -> TruncatedSeries<T> {
    let mut coeffs = Vec::with_capacity(power_sums.len() + 1);
    coeffs.push(y);
    for (i, s) in power_sums.iter().enumerate() {
        coeffs.push(if i == 0 {
            sigma2.clone() + s.clone()
        } else {
            s.clone()
        });
    }
    TruncatedSeries::new(coeffs).expect("non-empty")
}

/// `f = exp(-int R_A)`, one order above `r_a`.
pub fn entire_series<T: Scalar>(r_a: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
    r_a.integral().neg().exp()
}

/// `A_l = f(d/dx) x^l` for the entire function with `-f'/f = R_A`.
pub fn appell_limit<T: Scalar>(
    y: T,
    sigma2: T,
    power_sums: &[T],
    l: usize,
) -> Result<Polynomial<T>> {
    if power_sums.len() + 1 != l {
        return Err(Error::PrefixTooShort {
            needed: l.saturating_sub(1),
            available: power_sums.len(),
        });
    }
    series_apply(
        &entire_series(&f_log_derivative_series(y, sigma2, power_sums))?,
        l,
    )
}
