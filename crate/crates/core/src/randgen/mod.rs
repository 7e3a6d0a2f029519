//! Seeded random generation: iid root laws, Poisson point processes for
//! atomic and stable Levy measures, and the random entire function whose
//! Appell polynomials are the infinitely divisible limits.
//!
//! Every draw comes from a ChaCha8 stream addressed by
//! `(master seed, domain, index)`, so results never depend on the order in
//! which trials are executed.

mod levy;

pub use levy::{
    appell_limit, assemble_y, entire_series, f_log_derivative_series, sample_atomic_points,
    sample_points, sample_stable_points, Atom, LevyMeasure, LevyTriple, PointProcessSample,
    YAssembly,
};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Stream domains; one per independent source of randomness in a trial.
pub mod domain {
    pub const ROOTS: u64 = 1;
    pub const POINTS: u64 = 2;
    pub const GAUSSIAN_PART: u64 = 3;
}

/// The generator for `(seed, domain, index)`.
pub fn stream(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Laws for the iid roots.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)
)]
pub enum DistSpec {
    Gaussian {
        mean: f64,
        variance: f64,
    },
    Rademacher,
    Uniform {
        a: f64,
        b: f64,
    },
    /// Value 1 with probability `lambda / N`, else 0.
    BernoulliScaled {
        lambda: f64,
    },
    /// `eps * Pareto` with `P(|X| >= t) = scale * t^(-alpha)` for
    /// `t >= scale^(1/alpha)` and `P(eps = +1) = theta`.
    StableDomain {
        alpha: f64,
        theta: f64,
        scale: f64,
    },
}

impl DistSpec {
    pub fn standard_gaussian() -> Self {
        DistSpec::Gaussian {
            mean: 0.0,
            variance: 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DistSpec::Gaussian { .. } => "gaussian",
            DistSpec::Rademacher => "rademacher",
            DistSpec::Uniform { .. } => "uniform",
            DistSpec::BernoulliScaled { .. } => "bernoulli_scaled",
            DistSpec::StableDomain { .. } => "stable_domain",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::InvalidParameter(msg));
        match *self {
            DistSpec::Gaussian { mean, variance } => {
                if !mean.is_finite() || !(variance.is_finite() && variance > 0.0) {
                    return bad(format!(
                        "gaussian needs finite mean and variance > 0, got ({mean}, {variance})"
                    ));
                }
            }
            DistSpec::Rademacher => {}
            DistSpec::Uniform { a, b } => {
                if !(a.is_finite() && b.is_finite() && a < b) {
                    return bad(format!("uniform needs finite a < b, got ({a}, {b})"));
                }
            }
            DistSpec::BernoulliScaled { lambda } => {
                if !(lambda.is_finite() && lambda > 0.0) {
                    return bad(format!("bernoulli_scaled needs lambda > 0, got {lambda}"));
                }
            }
            DistSpec::StableDomain {
                alpha,
                theta,
                scale,
            } => {
                if !(alpha > 0.0 && alpha < 2.0) {
                    return bad(format!("stable_domain needs alpha in (0,2), got {alpha}"));
                }
                if !(0.0..=1.0).contains(&theta) {
                    return bad(format!("stable_domain needs theta in [0,1], got {theta}"));
                }
                if !(scale.is_finite() && scale > 0.0) {
                    return bad(format!("stable_domain needs scale > 0, got {scale}"));
                }
            }
        }
        Ok(())
    }

    /// Population mean and variance for the laws with finite second moment
    /// and no dependence on `N`.
    pub fn mean_variance(&self) -> Option<(f64, f64)> {
        match *self {
            DistSpec::Gaussian { mean, variance } => Some((mean, variance)),
            DistSpec::Rademacher => Some((0.0, 1.0)),
            DistSpec::Uniform { a, b } => Some((0.5 * (a + b), (b - a) * (b - a) / 12.0)),
            DistSpec::BernoulliScaled { .. } | DistSpec::StableDomain { .. } => None,
        }
    }

    /// Fourth moment of the standardized law.
    pub fn standardized_m4(&self) -> Option<f64> {
        match self {
            DistSpec::Gaussian { .. } => Some(3.0),
            DistSpec::Rademacher => Some(1.0),
            DistSpec::Uniform { .. } => Some(1.8),
            _ => None,
        }
    }

    fn draw(&self, n: usize, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            DistSpec::Gaussian { mean, variance } => {
                let z: f64 = StandardNormal.sample(rng);
                mean + variance.sqrt() * z
            }
            DistSpec::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            DistSpec::Uniform { a, b } => a + (b - a) * rng.random::<f64>(),
            DistSpec::BernoulliScaled { lambda } => {
                if rng.random::<f64>() < lambda / n as f64 {
                    1.0
                } else {
                    0.0
                }
            }
            DistSpec::StableDomain {
                alpha,
                theta,
                scale,
            } => {
                let u = 1.0 - rng.random::<f64>();
                let m = (scale / u).powf(1.0 / alpha);
                if rng.random::<f64>() < theta {
                    m
                } else {
                    -m
                }
            }
        }
    }
}

/// `n` iid draws from `spec`.
pub fn sample_iid_roots(spec: &DistSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::EmptyRoots);
    }
    if let DistSpec::BernoulliScaled { lambda } = *spec {
        if lambda > n as f64 {
            return Err(Error::InvalidParameter(format!(
                "bernoulli_scaled needs lambda <= N, got {lambda} > {n}"
            )));
        }
    }
    Ok((0..n).map(|_| spec.draw(n, rng)).collect())
}

/// `n` iid draws standardized to mean 0 and variance 1 with the population
/// parameters; only for laws with finite variance.
pub fn sample_standardized_roots(
    spec: &DistSpec,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    let (mean, var) = spec.mean_variance().ok_or_else(|| {
        Error::InvalidParameter(format!("{} has no fixed finite variance", spec.name()))
    })?;
    let sd = var.sqrt();
    Ok(sample_iid_roots(spec, n, rng)?
        .into_iter()
        .map(|x| (x - mean) / sd)
        .collect())
}

/// Number of ones among `n` scaled-Bernoulli roots, drawn directly from
/// `Binomial(n, lambda/n)`.
pub fn sample_bernoulli_count(lambda: f64, n: usize, rng: &mut ChaCha8Rng) -> Result<u64> {
    DistSpec::BernoulliScaled { lambda }.validate()?;
    let dist = Binomial::new(n as u64, lambda / n as f64)
        .map_err(|e| Error::InvalidParameter(format!("binomial: {e}")))?;
    Ok(dist.sample(rng))
}

/// Roots for a given count of ones: the ones first, then zeros.
pub fn bernoulli_roots(ones: u64, n: usize) -> Vec<f64> {
    let mut roots = vec![0.0; n];
    roots[..ones as usize].fill(1.0);
    roots
}
