//! Monte Carlo harness for the limit laws of normalized derivatives of
//! random polynomials with iid roots.
//!
//! A run is described by an [`ExperimentConfig`] and produces an
//! [`ExperimentReport`]: empirical statistics, their targets, and a list of
//! [`Check`]s whose gating subset decides pass/fail. Trials are independent
//! tasks keyed by index, handed to a [`TrialExecutor`]; results come back in
//! trial order and are reduced sequentially, so reports do not depend on
//! how the trials were scheduled.

mod model;
mod runners;

pub use model::{covariance_model, CovarianceModel};
pub use runners::{
    run, run_clt_cumulants, run_clt_poly, run_clt_roots, run_hs_limit, run_id_limit,
};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::newton::{elementary_from_power_sums, power_sums_from_roots};
use crate::poly::{normalized_derivative_prefix, Polynomial};
use crate::randgen::{DistSpec, LevyTriple};
use crate::scalar::Scalar;

/// Highest experiment order.
pub const MAX_ELL: usize = 10;
pub const FORMAT_VERSION: u32 = 1;

/// `D_dilation d_{l|N}` of the roots recentred at their empirical mean. The
/// centred roots have `p_1 = 0` by construction, so that power sum is set to
/// zero rather than left at its rounding residue.
pub fn center_derive_dilate<T: Scalar>(
    roots: &[T],
    l: usize,
    dilation: T,
) -> Result<Polynomial<T>> {
    let n = roots.len();
    if l == 0 || l > n {
        return Err(Error::OrderOutOfRange { order: l, max: n });
    }
    let mean = roots.iter().fold(T::zero(), |acc, r| acc + r.clone()) / T::from_usize(n);
    let centered: Vec<T> = roots.iter().map(|r| r.clone() - mean.clone()).collect();
    let mut sums = power_sums_from_roots(&centered, l);
    sums[0] = T::zero();
    let prefix = normalized_derivative_prefix(&elementary_from_power_sums(&sums), n, l);
    Polynomial::from_prefix(l, prefix)?.dilate(dilation)
}

/// `D_sqrt(N) d_{l|N} p_N(x + mean)`.
pub fn shifted_dilated_derivative(roots: &[f64], l: usize) -> Result<Polynomial<f64>> {
    center_derive_dilate(roots, l, (roots.len() as f64).sqrt())
}

/// `D_N d_{l|N} q_N`, no centering; `roots` are those of `q_N`.
pub fn id_scaled_derivative<T: Scalar>(roots: &[T], l: usize) -> Result<Polynomial<T>> {
    let n = roots.len();
    if l == 0 || l > n {
        return Err(Error::OrderOutOfRange { order: l, max: n });
    }
    let prefix = elementary_from_power_sums(&power_sums_from_roots(roots, l));
    Polynomial::from_prefix(l, normalized_derivative_prefix(&prefix, n, l))?
        .dilate(T::from_usize(n))
}

/// Root scaling from `p_N` to `q_N`: `N^(-1/2)` for the standardized
/// finite-variance laws, `1` for scaled Bernoulli, `N^(-1/alpha)` for the
/// stable domain.
pub fn id_root_scale(dist: &DistSpec, n: usize) -> f64 {
    let n = n as f64;
    match *dist {
        DistSpec::BernoulliScaled { .. } => 1.0,
        DistSpec::StableDomain { alpha, .. } => n.powf(-1.0 / alpha),
        _ => n.powf(-0.5),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ExperimentKind {
    HsLimit,
    CltRoots,
    CltPoly,
    CltCumulants,
    IdLimit,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::HsLimit => "hs_limit",
            ExperimentKind::CltRoots => "clt_roots",
            ExperimentKind::CltPoly => "clt_poly",
            ExperimentKind::CltCumulants => "clt_cumulants",
            ExperimentKind::IdLimit => "id_limit",
        }
    }
}

/// Pass/fail thresholds.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct Tolerances {
    /// Entrywise `|z|` cap for covariance comparisons.
    pub z_cap: f64,
    pub skewness_cap: f64,
    pub excess_kurtosis_cap: f64,
    /// Variance targets must match within `relative_error * target + se_multiple * SE`.
    pub relative_error: f64,
    pub se_multiple: f64,
    /// Off-projection energy fraction cap.
    pub residual_cap: f64,
    /// Cap on the second/first eigenvalue ratio of a rank-one covariance.
    pub eigen_ratio_cap: f64,
    /// Other cumulant variances must stay below this fraction of the `(2,2)` target.
    pub other_variance_fraction: f64,
    /// With `m4 = 1`, the `kappa_2` variance must stay below this times `l^2`.
    pub degenerate_fraction: f64,
    pub ks_cap: f64,
    pub y_ks_cap: f64,
    pub tv_cap: f64,
    /// Required mean-distance ratio per 4x increase of `N`.
    pub rate_ratio: f64,
    /// Mean coefficient distance cap at the largest `N`.
    pub distance_cap: f64,
    /// Largest tolerated fraction of failed root solves.
    pub max_failure_fraction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            z_cap: 5.0,
            skewness_cap: 0.15,
            excess_kurtosis_cap: 0.3,
            relative_error: 0.1,
            se_multiple: 3.0,
            residual_cap: 0.1,
            eigen_ratio_cap: 0.1,
            other_variance_fraction: 0.1,
            degenerate_fraction: 0.05,
            ks_cap: 0.05,
            y_ks_cap: 0.03,
            tv_cap: 0.05,
            rate_ratio: 1.7,
            distance_cap: 0.12,
            max_failure_fraction: 0.01,
        }
    }
}

/// Fixed histogram bins: `bins` equal cells on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct BinSpec {
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
}

impl BinSpec {
    pub fn edges(&self) -> Vec<f64> {
        let w = (self.hi - self.lo) / self.bins as f64;
        (0..=self.bins).map(|i| self.lo + w * i as f64).collect()
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi && self.bins >= 1) {
            return Err(Error::InvalidParameter(format!(
                "histogram needs lo < hi and bins >= 1, got [{}, {}] with {} bins",
                self.lo, self.hi, self.bins
            )));
        }
        Ok(())
    }
}

#[cfg(feature = "serde")]
fn default_trials() -> usize {
    2000
}

#[cfg(feature = "serde")]
fn default_truncation() -> usize {
    10_000
}

/// A full experiment description.
///
/// `n_ladder` is kind specific: the `N` values of the rate study
/// (`hs_limit`, default `[N/16, N/4, N]`), the doubled degree of the
/// residual check (`clt_poly`, default `[N, 2N]`), extra degrees for the
/// monotone-decrease check (`clt_cumulants`, default none), and the degrees
/// of the conditional Poisson check (`id_limit`, default
/// `[100, 1000, 10000]`).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub ell: usize,
    #[cfg_attr(feature = "serde", serde(rename = "N"))]
    pub n: usize,
    #[cfg_attr(feature = "serde", serde(default))]
    pub n_ladder: Vec<usize>,
    #[cfg_attr(feature = "serde", serde(default = "default_trials"))]
    pub trials: usize,
    pub seed: u64,
    pub dist: DistSpec,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub triple: Option<LevyTriple>,
    /// Point-process truncation `J` for stable tails.
    #[cfg_attr(feature = "serde", serde(default = "default_truncation"))]
    pub truncation: usize,
    /// Draws per side for the `Y` cross-validation.
    #[cfg_attr(feature = "serde", serde(default = "default_truncation"))]
    pub y_draws: usize,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub histogram: Option<BinSpec>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub tolerances: Tolerances,
}

impl ExperimentConfig {
    /// A config with every optional field at its default.
    pub fn new(kind: ExperimentKind, ell: usize, n: usize, seed: u64, dist: DistSpec) -> Self {
        Self {
            kind,
            ell,
            n,
            n_ladder: Vec::new(),
            trials: 2000,
            seed,
            dist,
            triple: None,
            truncation: 10_000,
            y_draws: 10_000,
            histogram: None,
            tolerances: Tolerances::default(),
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_ladder(mut self, ladder: Vec<usize>) -> Self {
        self.n_ladder = ladder;
        self
    }

    /// The effective `N` ladder, defaults filled in.
    pub fn ladder(&self) -> Vec<usize> {
        if !self.n_ladder.is_empty() {
            return self.n_ladder.clone();
        }
        match self.kind {
            ExperimentKind::HsLimit => {
                let mut l: Vec<usize> = [self.n / 16, self.n / 4, self.n]
                    .into_iter()
                    .filter(|&m| m >= self.ell)
                    .collect();
                l.dedup();
                l
            }
            ExperimentKind::CltPoly => vec![self.n, 2 * self.n],
            ExperimentKind::CltCumulants | ExperimentKind::CltRoots => Vec::new(),
            ExperimentKind::IdLimit => vec![100, 1000, 10_000],
        }
    }

    /// The Levy triple for `id_limit`: the configured one, or the one
    /// matching `dist`.
    pub fn levy_triple(&self) -> Result<LevyTriple> {
        let matching = LevyTriple::matching(&self.dist)?;
        match &self.triple {
            None => Ok(matching),
            Some(t) => {
                t.validate()?;
                let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()));
                if t.measure != matching.measure
                    || !close(t.drift, matching.drift)
                    || !close(t.sigma2, matching.sigma2)
                {
                    return Err(Error::InvalidParameter(format!(
                        "levy triple {t:?} is inconsistent with dist {}; expected {matching:?}",
                        self.dist.name()
                    )));
                }
                Ok(t.clone())
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.ell == 0 || self.ell > MAX_ELL {
            return bad(format!("ell must be in 1..={MAX_ELL}, got {}", self.ell));
        }
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.n < self.ell {
            return bad(format!(
                "N must be >= ell, got N = {} < ell = {}",
                self.n, self.ell
            ));
        }
        self.dist.validate()?;
        if let Some(h) = &self.histogram {
            h.validate()?;
        }
        let ladder = self.ladder();
        if let Some(&m) = ladder.iter().find(|&&m| m < self.ell) {
            return bad(format!("every ladder N must be >= ell, got {m}"));
        }
        match self.kind {
            ExperimentKind::HsLimit
            | ExperimentKind::CltRoots
            | ExperimentKind::CltPoly
            | ExperimentKind::CltCumulants => {
                if self.dist.mean_variance().is_none() {
                    return bad(format!(
                        "{} needs a finite-variance law, got {}",
                        self.kind.name(),
                        self.dist.name()
                    ));
                }
                if self.kind != ExperimentKind::HsLimit && self.trials < 3 {
                    return bad("covariance experiments need at least 3 trials".into());
                }
                if self.kind == ExperimentKind::CltPoly && self.ell < 2 {
                    return bad("clt_poly needs ell >= 2".into());
                }
                if self.kind == ExperimentKind::HsLimit && ladder.is_empty() {
                    return bad("hs_limit needs a non-empty N ladder".into());
                }
                if self.triple.is_some() {
                    return bad(format!("{} takes no levy triple", self.kind.name()));
                }
            }
            ExperimentKind::IdLimit => {
                self.levy_triple()?;
                if self.truncation == 0 || self.y_draws < 2 {
                    return bad("id_limit needs truncation >= 1 and y_draws >= 2".into());
                }
            }
        }
        Ok(())
    }
}

/// One pass/fail criterion. Only gating checks decide the report verdict.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Check {
    pub name: String,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    pub gating: bool,
    pub detail: String,
}

impl Check {
    /// Passes when `statistic <= threshold`.
    pub fn at_most(
        name: impl Into<String>,
        statistic: f64,
        threshold: f64,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            statistic,
            threshold,
            pass: statistic <= threshold,
            gating: true,
            detail: detail.into(),
        }
    }

    /// Passes when `statistic >= threshold`.
    pub fn at_least(
        name: impl Into<String>,
        statistic: f64,
        threshold: f64,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            statistic,
            threshold,
            pass: statistic >= threshold,
            gating: true,
            detail: detail.into(),
        }
    }

    pub fn informational(mut self) -> Self {
        self.gating = false;
        self
    }
}

/// Empirical covariance next to its target.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CovarianceComparison {
    pub labels: Vec<String>,
    pub empirical: Matrix,
    pub target: Matrix,
    pub standard_error: Matrix,
    pub z_scores: Matrix,
}

impl CovarianceComparison {
    pub fn new(
        labels: Vec<String>,
        empirical: Matrix,
        standard_error: Matrix,
        target: Matrix,
    ) -> Self {
        let z_scores = Matrix::from_fn(target.rows(), target.cols(), |i, j| {
            let diff = empirical[(i, j)] - target[(i, j)];
            if diff == 0.0 {
                0.0
            } else {
                diff / standard_error[(i, j)]
            }
        });
        Self {
            labels,
            empirical,
            target,
            standard_error,
            z_scores,
        }
    }

    pub fn max_abs_z(&self) -> f64 {
        let d = self.z_scores.rows();
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| self.z_scores[(i, j)].abs())
            .fold(
                0.0,
                |m, z| if z.is_nan() { f64::INFINITY } else { m.max(z) },
            )
    }
}

/// Counts per fixed bin, one column per statistic.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub columns: Vec<String>,
    /// `counts[c][b]` for column `c`, bin `b`.
    pub counts: Vec<Vec<u64>>,
}

/// Plot-ready curves sharing one abscissa.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Curves {
    pub x_label: String,
    pub x: Vec<f64>,
    pub columns: Vec<String>,
    /// `values[c][i]` for column `c` at `x[i]`.
    pub values: Vec<Vec<f64>>,
}

/// One row per trial.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrialTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExperimentReport {
    pub format_version: u32,
    pub config: ExperimentConfig,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Named scalar statistics, in name order.
    pub statistics: BTreeMap<String, f64>,
    pub mean_labels: Vec<String>,
    pub mean: Vec<f64>,
    pub target_mean: Vec<f64>,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub covariance: Option<CovarianceComparison>,
    pub failed_trials: usize,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub histogram: Option<Histogram>,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub curves: Option<Curves>,
    /// Per-trial data; written separately as CSV.
    #[cfg_attr(feature = "serde", serde(skip))]
    pub trials: TrialTable,
}

impl ExperimentReport {
    fn new(config: &ExperimentConfig) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            config: config.clone(),
            pass: false,
            checks: Vec::new(),
            statistics: BTreeMap::new(),
            mean_labels: Vec::new(),
            mean: Vec::new(),
            target_mean: Vec::new(),
            covariance: None,
            failed_trials: 0,
            histogram: None,
            curves: None,
            trials: TrialTable::default(),
        }
    }

    fn stat(&mut self, name: impl Into<String>, value: f64) {
        self.statistics.insert(name.into(), value);
    }

    fn finish(mut self) -> Self {
        self.pass = self.checks.iter().filter(|c| c.gating).all(|c| c.pass);
        self
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.gating && !c.pass)
    }

    /// One line: kind, verdict, and the failing gating checks if any.
    pub fn summary(&self) -> String {
        let gating = self.checks.iter().filter(|c| c.gating).count();
        let passed = self.checks.iter().filter(|c| c.gating && c.pass).count();
        let mut s = format!(
            "{} {}: {passed}/{gating} gating checks passed",
            self.config.kind.name(),
            if self.pass { "PASS" } else { "FAIL" }
        );
        let failed: Vec<String> = self.failed_checks().map(|c| c.name.to_string()).collect();
        if !failed.is_empty() {
            s.push_str(&format!(" (failed: {})", failed.join(", ")));
        }
        s
    }
}

/// Runs independent trials by index and returns their results in index
/// order.
pub trait TrialExecutor: Sync {
    fn map<R, F>(&self, count: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send;
}

/// Runs trials one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl TrialExecutor for Sequential {
    fn map<R, F>(&self, count: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}

/// Splits trial results into successes and a failure count; aborts when
/// failures exceed `max_fraction` of the trials.
pub(crate) fn collect_trials<R>(
    results: Vec<Result<R>>,
    max_fraction: f64,
) -> Result<(Vec<R>, usize)> {
    let total = results.len();
    let mut ok = Vec::with_capacity(total);
    let mut failed = 0;
    let mut last = None;
    for r in results {
        match r {
            Ok(v) => ok.push(v),
            Err(e) => {
                failed += 1;
                last = Some(e);
            }
        }
    }
    if let Some(e) = last {
        if failed as f64 > max_fraction * total as f64 || ok.len() < 2 {
            return Err(Error::RootFailures {
                failed,
                total,
                last: e.to_string(),
            });
        }
    }
    Ok((ok, failed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn zero_roots_give_monomials() {
        let p = shifted_dilated_derivative(&[0.0; 10], 4).unwrap();
        assert_eq!(p.coefficients().unwrap(), vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        let q = id_scaled_derivative(&[0.0; 10], 3).unwrap();
        assert_eq!(q.coefficients().unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn centering_makes_first_coefficient_vanish() {
        let roots = [0.3, -1.7, 2.2, 0.9, 5.1];
        let p = shifted_dilated_derivative(&roots, 3).unwrap();
        assert_eq!(p.prefix().unwrap()[0], 0.0);
        // Identical to centring by hand on exact inputs.
        let exact: Vec<Rational> = [3, -1, 7, 0, 1].iter().map(|&v| rat(v)).collect();
        let a = center_derive_dilate(&exact, 3, rat(2)).unwrap();
        let shifted =
            Polynomial::from_roots(exact.iter().map(|r| r.clone() - rat(2)).collect()).unwrap();
        let b = shifted
            .normalized_derivative(3)
            .unwrap()
            .dilate(rat(2))
            .unwrap();
        assert_eq!(a.prefix(), b.prefix());
    }

    #[test]
    fn conditional_poisson_limit() {
        let mut errs = Vec::new();
        for n in [100usize, 1000, 10_000] {
            let mut roots = vec![0.0; n];
            roots[0] = 1.0;
            roots[1] = 1.0;
            let c = id_scaled_derivative(&roots, 3)
                .unwrap()
                .coefficients()
                .unwrap();
            errs.push(
                c.iter()
                    .zip([1.0, -6.0, 6.0, 0.0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max),
            );
        }
        assert!(
            errs[0] > errs[1] && errs[1] > errs[2] && errs[2] < 1e-2,
            "{errs:?}"
        );
    }

    #[test]
    fn config_validation() {
        let base = ExperimentConfig::new(
            ExperimentKind::CltRoots,
            6,
            100,
            7,
            DistSpec::standard_gaussian(),
        );
        assert!(base.validate().is_ok());
        let mut c = base.clone();
        c.ell = 11;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.dist = DistSpec::StableDomain {
            alpha: 1.5,
            theta: 0.5,
            scale: 1.0,
        };
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut id = ExperimentConfig::new(
            ExperimentKind::IdLimit,
            3,
            2000,
            1,
            DistSpec::BernoulliScaled { lambda: 1.0 },
        );
        assert!(id.validate().is_ok());
        id.triple = Some(LevyTriple::matching(&DistSpec::standard_gaussian()).unwrap());
        assert!(id.validate().is_err());
        assert_eq!(
            ExperimentConfig::new(
                ExperimentKind::HsLimit,
                4,
                4000,
                1,
                DistSpec::standard_gaussian()
            )
            .ladder(),
            vec![250, 1000, 4000]
        );
    }

    #[test]
    fn failure_accounting() {
        let results: Vec<Result<u32>> = (0..200)
            .map(|i| {
                if i == 5 {
                    Err(Error::NoConvergence)
                } else {
                    Ok(i)
                }
            })
            .collect();
        let (ok, failed) = collect_trials(results, 0.01).unwrap();
        assert_eq!((ok.len(), failed), (199, 1));
        let results: Vec<Result<u32>> = (0..10)
            .map(|i| {
                if i < 2 {
                    Err(Error::NoConvergence)
                } else {
                    Ok(i)
                }
            })
            .collect();
        assert!(matches!(
            collect_trials(results, 0.01),
            Err(Error::RootFailures {
                failed: 2,
                total: 10,
                ..
            })
        ));
    }
}
