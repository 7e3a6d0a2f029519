//! Sample statistics used by the experiment reports.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// First and second raw-moment sums of a stream of vectors; mergeable, so
/// trials can be reduced in any grouping.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentAccumulator {
    count: usize,
    first: Vec<NeumaierSum>,
    second: Vec<NeumaierSum>,
}

impl MomentAccumulator {
    pub fn new(dim: usize) -> Self {
        Self {
            count: 0,
            first: vec![NeumaierSum::default(); dim],
            second: vec![NeumaierSum::default(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn push(&mut self, x: &[f64]) {
        let d = self.dim();
        assert_eq!(x.len(), d, "sample dimension");
        self.count += 1;
        for i in 0..d {
            self.first[i].add(x[i]);
            for j in 0..d {
                self.second[i * d + j].add(x[i] * x[j]);
            }
        }
    }

    pub fn merge(&mut self, other: &Self) {
        assert_eq!(self.dim(), other.dim(), "sample dimension");
        self.count += other.count;
        for (a, b) in self.first.iter_mut().zip(&other.first) {
            a.merge(b);
        }
        for (a, b) in self.second.iter_mut().zip(&other.second) {
            a.merge(b);
        }
    }

    pub fn mean(&self) -> Vec<f64> {
        self.first
            .iter()
            .map(|s| s.value() / self.count as f64)
            .collect()
    }

    /// Unbiased covariance from the raw sums.
    pub fn covariance(&self) -> Result<Matrix> {
        let n = self.count;
        if n < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: n });
        }
        let d = self.dim();
        let mean = self.mean();
        Ok(Matrix::from_fn(d, d, |i, j| {
            (self.second[i * d + j].value() - n as f64 * mean[i] * mean[j]) / (n as f64 - 1.0)
        }))
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    let mut s = NeumaierSum::default();
    xs.iter().for_each(|&x| s.add(x));
    s.value() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> Result<f64> {
    if xs.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: xs.len(),
        });
    }
    let m = mean(xs);
    let mut s = NeumaierSum::default();
    xs.iter().for_each(|&x| s.add((x - m) * (x - m)));
    Ok(s.value() / (xs.len() - 1) as f64)
}

/// Covariance estimate with a jackknife standard error per entry.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceEstimate {
    pub mean: Vec<f64>,
    pub covariance: Matrix,
    /// `NaN` with fewer than three samples.
    pub standard_error: Matrix,
}

/// Unbiased covariance of `samples` (rows) and leave-one-out jackknife
/// standard errors, using the closed-form deletion update.
pub fn empirical_covariance(samples: &[Vec<f64>]) -> Result<CovarianceEstimate> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let d = samples[0].len();
    if samples.iter().any(|s| s.len() != d) {
        return Err(Error::InvalidParameter(
            "samples of unequal dimension".into(),
        ));
    }
    let mean: Vec<f64> = (0..d)
        .map(|i| mean(&samples.iter().map(|s| s[i]).collect::<Vec<_>>()))
        .collect();
    let mut cross = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let mut acc = NeumaierSum::default();
            for s in samples {
                acc.add((s[i] - mean[i]) * (s[j] - mean[j]));
            }
            cross[(i, j)] = acc.value();
            cross[(j, i)] = acc.value();
        }
    }
    let nf = n as f64;
    let covariance = Matrix::from_fn(d, d, |i, j| cross[(i, j)] / (nf - 1.0));
    let mut standard_error = Matrix::from_fn(d, d, |_, _| f64::NAN);
    if n >= 3 {
        for i in 0..d {
            for j in i..d {
                // C_{-t} = (S - n/(n-1) d_i d_j) / (n-2)
                let loo: Vec<f64> = samples
                    .iter()
                    .map(|s| {
                        (cross[(i, j)] - nf / (nf - 1.0) * (s[i] - mean[i]) * (s[j] - mean[j]))
                            / (nf - 2.0)
                    })
                    .collect();
                let m = self::mean(&loo);
                let mut acc = NeumaierSum::default();
                loo.iter().for_each(|&c| acc.add((c - m) * (c - m)));
                let se = ((nf - 1.0) / nf * acc.value()).sqrt();
                standard_error[(i, j)] = se;
                standard_error[(j, i)] = se;
            }
        }
    }
    Ok(CovarianceEstimate {
        mean,
        covariance,
        standard_error,
    })
}

/// Sample skewness and excess kurtosis (moment estimators).
pub fn skewness_kurtosis(xs: &[f64]) -> Result<(f64, f64)> {
    if xs.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: xs.len(),
        });
    }
    let m = mean(xs);
    let (mut m2, mut m3, mut m4) = (
        NeumaierSum::default(),
        NeumaierSum::default(),
        NeumaierSum::default(),
    );
    for &x in xs {
        let d = x - m;
        m2.add(d * d);
        m3.add(d * d * d);
        m4.add(d * d * d * d);
    }
    let n = xs.len() as f64;
    let (m2, m3, m4) = (m2.value() / n, m3.value() / n, m4.value() / n);
    if m2 == 0.0 {
        return Ok((0.0, 0.0));
    }
    Ok((m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0))
}

/// Two-sample Kolmogorov-Smirnov statistic `sup |F_a - F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::NonFinite("ks sample"));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// `1/2 sum_k |p_k - q_k|` over the common support.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Counts per half-open bin `[e_i, e_{i+1})`, the last bin closed; values
/// outside the edges are dropped.
pub fn histogram(values: &[f64], edges: &[f64]) -> Vec<u64> {
    let bins = edges.len().saturating_sub(1);
    let mut counts = vec![0u64; bins];
    for &v in values {
        if bins == 0 || !(v >= edges[0] && v <= edges[bins]) {
            continue;
        }
        let k = edges
            .partition_point(|&e| e <= v)
            .saturating_sub(1)
            .min(bins - 1);
        counts[k] += 1;
    }
    counts
}
