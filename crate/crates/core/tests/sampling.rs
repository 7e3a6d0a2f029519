use finfree_core::experiments::{
    center_derive_dilate, run, shifted_dilated_derivative, ExperimentConfig, ExperimentKind,
    Sequential, TrialExecutor,
};
use finfree_core::families::hermite_coefficients;
use finfree_core::randgen::{
    appell_limit, domain, sample_atomic_points, sample_bernoulli_count, sample_iid_roots,
    sample_stable_points, stream, Atom, DistSpec, LevyMeasure, LevyTriple,
};
use finfree_core::scalar::{rat, ratio};
use finfree_core::stats::{ks_two_sample, mean};
use finfree_core::transforms::finite_free_cumulants;
use finfree_core::Rational;

#[test]
fn rademacher_hermite_rate() {
    let he = hermite_coefficients::<f64>(4);
    let distance = |n: usize| {
        let d: Vec<f64> = (0..100u64)
            .map(|i| {
                let roots =
                    sample_iid_roots(&DistSpec::Rademacher, n, &mut stream(31, domain::ROOTS, i))
                        .unwrap();
                let c = shifted_dilated_derivative(&roots, 4)
                    .unwrap()
                    .coefficients()
                    .unwrap();
                c.iter()
                    .zip(&he)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        mean(&d)
    };
    let ds: Vec<f64> = [64, 256, 1024].into_iter().map(distance).collect();
    for w in ds.windows(2) {
        assert!(w[0] / w[1] >= 1.5, "distances {ds:?}");
    }
}

#[test]
fn stable_point_counts_follow_the_tail() {
    let (alpha, scale, t) = (1.5, 1.0, 0.5);
    let counts: Vec<f64> = (0..2000u64)
        .map(|i| {
            let s =
                sample_stable_points(alpha, 0.5, scale, 200, &mut stream(32, domain::POINTS, i))
                    .unwrap();
            s.points().filter(|x| x.abs() > t).count() as f64
        })
        .collect();
    let expected = scale * f64::powf(t, -alpha);
    let se = (expected / counts.len() as f64).sqrt();
    assert!(
        (mean(&counts) - expected).abs() < 5.0 * se,
        "{} vs {expected}",
        mean(&counts)
    );
}

#[test]
fn stable_sign_split_follows_theta() {
    let (mut pos, mut total) = (0usize, 0usize);
    for i in 0..200u64 {
        let s =
            sample_stable_points(1.2, 0.3, 1.0, 100, &mut stream(33, domain::POINTS, i)).unwrap();
        pos += s.positive.len();
        total += s.len();
    }
    let frac = pos as f64 / total as f64;
    let se = (0.3 * 0.7 / total as f64).sqrt();
    assert!((frac - 0.3).abs() < 5.0 * se, "{frac}");
}

#[test]
fn doubling_the_truncation_extends_the_sequence() {
    let triple = LevyTriple {
        drift: 0.0,
        sigma2: 0.0,
        measure: LevyMeasure::Stable {
            alpha: 1.5,
            theta: 0.5,
            scale: 1.0,
        },
    };
    let (mut diff, mut bound) = (Vec::new(), Vec::new());
    for i in 0..400u64 {
        let short =
            sample_stable_points(1.5, 0.5, 1.0, 500, &mut stream(34, domain::POINTS, i)).unwrap();
        let long =
            sample_stable_points(1.5, 0.5, 1.0, 1000, &mut stream(34, domain::POINTS, i)).unwrap();
        assert!(short.positive.iter().all(|x| long.positive.contains(x)));
        assert!(short.negative.iter().all(|x| long.negative.contains(x)));
        diff.push(long.power_sum(2) - short.power_sum(2));
        bound.push(triple.power_sum_tail_bound(&short, 2));
    }
    assert!(diff.iter().all(|d| *d > 0.0));
    // points J+1..2J are part of the tail the bound covers
    assert!(
        mean(&diff) < mean(&bound),
        "{} vs {}",
        mean(&diff),
        mean(&bound)
    );
}

#[test]
fn bernoulli_second_moment_matches_poisson_points() {
    let (lambda, n, m) = (1.0, 2000, 4000u64);
    let nm2: Vec<f64> = (0..m)
        .map(|i| {
            sample_bernoulli_count(lambda, n, &mut stream(35, domain::ROOTS, i)).unwrap() as f64
        })
        .collect();
    let atoms = [Atom {
        at: 1.0,
        weight: lambda,
    }];
    let s2: Vec<f64> = (0..m)
        .map(|i| {
            sample_atomic_points(&atoms, &mut stream(35, domain::POINTS, i))
                .unwrap()
                .power_sum(2)
        })
        .collect();
    let ks = ks_two_sample(&nm2, &s2).unwrap();
    assert!(ks < 0.05, "ks = {ks}");
}

#[test]
fn pipeline_second_cumulant_is_the_scaled_sample_variance() {
    for (n, seed) in [(4usize, 1i64), (9, 2), (16, 3)] {
        let roots: Vec<Rational> = (0..n as i64)
            .map(|i| rat((i * 7 + seed) % 11 - 5))
            .collect();
        let root_n = rat((n as f64).sqrt() as i64);
        for l in 2..=n.min(6) {
            let p = center_derive_dilate(&roots, l, root_n.clone()).unwrap();
            let kappa = finite_free_cumulants(&p, 2).unwrap();
            let mean = roots.iter().cloned().fold(rat(0), |a, b| a + b) / rat(n as i64);
            let ss = roots.iter().fold(rat(0), |a, r| {
                a + (r.clone() - mean.clone()) * (r.clone() - mean.clone())
            });
            assert_eq!(kappa.get(1), &rat(0));
            assert_eq!(
                kappa.get(2).clone(),
                ss * ratio(l as i64, n as i64 - 1),
                "n = {n}, l = {l}"
            );
        }
    }
}

#[test]
fn appell_limit_cumulants() {
    let (y, sigma2) = (ratio(3, 2), ratio(1, 3));
    let sums = [ratio(5, 4), ratio(-2, 7), ratio(1, 9), ratio(3, 5)];
    for l in 2..=5usize {
        let a = appell_limit(y.clone(), sigma2.clone(), &sums[..l - 1], l).unwrap();
        let kappa = finite_free_cumulants(&a, l).unwrap();
        let lr = rat(l as i64);
        assert_eq!(kappa.get(1), &y);
        assert_eq!(
            kappa.get(2).clone(),
            lr.clone() * (sigma2.clone() + sums[0].clone())
        );
        for k in 3..=l {
            let mut scale = rat(1);
            for _ in 1..k {
                scale *= lr.clone();
            }
            assert_eq!(
                kappa.get(k).clone(),
                scale * sums[k - 2].clone(),
                "k = {k}, l = {l}"
            );
        }
    }
}

/// Evaluates trials back to front to stand in for an out-of-order pool.
struct Reversed;

impl TrialExecutor for Reversed {
    fn map<R: Send, F: Fn(usize) -> R + Sync + Send>(&self, count: usize, f: F) -> Vec<R> {
        let mut out: Vec<R> = (0..count).rev().map(f).collect();
        out.reverse();
        out
    }
}

#[test]
fn reports_do_not_depend_on_evaluation_order() {
    let config = ExperimentConfig::new(
        ExperimentKind::CltRoots,
        3,
        40,
        99,
        DistSpec::standard_gaussian(),
    )
    .with_trials(60);
    let a = run(&config, &Sequential).unwrap();
    let b = run(&config, &Reversed).unwrap();
    assert_eq!(a.checks, b.checks);
    assert_eq!(a.statistics, b.statistics);
    assert_eq!(a.trials, b.trials);
    let c = run(&config, &Sequential).unwrap();
    assert_eq!(a.checks, c.checks);
}
