//! Runs every acceptance criterion at its stated settings and prints one
//! PASS/FAIL line per criterion. Failing criteria are reported, not hidden;
//! set FINFREE_ACCEPTANCE_STRICT=1 to turn any FAIL into a non-zero exit.

use std::time::{Duration, Instant};

use finfree::exec::ParallelExecutor;
use finfree_core::experiments::{
    covariance_model, run, ExperimentConfig, ExperimentKind, ExperimentReport,
};
use finfree_core::families::{hermite, hermite_coefficients, laguerre_coefficients};
use finfree_core::linalg::Matrix;
use finfree_core::randgen::{appell_limit, DistSpec};
use finfree_core::scalar::{rat, ratio};
use finfree_core::transforms::{
    cumulants_via_r_transform, derivative_cumulant_map, finite_free_convolve,
    finite_free_convolve_via_series, finite_free_cumulants,
};
use finfree_core::{Polynomial, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

type Attempt = Result<Outcome, String>;

fn criterion(id: u32, title: &str, budget: Duration, f: impl FnOnce() -> Attempt) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let in_time = elapsed < budget;
    let (pass, detail) = match result {
        Ok(o) => (o.pass && in_time, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let timing = format!("{:.1} s of {} s", elapsed.as_secs_f64(), budget.as_secs());
    let timing = if in_time {
        timing
    } else {
        format!("{timing}, over budget")
    };
    println!(
        "criterion {id} {} [{title}] ({timing}): {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

/// Evaluates the named checks of `report`; every one must be present and pass.
fn named_checks(report: &ExperimentReport, names: &[String]) -> (bool, Vec<String>) {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in names {
        match report.check(name) {
            Some(c) => {
                pass &= c.pass;
                let mark = if c.pass { "ok" } else { "FAILED" };
                parts.push(format!(
                    "{name} {:.4} vs {:.4} {mark}",
                    c.statistic, c.threshold
                ));
            }
            None => {
                pass = false;
                parts.push(format!("{name} missing"));
            }
        }
    }
    (pass, parts)
}

fn experiment(config: ExperimentConfig) -> Result<ExperimentReport, String> {
    let exec = ParallelExecutor::new(None).map_err(|e| e.to_string())?;
    run(&config, &exec).map_err(|e| e.to_string())
}

fn strings(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Polynomial<Rational> {
    Polynomial::from_roots((0..n).map(|_| rat(rng.random_range(-6..=6))).collect())
        .expect("non-empty")
}

fn exact_algebra() -> Attempt {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    let mut comparisons = 0usize;
    for case in 0..200 {
        let n = rng.random_range(1..=8);
        let p = random_poly(&mut rng, n);
        let q = random_poly(&mut rng, n);
        let err = |e: finfree_core::Error| e.to_string();
        let kappa = finite_free_cumulants(&p, n).map_err(err)?;
        for k in 1..=n {
            let direct =
                finite_free_cumulants(&p.normalized_derivative(k).map_err(err)?, k).map_err(err)?;
            for j in 1..=k {
                comparisons += 1;
                let expected = kappa.get(j).clone() * ratio(k as i64, n as i64).powi(j as u32 - 1);
                if direct.get(j) != &expected {
                    failures.push(format!("case {case}: derivative map j={j} k={k}"));
                }
            }
            if derivative_cumulant_map(&kappa, k).map_err(err)? != direct {
                failures.push(format!("case {case}: derivative_cumulant_map k={k}"));
            }
        }
        let pq = finite_free_convolve(&p, &q).map_err(err)?;
        let (kq, kpq) = (
            finite_free_cumulants(&q, n).map_err(err)?,
            finite_free_cumulants(&pq, n).map_err(err)?,
        );
        for j in 1..=n {
            comparisons += 1;
            if kpq.get(j).clone() != kappa.get(j).clone() + kq.get(j).clone() {
                failures.push(format!("case {case}: additivity j={j}"));
            }
        }
        comparisons += 2;
        if cumulants_via_r_transform(&p, n).map_err(err)? != kappa {
            failures.push(format!("case {case}: R-transform route"));
        }
        let via_series = finite_free_convolve_via_series(&p, &q).map_err(err)?;
        if via_series.coefficients().map_err(err)? != pq.coefficients().map_err(err)? {
            failures.push(format!("case {case}: convolution routes"));
        }
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("200 polynomials, {comparisons} exact comparisons, all equal")
        } else {
            format!("{} mismatches, first: {}", failures.len(), failures[0])
        },
    })
}

fn family_identities() -> Attempt {
    let err = |e: finfree_core::Error| e.to_string();
    let mut failures = Vec::new();
    for l in 1..=10 {
        let he = hermite::<Rational>(l).map_err(err)?;
        for k in 1..=l {
            if he
                .normalized_derivative(k)
                .map_err(err)?
                .coefficients()
                .map_err(err)?
                != hermite_coefficients::<Rational>(k)
            {
                failures.push(format!("derivative k={k} l={l}"));
            }
        }
        let kappa = finite_free_cumulants(&he, l).map_err(err)?;
        let spike: Vec<Rational> = (1..=l)
            .map(|j| if j == 2 { rat(l as i64) } else { rat(0) })
            .collect();
        if kappa.values != spike {
            failures.push(format!("cumulants l={l}"));
        }
    }
    let mut laguerre_cases = 0;
    for l in 1..=8usize {
        for y in 0..=l {
            laguerre_cases += 1;
            let mut lhs = laguerre_coefficients::<Rational>(y, &rat((l - y) as i64));
            lhs.extend(std::iter::repeat_n(rat(0), l - y));
            if lhs != laguerre_coefficients::<Rational>(l, &rat(y as i64 - l as i64)) {
                failures.push(format!("laguerre Y={y} l={l}"));
            }
        }
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "derivatives and cumulants for l <= 10, {laguerre_cases} Laguerre cases, all exact"
            )
        } else {
            format!("{} mismatches, first: {}", failures.len(), failures[0])
        },
    })
}

fn gaussian() -> DistSpec {
    DistSpec::standard_gaussian()
}

fn hermite_limit() -> Attempt {
    let config = ExperimentConfig::new(ExperimentKind::HsLimit, 4, 4000, 11, gaussian())
        .with_trials(200)
        .with_ladder(vec![250, 1000, 4000]);
    let report = experiment(config)?;
    let (pass, parts) = named_checks(
        &report,
        &strings(&["rate_N250_N1000", "rate_N1000_N4000", "distance_N4000"]),
    );
    Ok(Outcome {
        pass,
        detail: parts.join("; "),
    })
}

fn root_covariance() -> Attempt {
    let names = strings(&["covariance_z_scores", "eigen_ratio"]);
    let main = experiment(ExperimentConfig::new(
        ExperimentKind::CltRoots,
        6,
        100,
        7,
        gaussian(),
    ))?;
    let (pass6, parts6) = named_checks(&main, &names);

    let hand = Matrix::from_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]).map_err(|e| e.to_string())?;
    let model = covariance_model(2, 3.0).map_err(|e| e.to_string())?;
    let model_ok = model.sigma_z.max_abs_diff(&hand) < 1e-12;
    let small = experiment(ExperimentConfig::new(
        ExperimentKind::CltRoots,
        2,
        100,
        7,
        gaussian(),
    ))?;
    let (pass2, parts2) = named_checks(&small, &strings(&["covariance_z_scores"]));
    Ok(Outcome {
        pass: pass6 && model_ok && pass2,
        detail: format!(
            "l=6: {}; l=2 hand model {}: {}",
            parts6.join("; "),
            if model_ok { "matches" } else { "DIFFERS" },
            parts2.join("; ")
        ),
    })
}

fn coefficient_projection() -> Attempt {
    let config = ExperimentConfig::new(ExperimentKind::CltPoly, 8, 200, 5, gaussian())
        .with_ladder(vec![200, 400]);
    let report = experiment(config)?;
    let (pass, parts) = named_checks(
        &report,
        &strings(&[
            "projection_variance",
            "residual_fraction_N200",
            "residual_decreases_N200_N400",
            "projection_skewness",
            "projection_excess_kurtosis",
        ]),
    );
    let var = report
        .statistics
        .get("projection_variance")
        .copied()
        .unwrap_or(f64::NAN);
    Ok(Outcome {
        pass,
        detail: format!("Var = {var:.1} (target 1568); {}", parts.join("; ")),
    })
}

fn cumulant_fluctuations() -> Attempt {
    let g = experiment(ExperimentConfig::new(
        ExperimentKind::CltCumulants,
        6,
        400,
        6,
        gaussian(),
    ))?;
    let mut names = strings(&["kappa2_variance"]);
    names.extend((3..=6).map(|j| format!("kappa{j}_variance")));
    let (pass_g, parts_g) = named_checks(&g, &names);
    let r = experiment(ExperimentConfig::new(
        ExperimentKind::CltCumulants,
        6,
        400,
        6,
        DistSpec::Rademacher,
    ))?;
    let (pass_r, parts_r) = named_checks(&r, &strings(&["kappa2_variance_degenerate"]));
    let var2 = g
        .statistics
        .get("variance_kappa2_N400")
        .copied()
        .unwrap_or(f64::NAN);
    Ok(Outcome {
        pass: pass_g && pass_r,
        detail: format!(
            "gaussian Var kappa2 = {var2:.2} (target 72): {}; rademacher: {}",
            parts_g.join("; "),
            parts_r.join("; ")
        ),
    })
}

fn poisson_limit() -> Attempt {
    let target = appell_limit(2.0, 0.0, &[2.0, 2.0], 3)
        .and_then(|p| p.coefficients())
        .map_err(|e| e.to_string())?;
    let target_ok = target == [1.0, -6.0, 6.0, 0.0];
    let config = ExperimentConfig::new(
        ExperimentKind::IdLimit,
        3,
        2000,
        8,
        DistSpec::BernoulliScaled { lambda: 1.0 },
    )
    .with_trials(5000)
    .with_ladder(vec![100, 1000, 10_000]);
    let report = experiment(config)?;
    let (pass, parts) = named_checks(
        &report,
        &strings(&["tv_kappa1_poisson", "conditional_s2_convergence"]),
    );
    let errors: Vec<String> = [100, 1000, 10_000]
        .iter()
        .map(|n| {
            format!(
                "{:.2e}",
                report
                    .statistics
                    .get(&format!("conditional_error_N{n}"))
                    .copied()
                    .unwrap_or(f64::NAN)
            )
        })
        .collect();
    Ok(Outcome {
        pass: pass && target_ok,
        detail: format!(
            "limit given S=2 is {target:?}; {}; conditional errors {}",
            parts.join("; "),
            errors.join(" > ")
        ),
    })
}

fn stable_limit() -> Attempt {
    let dist = DistSpec::StableDomain {
        alpha: 1.5,
        theta: 0.5,
        scale: 1.0,
    };
    let mut config =
        ExperimentConfig::new(ExperimentKind::IdLimit, 3, 2000, 9, dist).with_trials(5000);
    config.truncation = 10_000;
    config.y_draws = 10_000;
    let report = experiment(config)?;
    let (pass, parts) = named_checks(
        &report,
        &strings(&["ks_nm2_vs_s2", "ks_y_cross_validation"]),
    );
    Ok(Outcome {
        pass,
        detail: parts.join("; "),
    })
}

fn main() {
    // libtest flags such as --nocapture or a name filter are accepted and ignored
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "exact algebra suite", secs(30), exact_algebra),
        criterion(2, "family identities", secs(10), family_identities),
        criterion(3, "Hermite limit rate", secs(120), hermite_limit),
        criterion(4, "root covariance", secs(300), root_covariance),
        criterion(
            5,
            "coefficient projection",
            secs(300),
            coefficient_projection,
        ),
        criterion(6, "cumulant fluctuations", secs(180), cumulant_fluctuations),
        criterion(7, "Poisson limit", secs(180), poisson_limit),
        criterion(8, "stable limit", secs(300), stable_limit),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    let strict = std::env::var("FINFREE_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && passed < results.len() {
        std::process::exit(1);
    }
}
