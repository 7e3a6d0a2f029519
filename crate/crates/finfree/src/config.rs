//! TOML experiment configs and the `--dist` flag syntax.
//!
//! A config is a flat table of [`ExperimentConfig`] fields with tagged
//! `[dist]`, `[triple]`, `[histogram]` and `[tolerances]` records:
//!
//! ```toml
//! kind = "clt_roots"
//! ell = 6
//! N = 100
//! trials = 2000
//! seed = 7
//!
//! [dist]
//! kind = "gaussian"
//! mean = 0.0
//! variance = 1.0
//! ```

use std::path::Path;

use finfree_core::experiments::{ExperimentConfig, ExperimentKind};
use finfree_core::randgen::DistSpec;

use crate::CliError;

/// Parses a config, filling in `kind` when the file leaves it out.
pub fn parse_config(
    text: &str,
    kind: Option<ExperimentKind>,
) -> Result<ExperimentConfig, CliError> {
    let mut table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
    if let Some(kind) = kind {
        match table.get("kind") {
            None => {
                table.insert("kind".into(), kind.name().into());
            }
            Some(v) if v.as_str() == Some(kind.name()) => {}
            Some(v) => {
                return Err(CliError::usage(format!(
                    "--config: file has kind = {v}, but the subcommand runs {}",
                    kind.name()
                )))
            }
        }
    }
    table
        .try_into()
        .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))
}

pub fn load_config(
    path: &Path,
    kind: Option<ExperimentKind>,
) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    parse_config(&text, kind).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn to_toml(config: &ExperimentConfig) -> Result<String, CliError> {
    toml::to_string(config).map_err(|e| CliError::Output(e.to_string()))
}

/// Parses `name[:key=value,...]`, e.g. `gaussian`, `uniform:a=-1,b=1`,
/// `bernoulli:lambda=1` or `stable:alpha=1.5,theta=0.5,scale=1`.
/// Omitted parameters take the defaults of [`dist_to_flag`]'s output.
pub fn parse_dist(text: &str) -> Result<DistSpec, CliError> {
    let (name, params) = text.split_once(':').unwrap_or((text, ""));
    let mut pairs = Vec::new();
    for item in params.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--dist: expected key=value, got {item:?}")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("--dist: {k} = {v:?} is not a number")))?;
        pairs.push((k.trim().to_string(), v));
    }
    let mut take = |key: &str, default: f64| match pairs.iter().position(|(k, _)| k == key) {
        Some(i) => pairs.remove(i).1,
        None => default,
    };
    let spec = match name.trim() {
        "gaussian" => DistSpec::Gaussian { mean: take("mean", 0.0), variance: take("variance", 1.0) },
        "rademacher" => DistSpec::Rademacher,
        "uniform" => DistSpec::Uniform { a: take("a", -1.0), b: take("b", 1.0) },
        "bernoulli" | "bernoulli_scaled" => DistSpec::BernoulliScaled { lambda: take("lambda", 1.0) },
        "stable" | "stable_domain" => DistSpec::StableDomain {
            alpha: take("alpha", 1.5),
            theta: take("theta", 0.5),
            scale: take("scale", 1.0),
        },
        other => {
            return Err(CliError::usage(format!(
                "--dist: unknown law {other:?}; expected gaussian, rademacher, uniform, bernoulli or stable"
            )))
        }
    };
    if let Some((k, _)) = pairs.first() {
        return Err(CliError::usage(format!(
            "--dist: {} takes no parameter {k:?}",
            spec.name()
        )));
    }
    spec.validate()
        .map_err(|e| CliError::usage(format!("--dist: {e}")))?;
    Ok(spec)
}

/// The canonical `--dist` text for `spec`, with every parameter spelled out.
pub fn dist_to_flag(spec: &DistSpec) -> String {
    match *spec {
        DistSpec::Gaussian { mean, variance } => {
            format!("gaussian:mean={mean},variance={variance}")
        }
        DistSpec::Rademacher => "rademacher".into(),
        DistSpec::Uniform { a, b } => format!("uniform:a={a},b={b}"),
        DistSpec::BernoulliScaled { lambda } => format!("bernoulli:lambda={lambda}"),
        DistSpec::StableDomain {
            alpha,
            theta,
            scale,
        } => {
            format!("stable:alpha={alpha},theta={theta},scale={scale}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_flags() {
        assert_eq!(
            parse_dist("gaussian").unwrap(),
            DistSpec::standard_gaussian()
        );
        assert_eq!(
            parse_dist("stable:alpha=1.2").unwrap(),
            DistSpec::StableDomain {
                alpha: 1.2,
                theta: 0.5,
                scale: 1.0
            }
        );
        assert!(parse_dist("gaussian:lambda=2").is_err());
        assert!(parse_dist("cauchy").is_err());
        assert!(parse_dist("stable:alpha=2.5").is_err());
        for s in [
            "rademacher",
            "uniform:a=0,b=3",
            "bernoulli:lambda=2",
            "gaussian:mean=1,variance=4",
        ] {
            let d = parse_dist(s).unwrap();
            assert_eq!(parse_dist(&dist_to_flag(&d)).unwrap(), d);
        }
    }

    #[test]
    fn kind_comes_from_the_subcommand() {
        let text = "ell = 2\nN = 10\nseed = 1\n[dist]\nkind = \"rademacher\"\n";
        let c = parse_config(text, Some(ExperimentKind::CltRoots)).unwrap();
        assert_eq!(c.kind, ExperimentKind::CltRoots);
        assert_eq!(c.trials, 2000);
        let clash = format!("kind = \"id_limit\"\n{text}");
        assert!(matches!(
            parse_config(&clash, Some(ExperimentKind::CltRoots)),
            Err(CliError::Usage(_))
        ));
        assert!(parse_config(
            "ell = 2\nN = 10\n[dist]\nkind = \"rademacher\"\n",
            Some(ExperimentKind::CltRoots)
        )
        .is_err());
        assert!(parse_config(
            &format!("bogus = 1\n{text}"),
            Some(ExperimentKind::CltRoots)
        )
        .is_err());
    }
}
