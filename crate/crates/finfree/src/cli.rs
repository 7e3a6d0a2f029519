//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 when every gating check passes (or an algebra command
//! succeeds), 2 when an experiment fails a gating check, 1 on usage or
//! runtime errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use finfree_core::experiments::{run, ExperimentConfig, ExperimentKind};
use finfree_core::Rational;
use serde::Deserialize;

use crate::algebra;
use crate::config::{load_config, parse_dist, to_toml};
use crate::exec::ParallelExecutor;
use crate::output::{report_json, write_all, CONFIG_FILE};
use crate::CliError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_STAT_FAIL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "finfree",
    version,
    about = "Finite free cumulants, convolution and random-polynomial limit experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monic probabilists' Hermite polynomial He_k
    Hermite(HermiteArgs),
    /// Monic Laguerre polynomial n! (-1)^n L_n^(alpha)
    Laguerre(LaguerreArgs),
    /// Finite free additive convolution of two monic polynomials of equal degree
    Convolve(ConvolveArgs),
    /// Finite free cumulants of a monic polynomial
    Cumulants(CumulantsArgs),
    /// Monic normalized derivative of degree k
    Derive(DeriveArgs),
    /// Convergence of the shifted, dilated derivative to He_ell
    HsLimit(ExperimentArgs),
    /// Root fluctuations around the Hermite roots
    CltRoots(ExperimentArgs),
    /// Coefficient fluctuations along He_{ell-2}
    CltPoly(ExperimentArgs),
    /// Fluctuations of the finite free cumulants
    CltCumulants(ExperimentArgs),
    /// Infinitely divisible limits under D_N derivatives
    IdLimit(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Algebra: a JSON array. Experiments: the full report on stdout.
    Json,
    /// Algebra: one value per line. Experiments: a one-line summary.
    #[default]
    Text,
}

#[derive(Debug, Args)]
pub struct AlgebraOutput {
    /// Output format; algebra commands default to json
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Print non-integers as exact "num/den" strings
    #[arg(long)]
    pub exact: bool,
    /// TOML file with the command's inputs; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HermiteArgs {
    #[arg(long)]
    pub degree: Option<usize>,
    #[command(flatten)]
    pub output: AlgebraOutput,
}

#[derive(Debug, Args)]
pub struct LaguerreArgs {
    #[arg(long)]
    pub degree: Option<usize>,
    /// Parameter alpha: integer, decimal or num/den
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[command(flatten)]
    pub output: AlgebraOutput,
}

#[derive(Debug, Args)]
pub struct ConvolveArgs {
    /// Coefficients, leading 1 first, e.g. "[1,-2,1]"
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[command(flatten)]
    pub output: AlgebraOutput,
}

#[derive(Debug, Args)]
pub struct CumulantsArgs {
    #[arg(long)]
    pub p: Option<String>,
    /// Number of cumulants; defaults to the degree
    #[arg(long)]
    pub order: Option<usize>,
    #[command(flatten)]
    pub output: AlgebraOutput,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[arg(long)]
    pub p: Option<String>,
    /// Degree of the derivative
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub output: AlgebraOutput,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// TOML experiment config; flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long = "N", value_name = "N")]
    pub n: Option<usize>,
    /// Comma-separated N ladder, e.g. 250,1000,4000
    #[arg(long, value_delimiter = ',')]
    pub ladder: Option<Vec<usize>>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Required, here or in the config
    #[arg(long)]
    pub seed: Option<u64>,
    /// Root law, e.g. gaussian, rademacher, uniform:a=-1,b=1, bernoulli:lambda=1, stable:alpha=1.5,theta=0.5
    #[arg(long)]
    pub dist: Option<String>,
    /// Directory for report.json, config.toml and the CSV files
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Worker threads; defaults to the machine's parallelism
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    match dispatch(cli.command, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs one command, printing results to `out`.
pub fn dispatch(command: Command, out: &mut impl Write) -> Result<i32, CliError> {
    let kind = match &command {
        Command::HsLimit(_) => ExperimentKind::HsLimit,
        Command::CltRoots(_) => ExperimentKind::CltRoots,
        Command::CltPoly(_) => ExperimentKind::CltPoly,
        Command::CltCumulants(_) => ExperimentKind::CltCumulants,
        Command::IdLimit(_) => ExperimentKind::IdLimit,
        _ => return run_algebra(command, out),
    };
    match command {
        Command::HsLimit(a)
        | Command::CltRoots(a)
        | Command::CltPoly(a)
        | Command::CltCumulants(a)
        | Command::IdLimit(a) => run_experiment(kind, a, out),
        _ => unreachable!("algebra commands returned above"),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    degree: Option<usize>,
    alpha: Option<Number>,
    p: Option<Vec<Number>>,
    q: Option<Vec<Number>>,
    order: Option<usize>,
    k: Option<usize>,
}

/// A TOML number or a `"num/den"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    fn rational(&self, key: &str) -> Result<Rational, CliError> {
        let text = match self {
            Number::Int(v) => v.to_string(),
            Number::Float(v) => v.to_string(),
            Number::Text(s) => s.clone(),
        };
        algebra::parse_rational(&text)
            .ok_or_else(|| CliError::usage(format!("config {key}: {text:?} is not a number")))
    }
}

fn algebra_file(path: Option<&Path>, allowed: &[&str]) -> Result<AlgebraFile, CliError> {
    let Some(path) = path else {
        return Ok(AlgebraFile::default());
    };
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Config(format!("{}: {e}", path.display())))?;
    if let Some(key) = table.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::Config(format!(
            "{}: unknown key {key:?}; expected one of {allowed:?}",
            path.display()
        )));
    }
    table
        .try_into()
        .map_err(|e: toml::de::Error| CliError::Config(format!("{}: {e}", path.display())))
}

fn list(
    flag: &str,
    cli: Option<&String>,
    file: Option<&Vec<Number>>,
) -> Result<Vec<Rational>, CliError> {
    match (cli, file) {
        (Some(text), _) => algebra::parse_list(flag, text),
        (None, Some(values)) => values
            .iter()
            .map(|v| v.rational(flag.trim_start_matches('-')))
            .collect(),
        (None, None) => Err(CliError::usage(format!("{flag} is required"))),
    }
}

fn required<T>(flag: &str, value: Option<T>) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::usage(format!("{flag} is required")))
}

fn run_algebra(command: Command, out: &mut impl Write) -> Result<i32, CliError> {
    let (values, output) = match command {
        Command::Hermite(a) => {
            let f = algebra_file(a.output.config.as_deref(), &["degree"])?;
            (
                algebra::hermite(required("--degree", a.degree.or(f.degree))?)?,
                a.output,
            )
        }
        Command::Laguerre(a) => {
            let f = algebra_file(a.output.config.as_deref(), &["degree", "alpha"])?;
            let alpha = match (&a.alpha, &f.alpha) {
                (Some(text), _) => algebra::parse_rational(text)
                    .ok_or_else(|| CliError::usage(format!("--alpha: {text:?} is not a number")))?,
                (None, Some(v)) => v.rational("alpha")?,
                (None, None) => return Err(CliError::usage("--alpha is required")),
            };
            (
                algebra::laguerre(required("--degree", a.degree.or(f.degree))?, &alpha)?,
                a.output,
            )
        }
        Command::Convolve(a) => {
            let f = algebra_file(a.output.config.as_deref(), &["p", "q"])?;
            let p = list("--p", a.p.as_ref(), f.p.as_ref())?;
            let q = list("--q", a.q.as_ref(), f.q.as_ref())?;
            (algebra::convolve(&p, &q)?, a.output)
        }
        Command::Cumulants(a) => {
            let f = algebra_file(a.output.config.as_deref(), &["p", "order"])?;
            let p = list("--p", a.p.as_ref(), f.p.as_ref())?;
            (algebra::cumulants(&p, a.order.or(f.order))?, a.output)
        }
        Command::Derive(a) => {
            let f = algebra_file(a.output.config.as_deref(), &["p", "k"])?;
            let p = list("--p", a.p.as_ref(), f.p.as_ref())?;
            (
                algebra::derive(&p, required("--k", a.k.or(f.k))?)?,
                a.output,
            )
        }
        _ => unreachable!("experiments are dispatched separately"),
    };
    let text = match output.format.unwrap_or(Format::Json) {
        Format::Json => algebra::format_json(&values, output.exact),
        Format::Text => algebra::format_text(&values, output.exact),
    };
    writeln!(out, "{text}").map_err(CliError::io("<stdout>"))?;
    Ok(EXIT_PASS)
}

/// Merges the config file (if any) with the flags; flags win.
pub fn resolve_config(
    kind: ExperimentKind,
    args: &ExperimentArgs,
) -> Result<ExperimentConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => load_config(path, Some(kind))?,
        None => {
            let ell = required("--ell", args.ell)?;
            let n = required("--N", args.n)?;
            let seed = args
                .seed
                .ok_or_else(|| CliError::usage("--seed is required (there is no default seed)"))?;
            ExperimentConfig::new(
                kind,
                ell,
                n,
                seed,
                finfree_core::randgen::DistSpec::standard_gaussian(),
            )
        }
    };
    if let Some(v) = args.ell {
        config.ell = v;
    }
    if let Some(v) = args.n {
        config.n = v;
    }
    if let Some(v) = &args.ladder {
        config.n_ladder = v.clone();
    }
    if let Some(v) = args.trials {
        config.trials = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = &args.dist {
        config.dist = parse_dist(v)?;
    }
    if i64::try_from(config.seed).is_err() {
        return Err(CliError::usage(format!(
            "--seed: must be at most {} so the config stays valid TOML",
            i64::MAX
        )));
    }
    config
        .validate()
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(config)
}

fn run_experiment(
    kind: ExperimentKind,
    args: ExperimentArgs,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    let config = resolve_config(kind, &args)?;
    let exec =
        ParallelExecutor::new(args.jobs).map_err(|e| CliError::usage(format!("--jobs: {e}")))?;
    let report = run(&config, &exec)?;
    match &args.out {
        Some(dir) => {
            write_all(dir, &report)?;
            eprintln!("canonical config: {}", dir.join(CONFIG_FILE).display());
        }
        None => eprintln!("canonical config:\n{}", to_toml(&config)?),
    }
    let text = match args.format {
        Format::Json => report_json(&report)?,
        Format::Text => report.summary(),
    };
    writeln!(out, "{text}").map_err(CliError::io("<stdout>"))?;
    Ok(if report.pass {
        EXIT_PASS
    } else {
        EXIT_STAT_FAIL
    })
}
