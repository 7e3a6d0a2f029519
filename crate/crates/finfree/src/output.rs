//! Report files. Every file carries `format_version`: a top-level field in
//! JSON and the first column of every CSV row.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use finfree_core::experiments::{Curves, ExperimentReport, Histogram, TrialTable, FORMAT_VERSION};

use crate::config::to_toml;
use crate::CliError;

pub const REPORT_FILE: &str = "report.json";
pub const TRIALS_FILE: &str = "trials.csv";
pub const HISTOGRAM_FILE: &str = "histogram.csv";
pub const CURVES_FILE: &str = "curves.csv";
/// The resolved config; `--config` on it reproduces the run.
pub const CONFIG_FILE: &str = "config.toml";

fn csv_err(e: csv::Error) -> CliError {
    CliError::Output(e.to_string())
}

fn num(v: f64) -> String {
    v.to_string()
}

pub fn report_json(report: &ExperimentReport) -> Result<String, CliError> {
    serde_json::to_string_pretty(report).map_err(|e| CliError::Output(e.to_string()))
}

/// `format_version, <table columns...>`, one row per trial.
pub fn write_trials_csv<W: Write>(w: W, table: &TrialTable) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let version = FORMAT_VERSION.to_string();
    out.write_record(
        std::iter::once("format_version").chain(table.columns.iter().map(String::as_str)),
    )
    .map_err(csv_err)?;
    for row in &table.rows {
        out.write_record(std::iter::once(version.clone()).chain(row.iter().map(|v| num(*v))))
            .map_err(csv_err)?;
    }
    out.flush().map_err(CliError::io(TRIALS_FILE))
}

/// `format_version, bin_lo, bin_hi, <one count column per series>`.
pub fn write_histogram_csv<W: Write>(w: W, hist: &Histogram) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let version = FORMAT_VERSION.to_string();
    let head = ["format_version", "bin_lo", "bin_hi"];
    out.write_record(
        head.into_iter()
            .chain(hist.columns.iter().map(String::as_str)),
    )
    .map_err(csv_err)?;
    for (b, edge) in hist.edges.windows(2).enumerate() {
        let mut row = vec![version.clone(), num(edge[0]), num(edge[1])];
        row.extend(
            hist.counts
                .iter()
                .map(|c| c.get(b).copied().unwrap_or(0).to_string()),
        );
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush().map_err(CliError::io(HISTOGRAM_FILE))
}

/// `format_version, <x label>, <curve columns...>`, one row per grid point.
pub fn write_curves_csv<W: Write>(w: W, curves: &Curves) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let version = FORMAT_VERSION.to_string();
    out.write_record(
        ["format_version", curves.x_label.as_str()]
            .into_iter()
            .chain(curves.columns.iter().map(String::as_str)),
    )
    .map_err(csv_err)?;
    for (i, x) in curves.x.iter().enumerate() {
        let mut row = vec![version.clone(), num(*x)];
        row.extend(curves.values.iter().map(|c| num(c[i])));
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush().map_err(CliError::io(CURVES_FILE))
}

fn create(dir: &Path, name: &str) -> Result<(fs::File, PathBuf), CliError> {
    let path = dir.join(name);
    let file = fs::File::create(&path).map_err(CliError::io(&path))?;
    Ok((file, path))
}

/// Writes every artifact of `report` into `dir`, creating it if needed.
pub fn write_all(dir: &Path, report: &ExperimentReport) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    let mut written = Vec::new();

    let (mut f, path) = create(dir, REPORT_FILE)?;
    writeln!(f, "{}", report_json(report)?).map_err(CliError::io(&path))?;
    written.push(path);

    let (mut f, path) = create(dir, CONFIG_FILE)?;
    f.write_all(to_toml(&report.config)?.as_bytes())
        .map_err(CliError::io(&path))?;
    written.push(path);

    let (f, path) = create(dir, TRIALS_FILE)?;
    write_trials_csv(f, &report.trials)?;
    written.push(path);

    if let Some(h) = &report.histogram {
        let (f, path) = create(dir, HISTOGRAM_FILE)?;
        write_histogram_csv(f, h)?;
        written.push(path);
    }
    if let Some(c) = &report.curves {
        let (f, path) = create(dir, CURVES_FILE)?;
        write_curves_csv(f, c)?;
        written.push(path);
    }
    Ok(written)
}
