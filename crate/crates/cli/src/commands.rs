//! The four subcommands as library functions, shared by the binary and the
//! integration tests.

use std::fs;
use std::path::Path;

use legibility_core::baseline::{baseline_for_dataset, BaselineEstimate};
use legibility_core::dataset::Dataset;
use legibility_core::frameworks::{score_all, ScoreOutcome};
use legibility_core::stats::{framework_baseline_table, framework_framework_matrix};
use legibility_core::synthgen::generate_dataset;

use crate::config::resolve_config;
use crate::error::HarnessError;
use crate::formats::{load_dataset, load_synth_spec, write_dataset};
use crate::report::{
    build_report, write_baseline_csv, write_framework_baseline_csv, write_matrix_csv,
    write_report_json, write_scores_csv, BenchmarkReport,
};

fn ensure_dir(dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(dir).map_err(|source| HarnessError::io(dir, source))
}

/// Scores every item with the enabled frameworks and writes scores.csv.
pub fn cmd_score(
    data_dir: &Path,
    config_path: Option<&Path>,
    frameworks: Option<&str>,
    out_dir: &Path,
) -> Result<ScoreOutcome, HarnessError> {
    let dataset = load_dataset(data_dir)?;
    let config = resolve_config(config_path, frameworks)?;
    let outcome = score_all(&dataset, &config)?;
    ensure_dir(out_dir)?;
    write_scores_csv(&out_dir.join("scores.csv"), &outcome.records)?;
    Ok(outcome)
}

/// Estimates per-item empirical legibility with bootstrap intervals and
/// writes baseline.csv.
pub fn cmd_baseline(
    data_dir: &Path,
    out_dir: &Path,
    resamples: usize,
    level: f64,
    seed: u64,
) -> Result<Vec<BaselineEstimate>, HarnessError> {
    let dataset = load_dataset(data_dir)?;
    if dataset.responses().is_empty() {
        return Err(HarnessError::Invalid(String::from(
            "dataset has no observer responses; add responses.csv to estimate the baseline",
        )));
    }
    let estimates = baseline_for_dataset(&dataset, resamples, level, seed)?;
    ensure_dir(out_dir)?;
    write_baseline_csv(&out_dir.join("baseline.csv"), &estimates)?;
    Ok(estimates)
}

/// Runs the full pipeline and writes all five report files.
#[allow(clippy::too_many_arguments)]
pub fn cmd_benchmark(
    data_dir: &Path,
    config_path: Option<&Path>,
    frameworks: Option<&str>,
    out_dir: &Path,
    resamples: usize,
    level: f64,
    seed: u64,
) -> Result<BenchmarkReport, HarnessError> {
    let dataset = load_dataset(data_dir)?;
    let config = resolve_config(config_path, frameworks)?;
    let outcome = score_all(&dataset, &config)?;
    let estimates = baseline_for_dataset(&dataset, resamples, level, seed)?;
    let table = framework_baseline_table(&outcome.records, &estimates);
    let matrix = framework_framework_matrix(&outcome.records);
    let report =
        build_report(seed, resamples, level, &config, &outcome, &estimates, &table, &matrix);
    ensure_dir(out_dir)?;
    write_scores_csv(&out_dir.join("scores.csv"), &outcome.records)?;
    write_baseline_csv(&out_dir.join("baseline.csv"), &estimates)?;
    write_framework_baseline_csv(&out_dir.join("framework_baseline.csv"), &table)?;
    write_matrix_csv(&out_dir.join("framework_matrix.csv"), &matrix)?;
    write_report_json(&out_dir.join("report.json"), &report)?;
    Ok(report)
}

/// Generates a synthetic dataset from a JSON recipe and writes it as a
/// loadable dataset directory.
pub fn cmd_synth(
    spec_path: &Path,
    out_dir: &Path,
    seed_override: Option<u64>,
) -> Result<Dataset, HarnessError> {
    let mut spec = load_synth_spec(spec_path)?;
    if let Some(seed) = seed_override {
        spec.seed = seed;
    }
    let dataset = generate_dataset(&spec)?;
    write_dataset(&dataset, out_dir)?;
    Ok(dataset)
}
