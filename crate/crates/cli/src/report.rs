//! Report files: four CSV tables plus one JSON summary.
//!
//! Float table cells print with 12 significant digits so repeated runs
//! produce byte-identical files. Display fractions print in shortest form
//! so rows can be matched back to input items by eye.

use std::fs;
use std::path::Path;

use legibility_core::baseline::BaselineEstimate;
use legibility_core::frameworks::{ScoreConfig, ScoreOutcome, ScoreRecord};
use legibility_core::stats::{AssociationOutcome, FrameworkBaselineRow, MatrixCell};
use serde::Serialize;

use crate::error::HarnessError;

/// 12 significant digits, with a plain "0" for zero.
pub fn sig12(value: f64) -> String {
    if value == 0.0 {
        String::from("0")
    } else {
        format!("{value:.11e}")
    }
}

#[derive(Debug, Serialize)]
pub struct ScoreRow {
    pub framework: String,
    pub trajectory_id: String,
    pub fraction: f64,
    pub viewpoint_id: Option<String>,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct ExclusionRow {
    pub framework: Option<String>,
    pub trajectory_id: Option<String>,
    pub fraction: Option<f64>,
    pub viewpoint_id: Option<String>,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct BaselineRow {
    pub trajectory_id: String,
    pub fraction: f64,
    pub viewpoint_id: Option<String>,
    pub legibility: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n: usize,
}

#[derive(Debug, Serialize)]
pub struct AssociationRow {
    pub framework: String,
    pub n_matched: usize,
    pub n_excluded: usize,
    pub status: String,
    pub rho: Option<f64>,
    pub bin: Option<String>,
    pub n: Option<usize>,
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct MatrixRow {
    pub framework_a: String,
    pub framework_b: String,
    pub n: usize,
    pub status: String,
    pub rho: Option<f64>,
    pub bin: Option<String>,
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct BoddenEcho {
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
}

#[derive(Debug, Serialize)]
pub struct BuschEcho {
    pub beta: f64,
    pub epsilon: f64,
}

#[derive(Debug, Serialize)]
pub struct ZhaoEcho {
    pub r0: f64,
    pub epsilon_threshold: f64,
    pub beta: f64,
}

#[derive(Debug, Serialize)]
pub struct BiedEcho {
    pub beta: f64,
    pub epsilon: f64,
    pub sigma: f64,
}

/// The effective configuration echoed into report.json.
#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub enabled: Vec<String>,
    pub bodden_point: BoddenEcho,
    pub bodden_velocity: BoddenEcho,
    pub busch: BuschEcho,
    pub zhao_fastapp: ZhaoEcho,
    pub zhao_effdist: ZhaoEcho,
    pub bied_obs_l: BiedEcho,
    pub bied_obs_p: BiedEcho,
    pub bied_obs_d: BiedEcho,
}

impl ConfigEcho {
    pub fn from_config(config: &ScoreConfig) -> Self {
        let bodden = |p: &legibility_core::frameworks::BoddenParams| BoddenEcho {
            alpha: p.alpha,
            beta: p.beta,
            epsilon: p.epsilon,
        };
        let zhao = |p: &legibility_core::frameworks::ZhaoParams| ZhaoEcho {
            r0: p.r0,
            epsilon_threshold: p.epsilon_threshold,
            beta: p.beta,
        };
        let bied = |p: &legibility_core::frameworks::BiedParams| BiedEcho {
            beta: p.beta,
            epsilon: p.epsilon,
            sigma: p.sigma,
        };
        ConfigEcho {
            enabled: config.enabled.iter().map(|id| String::from(id.name())).collect(),
            bodden_point: bodden(&config.bodden_point),
            bodden_velocity: bodden(&config.bodden_velocity),
            busch: BuschEcho { beta: config.busch.beta, epsilon: config.busch.epsilon },
            zhao_fastapp: zhao(&config.zhao_fastapp),
            zhao_effdist: zhao(&config.zhao_effdist),
            bied_obs_l: bied(&config.bied_obs_l),
            bied_obs_p: bied(&config.bied_obs_p),
            bied_obs_d: bied(&config.bied_obs_d),
        }
    }
}

/// Everything one benchmark run produced, in canonical order.
#[derive(Debug, Serialize)]
pub struct BenchmarkReport {
    pub seed: u64,
    pub bootstrap_samples: usize,
    pub level: f64,
    pub config: ConfigEcho,
    pub scores: Vec<ScoreRow>,
    pub exclusions: Vec<ExclusionRow>,
    pub baseline: Vec<BaselineRow>,
    pub framework_baseline: Vec<AssociationRow>,
    pub framework_matrix: Vec<MatrixRow>,
}

fn association_fields(
    outcome: &AssociationOutcome,
) -> (String, Option<f64>, Option<String>, Option<usize>, Option<String>) {
    match outcome {
        AssociationOutcome::Correlated(result) => (
            String::from("correlated"),
            Some(result.rho),
            Some(result.bin.to_string()),
            Some(result.n),
            None,
        ),
        AssociationOutcome::ZeroAssociation { n, reason } => (
            String::from("zero_association"),
            None,
            None,
            Some(*n),
            Some(reason.clone()),
        ),
        AssociationOutcome::Insufficient { got } => {
            (String::from("insufficient"), None, None, Some(*got), None)
        }
    }
}

fn score_row(record: &ScoreRecord) -> ScoreRow {
    ScoreRow {
        framework: String::from(record.framework.name()),
        trajectory_id: record.trajectory_id.clone(),
        fraction: record.fraction.value(),
        viewpoint_id: record.viewpoint_id.clone(),
        value: record.value,
    }
}

fn baseline_row(estimate: &BaselineEstimate) -> BaselineRow {
    BaselineRow {
        trajectory_id: estimate.item.trajectory_id.clone(),
        fraction: estimate.item.fraction.value(),
        viewpoint_id: estimate.item.viewpoint_id.clone(),
        legibility: estimate.legibility,
        ci_low: estimate.ci_low,
        ci_high: estimate.ci_high,
        n: estimate.n,
    }
}

fn association_row(row: &FrameworkBaselineRow) -> AssociationRow {
    let (status, rho, bin, n, note) = association_fields(&row.outcome);
    AssociationRow {
        framework: String::from(row.framework.name()),
        n_matched: row.n_matched,
        n_excluded: row.n_excluded,
        status,
        rho,
        bin,
        n,
        note,
    }
}

fn matrix_row(cell: &MatrixCell) -> MatrixRow {
    let (status, rho, bin, _, note) = association_fields(&cell.outcome);
    MatrixRow {
        framework_a: String::from(cell.a.name()),
        framework_b: String::from(cell.b.name()),
        n: cell.n,
        status,
        rho,
        bin,
        note,
    }
}

/// Assembles the full report from the pipeline's intermediate products.
pub fn build_report(
    seed: u64,
    bootstrap_samples: usize,
    level: f64,
    config: &ScoreConfig,
    outcome: &ScoreOutcome,
    baselines: &[BaselineEstimate],
    table: &[FrameworkBaselineRow],
    matrix: &[MatrixCell],
) -> BenchmarkReport {
    BenchmarkReport {
        seed,
        bootstrap_samples,
        level,
        config: ConfigEcho::from_config(config),
        scores: outcome.records.iter().map(score_row).collect(),
        exclusions: outcome
            .exclusions
            .iter()
            .map(|exclusion| ExclusionRow {
                framework: exclusion.framework.map(|id| String::from(id.name())),
                trajectory_id: exclusion.trajectory_id.clone(),
                fraction: exclusion.fraction.map(|fraction| fraction.value()),
                viewpoint_id: exclusion.viewpoint_id.clone(),
                reason: exclusion.reason.clone(),
            })
            .collect(),
        baseline: baselines.iter().map(baseline_row).collect(),
        framework_baseline: table.iter().map(association_row).collect(),
        framework_matrix: matrix.iter().map(matrix_row).collect(),
    }
}

fn write_csv(
    path: &Path,
    header: &[&str],
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<(), HarnessError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(header)
        .and_then(|()| rows.into_iter().try_for_each(|row| writer.write_record(&row)))
        .map_err(|error| HarnessError::format(path, error.to_string()))?;
    let bytes = writer
        .into_inner()
        .map_err(|error| HarnessError::format(path, error.to_string()))?;
    fs::write(path, bytes).map_err(|source| HarnessError::io(path, source))
}

fn optional(value: Option<String>) -> String {
    value.unwrap_or_default()
}

pub fn write_scores_csv(path: &Path, records: &[ScoreRecord]) -> Result<(), HarnessError> {
    write_csv(
        path,
        &["framework", "trajectory_id", "fraction", "viewpoint_id", "value"],
        records.iter().map(|record| {
            vec![
                String::from(record.framework.name()),
                record.trajectory_id.clone(),
                format!("{}", record.fraction),
                record.viewpoint_id.clone().unwrap_or_default(),
                sig12(record.value),
            ]
        }),
    )
}

pub fn write_baseline_csv(path: &Path, estimates: &[BaselineEstimate]) -> Result<(), HarnessError> {
    write_csv(
        path,
        &["trajectory_id", "fraction", "viewpoint_id", "legibility", "ci_low", "ci_high", "n"],
        estimates.iter().map(|estimate| {
            vec![
                estimate.item.trajectory_id.clone(),
                format!("{}", estimate.item.fraction),
                estimate.item.viewpoint_id.clone().unwrap_or_default(),
                sig12(estimate.legibility),
                sig12(estimate.ci_low),
                sig12(estimate.ci_high),
                estimate.n.to_string(),
            ]
        }),
    )
}

pub fn write_framework_baseline_csv(
    path: &Path,
    table: &[FrameworkBaselineRow],
) -> Result<(), HarnessError> {
    write_csv(
        path,
        &["framework", "n_matched", "n_excluded", "status", "rho", "bin", "note"],
        table.iter().map(|row| {
            let (status, rho, bin, _, note) = association_fields(&row.outcome);
            vec![
                String::from(row.framework.name()),
                row.n_matched.to_string(),
                row.n_excluded.to_string(),
                status,
                rho.map(sig12).unwrap_or_default(),
                optional(bin),
                optional(note),
            ]
        }),
    )
}

pub fn write_matrix_csv(path: &Path, matrix: &[MatrixCell]) -> Result<(), HarnessError> {
    write_csv(
        path,
        &["framework_a", "framework_b", "n", "status", "rho", "bin", "note"],
        matrix.iter().map(|cell| {
            let (status, rho, bin, _, note) = association_fields(&cell.outcome);
            vec![
                String::from(cell.a.name()),
                String::from(cell.b.name()),
                cell.n.to_string(),
                status,
                rho.map(sig12).unwrap_or_default(),
                optional(bin),
                optional(note),
            ]
        }),
    )
}

pub fn write_report_json(path: &Path, report: &BenchmarkReport) -> Result<(), HarnessError> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|error| HarnessError::format(path, error.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|source| HarnessError::io(path, source))
}
