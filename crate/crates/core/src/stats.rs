//! Rank correlation between framework scores and the human baseline.
//!
//! Association strength is summarized by Spearman's coefficient, computed
//! as the Pearson correlation of tie-averaged ranks. Table builders pair
//! score records with baseline estimates (or with each other) and keep
//! degenerate inputs as flagged rows instead of failing the whole run.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::baseline::{BaselineEstimate, ItemKey};
use crate::error::Error;
use crate::frameworks::{FrameworkId, ScoreRecord};

/// Association strength band on the absolute coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bin {
    Low,
    Medium,
    High,
}

impl fmt::Display for Bin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bin::Low => "low",
            Bin::Medium => "medium",
            Bin::High => "high",
        })
    }
}

/// Bands |rho|: below 0.3 is low, below 0.5 is medium, the rest is high.
pub fn bin_correlation(rho: f64) -> Bin {
    let magnitude = rho.abs();
    if magnitude < 0.3 {
        Bin::Low
    } else if magnitude < 0.5 {
        Bin::Medium
    } else {
        Bin::High
    }
}

/// A computed rank correlation over `n` pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult {
    pub rho: f64,
    pub n: usize,
    pub bin: Bin,
}

/// One-based ranks with ties assigned the mean of the positions they cover.
pub fn average_ranks(values: &[f64]) -> Result<Vec<f64>, Error> {
    if values.is_empty() {
        return Err(Error::InvalidArgument { what: "cannot rank an empty list" });
    }
    if values.iter().any(|value| !value.is_finite()) {
        return Err(Error::NonFinite { context: "rank input" });
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let mean_rank = (start + 1 + end) as f64 / 2.0;
        for &index in &order[start..end] {
            ranks[index] = mean_rank;
        }
        start = end;
    }
    Ok(ranks)
}

/// Spearman's rank correlation between two paired lists.
///
/// Needs at least three pairs; a side whose values are all equal has no
/// rank variance, which is reported instead of dividing by zero.
pub fn spearman_rho(left: &[f64], right: &[f64]) -> Result<CorrelationResult, Error> {
    if left.len() != right.len() {
        return Err(Error::LengthMismatch { left: left.len(), right: right.len() });
    }
    if left.len() < 3 {
        return Err(Error::InsufficientPairs { needed: 3, got: left.len() });
    }
    let rank_left = average_ranks(left)?;
    let rank_right = average_ranks(right)?;
    let n = left.len() as f64;
    let mean_left = rank_left.iter().sum::<f64>() / n;
    let mean_right = rank_right.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den_left = 0.0;
    let mut den_right = 0.0;
    for (rl, rr) in rank_left.iter().zip(&rank_right) {
        let dl = rl - mean_left;
        let dr = rr - mean_right;
        num += dl * dr;
        den_left += dl * dl;
        den_right += dr * dr;
    }
    if den_left == 0.0 {
        return Err(Error::ConstantValues { side: "left" });
    }
    if den_right == 0.0 {
        return Err(Error::ConstantValues { side: "right" });
    }
    let rho = num / (den_left * den_right).sqrt();
    Ok(CorrelationResult { rho, n: left.len(), bin: bin_correlation(rho) })
}

/// What pairing a framework against a reference produced.
#[derive(Debug, Clone, PartialEq)]
pub enum AssociationOutcome {
    Correlated(CorrelationResult),
    /// A side had no rank variance, so the coefficient is undefined and
    /// reported as no detectable association.
    ZeroAssociation { n: usize, reason: String },
    /// Fewer than three pairs could be formed.
    Insufficient { got: usize },
}

/// One row of the framework-versus-baseline benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameworkBaselineRow {
    pub framework: FrameworkId,
    /// Score records that found a baseline estimate.
    pub n_matched: usize,
    /// Score records with no matching estimate.
    pub n_excluded: usize,
    pub outcome: AssociationOutcome,
}

fn baseline_value(
    baselines: &BTreeMap<ItemKey, f64>,
    record: &ScoreRecord,
) -> Option<f64> {
    let exact = ItemKey {
        trajectory_id: record.trajectory_id.clone(),
        fraction: record.fraction,
        viewpoint_id: record.viewpoint_id.clone(),
    };
    if let Some(&value) = baselines.get(&exact) {
        return Some(value);
    }
    if record.viewpoint_id.is_some() {
        let pooled = ItemKey { viewpoint_id: None, ..exact };
        if let Some(&value) = baselines.get(&pooled) {
            return Some(value);
        }
    }
    None
}

fn associate(scores: Vec<f64>, reference: Vec<f64>, reason_left: &str, reason_right: &str) -> AssociationOutcome {
    match spearman_rho(&scores, &reference) {
        Ok(result) => AssociationOutcome::Correlated(result),
        Err(Error::InsufficientPairs { got, .. }) => AssociationOutcome::Insufficient { got },
        Err(Error::ConstantValues { side }) => AssociationOutcome::ZeroAssociation {
            n: scores.len(),
            reason: String::from(if side == "left" { reason_left } else { reason_right }),
        },
        Err(error) => AssociationOutcome::ZeroAssociation {
            n: scores.len(),
            reason: format!("{error}"),
        },
    }
}

/// Pairs every framework's score records with the empirical baseline and
/// correlates them, keeping the coefficient's sign.
///
/// A record matches the estimate for its exact (trajectory, fraction,
/// viewpoint) item; records carrying a viewpoint fall back to the pooled
/// item estimate when no per-viewpoint estimate exists.
pub fn framework_baseline_table(
    records: &[ScoreRecord],
    baselines: &[BaselineEstimate],
) -> Vec<FrameworkBaselineRow> {
    let by_item: BTreeMap<ItemKey, f64> = baselines
        .iter()
        .map(|estimate| (estimate.item.clone(), estimate.legibility))
        .collect();
    let frameworks: BTreeSet<FrameworkId> =
        records.iter().map(|record| record.framework).collect();

    frameworks
        .into_iter()
        .map(|framework| {
            let mut scores = Vec::new();
            let mut reference = Vec::new();
            let mut excluded = 0;
            for record in records.iter().filter(|record| record.framework == framework) {
                match baseline_value(&by_item, record) {
                    Some(value) => {
                        scores.push(record.value);
                        reference.push(value);
                    }
                    None => excluded += 1,
                }
            }
            let n_matched = scores.len();
            let outcome = associate(
                scores,
                reference,
                "framework scores are constant across items",
                "baseline legibility is constant across items",
            );
            FrameworkBaselineRow { framework, n_matched, n_excluded: excluded, outcome }
        })
        .collect()
}

/// One cell of the framework agreement matrix, on absolute coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCell {
    pub a: FrameworkId,
    pub b: FrameworkId,
    /// Items scored by both frameworks.
    pub n: usize,
    pub outcome: AssociationOutcome,
}

/// Correlates every pair of frameworks over the items both scored.
///
/// Returns the upper triangle in canonical order, diagonal included; the
/// diagonal is the trivial perfect correlation over the framework's own
/// items. Off-diagonal coefficients are reported as magnitudes.
pub fn framework_framework_matrix(records: &[ScoreRecord]) -> Vec<MatrixCell> {
    let mut by_framework: BTreeMap<FrameworkId, BTreeMap<ItemKey, f64>> = BTreeMap::new();
    for record in records {
        let key = ItemKey {
            trajectory_id: record.trajectory_id.clone(),
            fraction: record.fraction,
            viewpoint_id: record.viewpoint_id.clone(),
        };
        by_framework.entry(record.framework).or_default().insert(key, record.value);
    }
    let frameworks: Vec<FrameworkId> = by_framework.keys().copied().collect();

    let mut cells = Vec::new();
    for (i, &a) in frameworks.iter().enumerate() {
        for &b in &frameworks[i..] {
            if a == b {
                let n = by_framework[&a].len();
                cells.push(MatrixCell {
                    a,
                    b,
                    n,
                    outcome: AssociationOutcome::Correlated(CorrelationResult {
                        rho: 1.0,
                        n,
                        bin: Bin::High,
                    }),
                });
                continue;
            }
            let left_items = &by_framework[&a];
            let right_items = &by_framework[&b];
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (key, &value) in left_items {
                if let Some(&other) = right_items.get(key) {
                    left.push(value);
                    right.push(other);
                }
            }
            let n = left.len();
            let mut outcome = associate(
                left,
                right,
                "scores are constant across shared items",
                "scores are constant across shared items",
            );
            if let AssociationOutcome::Correlated(result) = &mut outcome {
                result.rho = result.rho.abs();
                result.bin = bin_correlation(result.rho);
            }
            cells.push(MatrixCell { a, b, n, outcome });
        }
    }
    cells
}
