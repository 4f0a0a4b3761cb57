//! Empirical legibility from human goal guesses, with bootstrap intervals.
//!
//! Observers watch a partial trajectory and name the goal they believe it
//! is heading for. The empirical legibility of an item is simply the
//! fraction of correct guesses; a guess of "none" counts as incorrect.
//! Uncertainty comes from a seeded percentile bootstrap over observers.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::Dataset;
use crate::error::Error;
use crate::seed::derive_seed;
use crate::trajectory::{Fraction, Scene};

/// What one observer answered for one shown item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Guess {
    /// The observer named this goal.
    Goal(String),
    /// The observer declined to commit to any goal.
    NoAnswer,
}

/// One observer response to one shown item.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseRecord {
    pub trajectory_id: String,
    pub fraction: Fraction,
    /// Present when the observer saw a specific camera rendering.
    pub viewpoint_id: Option<String>,
    pub participant_id: String,
    pub guess: Guess,
    /// Seconds until the observer answered, when recorded.
    pub response_time_s: Option<f64>,
}

/// Identifies one shown item: a trajectory prefix, optionally under a
/// specific viewpoint. Orders lexicographically, viewpoint-free first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ItemKey {
    pub trajectory_id: String,
    pub fraction: Fraction,
    pub viewpoint_id: Option<String>,
}

impl ItemKey {
    pub fn for_response(response: &ResponseRecord) -> Self {
        ItemKey {
            trajectory_id: response.trajectory_id.clone(),
            fraction: response.fraction,
            viewpoint_id: response.viewpoint_id.clone(),
        }
    }

    /// Strings hashed into this item's RNG seed.
    pub fn seed_parts(&self) -> [String; 3] {
        [
            self.trajectory_id.clone(),
            format!("{}", self.fraction),
            match &self.viewpoint_id {
                Some(id) => format!("v:{id}"),
                None => String::from("-"),
            },
        ]
    }
}

/// The empirical legibility of one item with its bootstrap interval.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineEstimate {
    pub item: ItemKey,
    /// Fraction of observers who guessed the intended goal.
    pub legibility: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Number of responses behind the estimate.
    pub n: usize,
}

fn correctness_codes(responses: &[ResponseRecord], scene: &Scene) -> Result<Vec<f64>, Error> {
    if responses.is_empty() {
        return Err(Error::EmptyResponses);
    }
    responses
        .iter()
        .map(|response| match &response.guess {
            Guess::Goal(id) => {
                if scene.goal_index(id).is_none() {
                    return Err(Error::UnknownGoal { id: id.clone() });
                }
                Ok(if id.as_str() == scene.intended_goal() { 1.0 } else { 0.0 })
            }
            Guess::NoAnswer => Ok(0.0),
        })
        .collect()
}

/// Fraction of correct guesses among `responses`, plus the response count.
///
/// All responses must belong to one item in `scene`; a guess naming a goal
/// the scene does not contain is rejected.
pub fn empirical_legibility(
    responses: &[ResponseRecord],
    scene: &Scene,
) -> Result<(f64, usize), Error> {
    let codes = correctness_codes(responses, scene)?;
    let n = codes.len();
    Ok((codes.iter().sum::<f64>() / n as f64, n))
}

/// Seeded percentile bootstrap interval for an item's legibility.
///
/// Draws `resamples` resamples of the responses with replacement, takes the
/// mean correctness of each, and returns the `(1 - level) / 2` and
/// `(1 + level) / 2` quantiles of those means, interpolating linearly
/// between order statistics.
pub fn bootstrap_ci(
    responses: &[ResponseRecord],
    scene: &Scene,
    resamples: usize,
    level: f64,
    seed: u64,
) -> Result<(f64, f64), Error> {
    if resamples == 0 {
        return Err(Error::InvalidArgument { what: "resample count must be at least 1" });
    }
    if !level.is_finite() || level <= 0.0 || level >= 1.0 {
        return Err(Error::InvalidArgument { what: "confidence level must be in (0, 1)" });
    }
    let codes = correctness_codes(responses, scene)?;
    let n = codes.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut means = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        let mut total = 0.0;
        for _ in 0..n {
            total += codes[rng.gen_range(0..n)];
        }
        means.push(total / n as f64);
    }
    means.sort_by(f64::total_cmp);
    let alpha = (1.0 - level) / 2.0;
    Ok((quantile(&means, alpha), quantile(&means, 1.0 - alpha)))
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let position = (sorted.len() - 1) as f64 * q;
    let below = position.floor() as usize;
    let above = position.ceil() as usize;
    sorted[below] + (position - below as f64) * (sorted[above] - sorted[below])
}

/// Estimates every item that has responses in `dataset`, in canonical item
/// order. Each item gets its own RNG stream derived from `master_seed` and
/// its key, so estimates do not depend on what else is in the dataset.
pub fn baseline_for_dataset(
    dataset: &Dataset,
    resamples: usize,
    level: f64,
    master_seed: u64,
) -> Result<Vec<BaselineEstimate>, Error> {
    let mut grouped: BTreeMap<ItemKey, Vec<&ResponseRecord>> = BTreeMap::new();
    for response in dataset.responses() {
        grouped.entry(ItemKey::for_response(response)).or_default().push(response);
    }
    let mut estimates = Vec::with_capacity(grouped.len());
    for (item, refs) in grouped {
        let scene = dataset
            .scene_for_trajectory(&item.trajectory_id)
            .ok_or_else(|| Error::DanglingReference {
                kind: "trajectory",
                id: item.trajectory_id.clone(),
            })?;
        let responses: Vec<ResponseRecord> = refs.into_iter().cloned().collect();
        let (legibility, n) = empirical_legibility(&responses, scene)?;
        let parts = item.seed_parts();
        let seed = derive_seed(
            master_seed,
            &[parts[0].as_str(), parts[1].as_str(), parts[2].as_str()],
        );
        let (ci_low, ci_high) = bootstrap_ci(&responses, scene, resamples, level, seed)?;
        estimates.push(BaselineEstimate { item, legibility, ci_low, ci_high, n });
    }
    Ok(estimates)
}
