//! Trajectories, scenes, and the shared numerical primitives.
//!
//! A [`Trajectory`] is a time-stamped polyline of end-effector positions; a
//! [`Scene`] is the set of candidate goals it could be reaching for. Every
//! scorer in [`crate::frameworks`] is built from the handful of operations
//! defined here: prefix truncation, finite differences, trapezoid
//! integration, arc length, and per-goal distance series. All integrals are
//! evaluated on the trajectory's own sample grid; nothing is resampled.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Sub};


use crate::error::Error;

/// A position in world space, in meters. Also used for displacements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        Point3 {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance(self, other: Self) -> f64 {
        (other - self).norm()
    }

    pub fn scale(self, k: f64) -> Self {
        Point3 { x: self.x * k, y: self.y * k, z: self.z * k }
    }

    /// Linear interpolation; `alpha` = 0 yields `self`, 1 yields `other`.
    pub fn lerp(self, other: Self, alpha: f64) -> Self {
        self + (other - self).scale(alpha)
    }
}

impl Add for Point3 {
    type Output = Point3;

    fn add(self, other: Point3) -> Point3 {
        Point3 { x: self.x + other.x, y: self.y + other.y, z: self.z + other.z }
    }
}

impl Sub for Point3 {
    type Output = Point3;

    fn sub(self, other: Point3) -> Point3 {
        Point3 { x: self.x - other.x, y: self.y - other.y, z: self.z - other.z }
    }
}

/// How much of a trajectory an observer was shown, as a fraction of its
/// total duration. Always finite and in (0, 1], so it can serve as an
/// ordered map key.
#[derive(Debug, Clone, Copy)]
pub struct Fraction(f64);

impl Fraction {
    pub const FULL: Fraction = Fraction(1.0);

    pub fn new(value: f64) -> Result<Self, Error> {
        if !value.is_finite() || value <= 0.0 || value > 1.0 {
            return Err(Error::InvalidFraction { value });
        }
        Ok(Fraction(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Fraction {}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl core::fmt::Display for Fraction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One time-stamped sample of an end-effector path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    /// Seconds since recording started.
    pub t: f64,
    /// World-space position.
    pub p: Point3,
}

/// Which derivative [`Trajectory::finite_difference_series`] estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    Velocity,
    Jerk,
}

impl DerivativeOrder {
    fn min_samples(self) -> usize {
        match self {
            DerivativeOrder::Velocity => 2,
            DerivativeOrder::Jerk => 4,
        }
    }

    fn differentiations(self) -> usize {
        match self {
            DerivativeOrder::Velocity => 1,
            DerivativeOrder::Jerk => 3,
        }
    }
}

/// A validated end-effector path: at least two samples, finite positions,
/// nonnegative strictly increasing timestamps.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    id: String,
    scene_id: String,
    samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn new(
        id: String,
        scene_id: String,
        samples: Vec<TrajectorySample>,
    ) -> Result<Self, Error> {
        if samples.len() < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: samples.len() });
        }
        for (index, sample) in samples.iter().enumerate() {
            if !sample.t.is_finite() || !sample.p.is_finite() {
                return Err(Error::NonFinite { context: "trajectory sample" });
            }
            if sample.t < 0.0 {
                return Err(Error::NegativeTimestamp { index });
            }
            if index > 0 && sample.t <= samples[index - 1].t {
                return Err(Error::TimestampsNotIncreasing { index });
            }
        }
        Ok(Trajectory { id, scene_id, samples })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn scene_id(&self) -> &str {
        &self.scene_id
    }

    pub fn samples(&self) -> &[TrajectorySample] {
        &self.samples
    }

    pub fn start(&self) -> Point3 {
        self.samples[0].p
    }

    pub fn end(&self) -> Point3 {
        self.samples[self.samples.len() - 1].p
    }

    pub fn start_time(&self) -> f64 {
        self.samples[0].t
    }

    pub fn end_time(&self) -> f64 {
        self.samples[self.samples.len() - 1].t
    }

    pub fn duration(&self) -> f64 {
        self.end_time() - self.start_time()
    }

    /// The prefix an observer sees after `fraction` of the duration.
    ///
    /// Keeps every sample at or before the cut time and, when the cut falls
    /// between samples, appends one linearly interpolated sample exactly at
    /// it. `Fraction::FULL` returns an identical copy.
    pub fn truncate_to_fraction(&self, fraction: Fraction) -> Result<Trajectory, Error> {
        if fraction.value() == 1.0 {
            return Ok(self.clone());
        }
        let cut = self.start_time() + fraction.value() * self.duration();
        let mut kept: Vec<TrajectorySample> = self
            .samples
            .iter()
            .take_while(|sample| sample.t <= cut)
            .copied()
            .collect();
        if let Some(last) = kept.last().copied() {
            if last.t < cut {
                let next = self.samples[kept.len()];
                let alpha = (cut - last.t) / (next.t - last.t);
                kept.push(TrajectorySample { t: cut, p: last.p.lerp(next.p, alpha) });
            }
        }
        if kept.len() < 2 || kept[kept.len() - 1].t <= kept[0].t {
            return Err(Error::DegeneratePartial);
        }
        Trajectory::new(self.id.clone(), self.scene_id.clone(), kept)
    }

    /// Derivative estimates on the sample grid: central differences at
    /// interior samples, one-sided at the two ends. Higher orders apply the
    /// same first-difference stencil repeatedly, so affine paths have
    /// exactly zero jerk.
    pub fn finite_difference_series(
        &self,
        order: DerivativeOrder,
    ) -> Result<Vec<(f64, Point3)>, Error> {
        if self.samples.len() < order.min_samples() {
            return Err(Error::TooFewSamples {
                needed: order.min_samples(),
                got: self.samples.len(),
            });
        }
        let mut series: Vec<(f64, Point3)> =
            self.samples.iter().map(|sample| (sample.t, sample.p)).collect();
        for _ in 0..order.differentiations() {
            series = first_difference(&series);
        }
        Ok(series)
    }

    /// Total polyline length: the sum of distances between consecutive
    /// samples.
    pub fn arc_length(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|pair| pair[0].p.distance(pair[1].p))
            .sum()
    }

    /// Euclidean distance from every sample to `target`, on the time grid.
    pub fn distance_series(&self, target: Point3) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .map(|sample| (sample.t, sample.p.distance(target)))
            .collect()
    }
}

fn first_difference(series: &[(f64, Point3)]) -> Vec<(f64, Point3)> {
    let n = series.len();
    let slope = |a: (f64, Point3), b: (f64, Point3)| (b.1 - a.1).scale(1.0 / (b.0 - a.0));
    (0..n)
        .map(|i| {
            let d = if i == 0 {
                slope(series[0], series[1])
            } else if i == n - 1 {
                slope(series[n - 2], series[n - 1])
            } else {
                slope(series[i - 1], series[i + 1])
            };
            (series[i].0, d)
        })
        .collect()
}

/// Trapezoid rule over a sampled scalar signal `(t, value)`.
///
/// The grid must have at least two finite entries with strictly increasing
/// timestamps; this is the one quadrature used everywhere in the crate.
pub fn integrate_time_series(series: &[(f64, f64)]) -> Result<f64, Error> {
    if series.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: series.len() });
    }
    for (index, &(t, value)) in series.iter().enumerate() {
        if !t.is_finite() || !value.is_finite() {
            return Err(Error::NonFinite { context: "time series" });
        }
        if index > 0 && t <= series[index - 1].0 {
            return Err(Error::TimestampsNotIncreasing { index });
        }
    }
    Ok(series
        .windows(2)
        .map(|pair| 0.5 * (pair[0].1 + pair[1].1) * (pair[1].0 - pair[0].0))
        .sum())
}

/// A candidate reach target.
#[derive(Debug, Clone, PartialEq)]
pub struct Goal {
    pub id: String,
    pub position: Point3,
}

/// The goal layout a trajectory is scored against: two or more goals at
/// pairwise distinct positions, one of them intended, with a normalized
/// prior over all of them (uniform unless stated).
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    id: String,
    goals: Vec<Goal>,
    intended_index: usize,
    priors: Vec<f64>,
}

impl Scene {
    pub fn new(
        id: String,
        goals: Vec<Goal>,
        intended_goal: &str,
        priors: Option<&BTreeMap<String, f64>>,
    ) -> Result<Self, Error> {
        if goals.len() < 2 {
            return Err(Error::TooFewGoals { got: goals.len() });
        }
        for (index, goal) in goals.iter().enumerate() {
            if goal.id.is_empty() || goal.id == "none" {
                return Err(Error::InvalidArgument {
                    what: "goal id must be nonempty and must not be the reserved word 'none'",
                });
            }
            if !goal.position.is_finite() {
                return Err(Error::NonFinite { context: "goal position" });
            }
            for earlier in &goals[..index] {
                if earlier.id == goal.id {
                    return Err(Error::DuplicateId { id: goal.id.clone() });
                }
                if earlier.position == goal.position {
                    return Err(Error::DuplicateGoalPosition {
                        first: earlier.id.clone(),
                        second: goal.id.clone(),
                    });
                }
            }
        }
        let intended_index = goals
            .iter()
            .position(|goal| goal.id == intended_goal)
            .ok_or_else(|| Error::UnknownGoal { id: String::from(intended_goal) })?;
        let priors = match priors {
            None => vec![1.0 / goals.len() as f64; goals.len()],
            Some(map) => {
                if map.len() != goals.len() {
                    return Err(Error::InvalidPriors {
                        reason: "prior map must cover exactly the scene's goal ids",
                    });
                }
                let mut aligned = Vec::with_capacity(goals.len());
                for goal in &goals {
                    let value = *map.get(&goal.id).ok_or(Error::InvalidPriors {
                        reason: "prior map must cover exactly the scene's goal ids",
                    })?;
                    if !value.is_finite() || value < 0.0 {
                        return Err(Error::InvalidPriors {
                            reason: "priors must be finite and nonnegative",
                        });
                    }
                    aligned.push(value);
                }
                let total: f64 = aligned.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidPriors { reason: "priors must sum to 1" });
                }
                aligned
            }
        };
        Ok(Scene { id, goals, intended_index, priors })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn goals(&self) -> &[Goal] {
        &self.goals
    }

    pub fn intended_index(&self) -> usize {
        self.intended_index
    }

    pub fn intended_goal(&self) -> &str {
        &self.goals[self.intended_index].id
    }

    pub fn intended_position(&self) -> Point3 {
        self.goals[self.intended_index].position
    }

    /// Priors aligned with [`Scene::goals`] order.
    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn goal_index(&self, goal_id: &str) -> Option<usize> {
        self.goals.iter().position(|goal| goal.id == goal_id)
    }
}
