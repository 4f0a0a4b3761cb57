//! The ten legibility scoring functions and the batch evaluator.
//!
//! Each scorer condenses one published measure of how clearly a motion
//! telegraphs its goal into a single scalar per trajectory prefix. They
//! share a small vocabulary: straight-line reach costs, a softmax posterior
//! over goals, distances to goals, and trapezoid integrals on the sample
//! grid. [`score_all`] runs every enabled scorer over every item in a
//! dataset, replicating angle-independent scores across viewpoints and
//! logging items it cannot score instead of aborting.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::baseline::{Guess, ResponseRecord};
use crate::camera::Viewpoint;
use crate::dataset::Dataset;
use crate::error::Error;
use crate::trajectory::{
    integrate_time_series, DerivativeOrder, Fraction, Point3, Scene, Trajectory,
};

/// Whether a framework's scale improves downward or upward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreKind {
    /// Lower scores mean more legible motion.
    Cost,
    /// Higher scores mean more legible motion.
    Reward,
}

/// Identifies one scoring function. The declaration order is the canonical
/// ordering used for all outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameworkId {
    BoddenPoint,
    BoddenVelocity,
    Dragan,
    Nikolaidis,
    Busch,
    ZhaoFastApp,
    ZhaoEffDist,
    BiedObsL,
    BiedObsP,
    BiedObsD,
}

impl FrameworkId {
    pub const ALL: [FrameworkId; 10] = [
        FrameworkId::BoddenPoint,
        FrameworkId::BoddenVelocity,
        FrameworkId::Dragan,
        FrameworkId::Nikolaidis,
        FrameworkId::Busch,
        FrameworkId::ZhaoFastApp,
        FrameworkId::ZhaoEffDist,
        FrameworkId::BiedObsL,
        FrameworkId::BiedObsP,
        FrameworkId::BiedObsD,
    ];

    /// Stable identifier used in configuration and output files.
    pub fn name(self) -> &'static str {
        match self {
            FrameworkId::BoddenPoint => "bodden_point",
            FrameworkId::BoddenVelocity => "bodden_velocity",
            FrameworkId::Dragan => "dragan",
            FrameworkId::Nikolaidis => "nikolaidis",
            FrameworkId::Busch => "busch",
            FrameworkId::ZhaoFastApp => "zhao_fastapp",
            FrameworkId::ZhaoEffDist => "zhao_effdist",
            FrameworkId::BiedObsL => "bied_obs_l",
            FrameworkId::BiedObsP => "bied_obs_p",
            FrameworkId::BiedObsD => "bied_obs_d",
        }
    }

    pub fn parse(name: &str) -> Option<FrameworkId> {
        FrameworkId::ALL.into_iter().find(|id| id.name() == name)
    }

    pub fn score_kind(self) -> ScoreKind {
        match self {
            FrameworkId::BoddenPoint
            | FrameworkId::BoddenVelocity
            | FrameworkId::Dragan
            | FrameworkId::Nikolaidis => ScoreKind::Cost,
            FrameworkId::Busch
            | FrameworkId::ZhaoFastApp
            | FrameworkId::ZhaoEffDist
            | FrameworkId::BiedObsL
            | FrameworkId::BiedObsP
            | FrameworkId::BiedObsD => ScoreKind::Reward,
        }
    }
}

impl fmt::Display for FrameworkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn require_finite(value: f64, name: &'static str) -> Result<(), Error> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidHyperparameter { name, reason: "must be finite" })
    }
}

/// Weights for the two goal-residual terms and the velocity-effort term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoddenParams {
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
}

impl Default for BoddenParams {
    fn default() -> Self {
        BoddenParams { alpha: 1.0, beta: 1.0, epsilon: 0.1 }
    }
}

impl BoddenParams {
    pub fn validate(&self) -> Result<(), Error> {
        require_finite(self.alpha, "alpha")?;
        require_finite(self.beta, "beta")?;
        require_finite(self.epsilon, "epsilon")
    }
}

/// Observation-time, correctness, and jerk weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuschParams {
    pub beta: f64,
    pub epsilon: f64,
}

impl Default for BuschParams {
    fn default() -> Self {
        BuschParams { beta: 10.0, epsilon: -0.01 }
    }
}

impl BuschParams {
    pub fn validate(&self) -> Result<(), Error> {
        require_finite(self.beta, "beta")?;
        require_finite(self.epsilon, "epsilon")
    }
}

/// Arrival bonus and legibility-reward weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZhaoParams {
    /// Reward paid while within `epsilon_threshold` of the intended goal.
    pub r0: f64,
    /// Arrival radius in meters; must be positive.
    pub epsilon_threshold: f64,
    pub beta: f64,
}

impl Default for ZhaoParams {
    fn default() -> Self {
        ZhaoParams { r0: 10.0, epsilon_threshold: 0.05, beta: 1.0 }
    }
}

impl ZhaoParams {
    pub fn validate(&self) -> Result<(), Error> {
        require_finite(self.r0, "r0")?;
        require_finite(self.beta, "beta")?;
        require_finite(self.epsilon_threshold, "epsilon_threshold")?;
        if self.epsilon_threshold <= 0.0 {
            return Err(Error::InvalidHyperparameter {
                name: "epsilon_threshold",
                reason: "must be positive",
            });
        }
        Ok(())
    }
}

/// Legibility-reward weight, path-length weight, and distance-softmax
/// sharpness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiedParams {
    pub beta: f64,
    /// Weight on arc length; negative values penalize long paths.
    pub epsilon: f64,
    /// Softmax sharpness over goal distances; must be positive.
    pub sigma: f64,
}

impl Default for BiedParams {
    fn default() -> Self {
        BiedParams { beta: 1.0, epsilon: -1.0, sigma: 1.0 }
    }
}

impl BiedParams {
    pub fn validate(&self) -> Result<(), Error> {
        require_finite(self.beta, "beta")?;
        require_finite(self.epsilon, "epsilon")?;
        require_finite(self.sigma, "sigma")?;
        if self.sigma <= 0.0 {
            return Err(Error::InvalidHyperparameter { name: "sigma", reason: "must be positive" });
        }
        Ok(())
    }
}

/// Which frameworks to run and with what hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreConfig {
    pub enabled: Vec<FrameworkId>,
    pub bodden_point: BoddenParams,
    pub bodden_velocity: BoddenParams,
    pub busch: BuschParams,
    pub zhao_fastapp: ZhaoParams,
    pub zhao_effdist: ZhaoParams,
    pub bied_obs_l: BiedParams,
    pub bied_obs_p: BiedParams,
    pub bied_obs_d: BiedParams,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        ScoreConfig {
            enabled: FrameworkId::ALL.to_vec(),
            bodden_point: BoddenParams::default(),
            bodden_velocity: BoddenParams::default(),
            busch: BuschParams::default(),
            zhao_fastapp: ZhaoParams::default(),
            zhao_effdist: ZhaoParams::default(),
            bied_obs_l: BiedParams::default(),
            bied_obs_p: BiedParams::default(),
            bied_obs_d: BiedParams::default(),
        }
    }
}

impl ScoreConfig {
    pub fn validate(&self) -> Result<(), Error> {
        self.bodden_point.validate()?;
        self.bodden_velocity.validate()?;
        self.busch.validate()?;
        self.zhao_fastapp.validate()?;
        self.zhao_effdist.validate()?;
        self.bied_obs_l.validate()?;
        self.bied_obs_p.validate()?;
        self.bied_obs_d.validate()
    }
}

/// One framework's score for one item, possibly under one viewpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRecord {
    pub framework: FrameworkId,
    pub trajectory_id: String,
    pub fraction: Fraction,
    pub viewpoint_id: Option<String>,
    pub value: f64,
}

/// Why a framework produced no score for an item (or for any item).
///
/// `framework` is `None` when the item itself was unusable for every
/// framework; `trajectory_id` is `None` for dataset-level problems such as
/// a camera-space framework with no viewpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Exclusion {
    pub framework: Option<FrameworkId>,
    pub trajectory_id: Option<String>,
    pub fraction: Option<Fraction>,
    pub viewpoint_id: Option<String>,
    pub reason: String,
}

/// Everything [`score_all`] produced: records in canonical order plus the
/// exclusion log.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreOutcome {
    pub records: Vec<ScoreRecord>,
    pub exclusions: Vec<Exclusion>,
}

/// Cost of the unit-duration constant-velocity reach from `a` to `b` under
/// the squared-velocity trajectory cost: half the squared distance.
pub fn straight_line_cost(a: Point3, b: Point3) -> f64 {
    0.5 * (b - a).norm_squared()
}

/// Softmax with max-subtraction over per-goal exponents, weighted by
/// priors. Goals with zero prior get exactly zero probability and do not
/// influence the stabilizing maximum.
fn posterior_from_exponents(exponents: &[f64], priors: &[f64]) -> Vec<f64> {
    let mut max = f64::NEG_INFINITY;
    for (exponent, prior) in exponents.iter().zip(priors) {
        if *prior > 0.0 && *exponent > max {
            max = *exponent;
        }
    }
    let weights: Vec<f64> = exponents
        .iter()
        .zip(priors)
        .map(|(exponent, prior)| if *prior > 0.0 { (exponent - max).exp() * prior } else { 0.0 })
        .collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|weight| weight / total).collect()
}

/// Posterior belief over the scene's goals after seeing a reach from
/// `start` to `query`, aligned with [`Scene::goals`] order.
///
/// Belief in a goal grows with how much cheaper the observed partial makes
/// that goal look compared to reaching it directly from the start.
pub fn goal_posterior(scene: &Scene, start: Point3, query: Point3) -> Vec<f64> {
    let exponents: Vec<f64> = scene
        .goals()
        .iter()
        .map(|goal| straight_line_cost(start, goal.position) - straight_line_cost(query, goal.position))
        .collect();
    posterior_from_exponents(&exponents, scene.priors())
}

/// Softmax over negated σ-scaled goal distances, aligned with goal order.
pub fn distance_softmax(scene: &Scene, point: Point3, sigma: f64) -> Vec<f64> {
    let exponents: Vec<f64> =
        scene.goals().iter().map(|goal| -sigma * point.distance(goal.position)).collect();
    let uniform = vec![1.0; exponents.len()];
    posterior_from_exponents(&exponents, &uniform)
}

/// Intended-goal posterior at every sample of `traj`.
pub(crate) fn posterior_series(traj: &Trajectory, scene: &Scene) -> Vec<(f64, f64)> {
    let start = traj.start();
    traj.samples()
        .iter()
        .map(|sample| {
            let posterior = goal_posterior(scene, start, sample.p);
            (sample.t, posterior[scene.intended_index()])
        })
        .collect()
}

/// Average of a posterior series weighted by remaining time, so early
/// commitment counts for more than a late reveal.
pub(crate) fn time_weighted_posterior_score(series: &[(f64, f64)]) -> Result<f64, Error> {
    let first = series[0].0;
    let last = series[series.len() - 1].0;
    if last <= first {
        return Err(Error::DegenerateTrajectory);
    }
    let weighted: Vec<(f64, f64)> =
        series.iter().map(|&(t, p)| (t, p * (last - t))).collect();
    let weights: Vec<(f64, f64)> = series.iter().map(|&(t, _)| (t, last - t)).collect();
    Ok(integrate_time_series(&weighted)? / integrate_time_series(&weights)?)
}

/// Time-weighted intended-goal posterior along the trajectory, in [0, 1].
/// Lower is better: the framework family treats this as a cost scale
/// inverse, and record values keep the published orientation.
pub fn score_dragan(traj: &Trajectory, scene: &Scene) -> Result<f64, Error> {
    time_weighted_posterior_score(&posterior_series(traj, scene))
}

/// The same time-weighted posterior, but computed in the image plane of
/// `view`: trajectory samples and goals are projected to pixels and
/// normalized by the image diagonal, so the score depends on viewing angle.
pub fn score_nikolaidis(
    traj: &Trajectory,
    scene: &Scene,
    view: &Viewpoint,
) -> Result<f64, Error> {
    let diagonal = view.image_diagonal();
    let pixels = view.project_trajectory(traj)?;
    let mut goal_px = Vec::with_capacity(scene.goals().len());
    for goal in scene.goals() {
        let (u, v) = view.project_point(goal.position)?;
        goal_px.push([u / diagonal, v / diagonal]);
    }
    let start = [pixels[0].u / diagonal, pixels[0].v / diagonal];
    let series: Vec<(f64, f64)> = pixels
        .iter()
        .map(|px| {
            let query = [px.u / diagonal, px.v / diagonal];
            let exponents: Vec<f64> = goal_px
                .iter()
                .map(|goal| planar_cost(start, *goal) - planar_cost(query, *goal))
                .collect();
            let posterior = posterior_from_exponents(&exponents, scene.priors());
            (px.t, posterior[scene.intended_index()])
        })
        .collect();
    time_weighted_posterior_score(&series)
}

fn planar_cost(a: [f64; 2], b: [f64; 2]) -> f64 {
    let du = b[0] - a[0];
    let dv = b[1] - a[1];
    0.5 * (du * du + dv * dv)
}

/// Which goal-space residual the Bodden-style cost uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoddenMetric {
    /// Residual is the distance to the intended goal.
    Point,
    /// Residual is the world-frame angle between the velocity and the
    /// direction toward the intended goal, in radians.
    Velocity,
}

/// Cost combining a squared goal-space residual, squared distance to the
/// intended goal, and squared-velocity effort. Lower is better.
///
/// A sample with zero velocity (or one resting exactly at the goal) has no
/// defined alignment angle and contributes zero to the residual term.
pub fn score_bodden(
    traj: &Trajectory,
    scene: &Scene,
    metric: BoddenMetric,
    hp: &BoddenParams,
) -> Result<f64, Error> {
    hp.validate()?;
    let g0 = scene.intended_position();
    let squared_distance: Vec<(f64, f64)> =
        traj.distance_series(g0).into_iter().map(|(t, d)| (t, d * d)).collect();
    let velocity = traj.finite_difference_series(DerivativeOrder::Velocity)?;
    let residual: Vec<(f64, f64)> = match metric {
        BoddenMetric::Point => squared_distance.clone(),
        BoddenMetric::Velocity => velocity
            .iter()
            .zip(traj.samples())
            .map(|(&(t, v), sample)| {
                let toward = g0 - sample.p;
                let angle = if v.norm() == 0.0 || toward.norm() == 0.0 {
                    0.0
                } else {
                    let cosine = (v.dot(toward) / (v.norm() * toward.norm())).clamp(-1.0, 1.0);
                    cosine.acos()
                };
                (t, angle * angle)
            })
            .collect(),
    };
    let effort: Vec<(f64, f64)> =
        velocity.into_iter().map(|(t, v)| (t, v.norm_squared())).collect();
    Ok(hp.alpha * integrate_time_series(&residual)?
        + hp.beta * integrate_time_series(&squared_distance)?
        + hp.epsilon * integrate_time_series(&effort)?)
}

/// Reward built from live observer feedback: mean observation time, shown
/// duration, the correct-guess rate, and a jerk penalty.
///
/// A response without a recorded time is assumed to have been answered when
/// the shown partial ended, so its observation time is the duration.
pub fn score_busch(
    traj: &Trajectory,
    scene: &Scene,
    responses: &[ResponseRecord],
    hp: &BuschParams,
) -> Result<f64, Error> {
    hp.validate()?;
    if responses.is_empty() {
        return Err(Error::MissingFeedback);
    }
    let duration = traj.duration();
    let n = responses.len() as f64;
    let observation: f64 = responses
        .iter()
        .map(|response| response.response_time_s.unwrap_or(duration))
        .sum::<f64>()
        / n;
    let correct = responses
        .iter()
        .filter(|response| matches!(&response.guess, Guess::Goal(id) if id.as_str() == scene.intended_goal()))
        .count() as f64
        / n;
    let jerk = traj.finite_difference_series(DerivativeOrder::Jerk)?;
    let jerk_magnitude: Vec<(f64, f64)> =
        jerk.into_iter().map(|(t, j)| (t, j.norm())).collect();
    Ok(observation + duration + hp.beta * correct + hp.epsilon * integrate_time_series(&jerk_magnitude)?)
}

/// Which per-sample legibility reward the Zhao-style score integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZhaoVariant {
    /// Reward the negated distance to the intended goal.
    FastApp,
    /// Reward a decaying log-ratio margin against the nearest distractor.
    EffDist,
}

/// Reward integrating an arrival bonus (paid while within the threshold
/// radius of the intended goal) plus a weighted legibility term. Higher is
/// better.
pub fn score_zhao(
    traj: &Trajectory,
    scene: &Scene,
    variant: ZhaoVariant,
    hp: &ZhaoParams,
) -> Result<f64, Error> {
    hp.validate()?;
    let g0 = scene.intended_position();
    let t0 = traj.start_time();
    let integrand: Vec<(f64, f64)> = traj
        .samples()
        .iter()
        .map(|sample| {
            let d0 = sample.p.distance(g0);
            let gate = if d0 < hp.epsilon_threshold { hp.r0 } else { 0.0 };
            let legible = match variant {
                ZhaoVariant::FastApp => -d0,
                ZhaoVariant::EffDist => {
                    let decay = (-(sample.t - t0) / 30.0).exp();
                    let mut worst = f64::INFINITY;
                    for (index, goal) in scene.goals().iter().enumerate() {
                        if index == scene.intended_index() {
                            continue;
                        }
                        let di = sample.p.distance(goal.position);
                        let margin = d0 - di;
                        let term = (margin.abs() / (d0 + 1.0) + 1.0).ln() * sign(margin);
                        if term < worst {
                            worst = term;
                        }
                    }
                    decay * worst
                }
            };
            (sample.t, gate + hp.beta * legible)
        })
        .collect();
    integrate_time_series(&integrand)
}

fn sign(value: f64) -> f64 {
    if value > 0.0 {
        1.0
    } else if value < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Which observer-reward variant the Bied-style score uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiedVariant {
    /// Time-weighted posterior (the [`score_dragan`] scalar).
    ObsL,
    /// Integrated intended-goal posterior.
    ObsP,
    /// Integrated distance-softmax probability of the intended goal.
    ObsD,
}

/// Reward combining a legibility term with a weighted arc length, so the
/// default negative length weight penalizes detours. Higher is better.
pub fn score_bied(
    traj: &Trajectory,
    scene: &Scene,
    variant: BiedVariant,
    hp: &BiedParams,
) -> Result<f64, Error> {
    hp.validate()?;
    let legible = match variant {
        BiedVariant::ObsL => score_dragan(traj, scene)?,
        BiedVariant::ObsP => integrate_time_series(&posterior_series(traj, scene))?,
        BiedVariant::ObsD => {
            let series: Vec<(f64, f64)> = traj
                .samples()
                .iter()
                .map(|sample| {
                    let softmax = distance_softmax(scene, sample.p, hp.sigma);
                    (sample.t, softmax[scene.intended_index()])
                })
                .collect();
            integrate_time_series(&series)?
        }
    };
    Ok(hp.beta * legible + hp.epsilon * traj.arc_length())
}

/// Scores every enabled framework over every (trajectory, fraction) item.
///
/// Angle-independent frameworks are evaluated once per item and their value
/// is replicated across all viewpoints; camera-space scoring runs per
/// viewpoint, as does feedback-based scoring when responses are tagged with
/// viewpoints. Items a framework cannot score are logged as exclusions, so
/// every item appears either in the records or in the log for each enabled
/// framework. Only an invalid configuration aborts the run.
pub fn score_all(dataset: &Dataset, config: &ScoreConfig) -> Result<ScoreOutcome, Error> {
    config.validate()?;
    let mut enabled = config.enabled.clone();
    enabled.sort_unstable();
    enabled.dedup();

    let viewpoints = dataset.viewpoints();
    let per_viewpoint_busch = !viewpoints.is_empty()
        && dataset.responses().iter().any(|response| response.viewpoint_id.is_some());

    let mut records: Vec<ScoreRecord> = Vec::new();
    let mut exclusions: Vec<Exclusion> = Vec::new();

    if enabled.contains(&FrameworkId::Nikolaidis) && viewpoints.is_empty() {
        exclusions.push(Exclusion {
            framework: Some(FrameworkId::Nikolaidis),
            trajectory_id: None,
            fraction: None,
            viewpoint_id: None,
            reason: format!("{}", Error::MissingViewpoints),
        });
    }

    for trajectory in dataset.trajectories() {
        let scene = dataset
            .scene_for_trajectory(trajectory.id())
            .expect("dataset construction validates scene references");
        for &fraction in dataset.fractions_for(trajectory.id()) {
            let partial = match trajectory.truncate_to_fraction(fraction) {
                Ok(partial) => partial,
                Err(error) => {
                    exclusions.push(Exclusion {
                        framework: None,
                        trajectory_id: Some(String::from(trajectory.id())),
                        fraction: Some(fraction),
                        viewpoint_id: None,
                        reason: format!("{error}"),
                    });
                    continue;
                }
            };
            for &framework in &enabled {
                match framework {
                    FrameworkId::Nikolaidis => {
                        for view in viewpoints {
                            match score_nikolaidis(&partial, scene, view) {
                                Ok(value) => records.push(ScoreRecord {
                                    framework,
                                    trajectory_id: String::from(trajectory.id()),
                                    fraction,
                                    viewpoint_id: Some(String::from(view.id())),
                                    value,
                                }),
                                Err(error) => exclusions.push(Exclusion {
                                    framework: Some(framework),
                                    trajectory_id: Some(String::from(trajectory.id())),
                                    fraction: Some(fraction),
                                    viewpoint_id: Some(String::from(view.id())),
                                    reason: format!("{error}"),
                                }),
                            }
                        }
                    }
                    FrameworkId::Busch if per_viewpoint_busch => {
                        for view in viewpoints {
                            let responses = dataset.responses_matching(
                                trajectory.id(),
                                fraction,
                                Some(view.id()),
                            );
                            match score_busch(&partial, scene, &responses, &config.busch) {
                                Ok(value) => records.push(ScoreRecord {
                                    framework,
                                    trajectory_id: String::from(trajectory.id()),
                                    fraction,
                                    viewpoint_id: Some(String::from(view.id())),
                                    value,
                                }),
                                Err(error) => exclusions.push(Exclusion {
                                    framework: Some(framework),
                                    trajectory_id: Some(String::from(trajectory.id())),
                                    fraction: Some(fraction),
                                    viewpoint_id: Some(String::from(view.id())),
                                    reason: format!("{error}"),
                                }),
                            }
                        }
                    }
                    FrameworkId::Busch => {
                        let responses =
                            dataset.responses_matching(trajectory.id(), fraction, None);
                        match score_busch(&partial, scene, &responses, &config.busch) {
                            Ok(value) => {
                                push_replicated(&mut records, framework, trajectory.id(), fraction, viewpoints, value)
                            }
                            Err(error) => exclusions.push(Exclusion {
                                framework: Some(framework),
                                trajectory_id: Some(String::from(trajectory.id())),
                                fraction: Some(fraction),
                                viewpoint_id: None,
                                reason: format!("{error}"),
                            }),
                        }
                    }
                    angle_free => match score_single(angle_free, &partial, scene, config) {
                        Ok(value) => {
                            push_replicated(&mut records, angle_free, trajectory.id(), fraction, viewpoints, value)
                        }
                        Err(error) => exclusions.push(Exclusion {
                            framework: Some(angle_free),
                            trajectory_id: Some(String::from(trajectory.id())),
                            fraction: Some(fraction),
                            viewpoint_id: None,
                            reason: format!("{error}"),
                        }),
                    },
                }
            }
        }
    }

    records.sort_by(|a, b| {
        (a.framework, &a.trajectory_id, a.fraction, &a.viewpoint_id)
            .cmp(&(b.framework, &b.trajectory_id, b.fraction, &b.viewpoint_id))
    });
    exclusions.sort_by(|a, b| {
        (a.framework, &a.trajectory_id, a.fraction, &a.viewpoint_id)
            .cmp(&(b.framework, &b.trajectory_id, b.fraction, &b.viewpoint_id))
    });
    Ok(ScoreOutcome { records, exclusions })
}

fn push_replicated(
    records: &mut Vec<ScoreRecord>,
    framework: FrameworkId,
    trajectory_id: &str,
    fraction: Fraction,
    viewpoints: &[Viewpoint],
    value: f64,
) {
    if viewpoints.is_empty() {
        records.push(ScoreRecord {
            framework,
            trajectory_id: String::from(trajectory_id),
            fraction,
            viewpoint_id: None,
            value,
        });
    } else {
        for view in viewpoints {
            records.push(ScoreRecord {
                framework,
                trajectory_id: String::from(trajectory_id),
                fraction,
                viewpoint_id: Some(String::from(view.id())),
                value,
            });
        }
    }
}

fn score_single(
    framework: FrameworkId,
    partial: &Trajectory,
    scene: &Scene,
    config: &ScoreConfig,
) -> Result<f64, Error> {
    match framework {
        FrameworkId::BoddenPoint => {
            score_bodden(partial, scene, BoddenMetric::Point, &config.bodden_point)
        }
        FrameworkId::BoddenVelocity => {
            score_bodden(partial, scene, BoddenMetric::Velocity, &config.bodden_velocity)
        }
        FrameworkId::Dragan => score_dragan(partial, scene),
        FrameworkId::ZhaoFastApp => {
            score_zhao(partial, scene, ZhaoVariant::FastApp, &config.zhao_fastapp)
        }
        FrameworkId::ZhaoEffDist => {
            score_zhao(partial, scene, ZhaoVariant::EffDist, &config.zhao_effdist)
        }
        FrameworkId::BiedObsL => score_bied(partial, scene, BiedVariant::ObsL, &config.bied_obs_l),
        FrameworkId::BiedObsP => score_bied(partial, scene, BiedVariant::ObsP, &config.bied_obs_p),
        FrameworkId::BiedObsD => score_bied(partial, scene, BiedVariant::ObsD, &config.bied_obs_d),
        FrameworkId::Nikolaidis | FrameworkId::Busch => {
            unreachable!("viewpoint- and feedback-dependent frameworks are dispatched in score_all")
        }
    }
}
