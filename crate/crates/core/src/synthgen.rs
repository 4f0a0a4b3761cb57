//! Deterministic synthetic datasets: parametric trajectory shapes plus
//! simulated observers answering "which goal is it heading for?".
//!
//! Everything is a pure function of the generation spec, including its
//! master seed; per-item seeds are derived so adding items never reshuffles
//! the responses of existing ones.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baseline::{Guess, ResponseRecord};
use crate::camera::Viewpoint;
use crate::dataset::Dataset;
use crate::error::Error;
use crate::frameworks::goal_posterior;
use crate::seed::derive_seed;
use crate::trajectory::{Fraction, Goal, Point3, Scene, Trajectory, TrajectorySample};

/// Shape of a generated reach toward the intended goal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryKind {
    /// Straight line from start to goal at constant speed.
    Straight,
    /// Circular arc bowing away from the nearest distractor.
    Arc,
    /// Heads most of the way to the nearest distractor, then turns.
    Deceptive,
}

impl TrajectoryKind {
    pub fn name(self) -> &'static str {
        match self {
            TrajectoryKind::Straight => "straight",
            TrajectoryKind::Arc => "arc",
            TrajectoryKind::Deceptive => "deceptive",
        }
    }

    pub fn parse(name: &str) -> Option<TrajectoryKind> {
        [TrajectoryKind::Straight, TrajectoryKind::Arc, TrajectoryKind::Deceptive]
            .into_iter()
            .find(|kind| kind.name() == name)
    }
}

/// How a simulated observer picks a goal after seeing a partial reach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObserverKind {
    /// Samples from the goal posterior at the shown endpoint.
    Posterior,
    /// Always picks the goal nearest the shown endpoint.
    NearestGoal,
    /// Correct with probability `a + b * fraction`, clamped to [0, 1];
    /// remaining mass is uniform over the other goals.
    ProgressRamp { a: f64, b: f64 },
}

/// An observer kind mixed with a lapse rate: with probability `noise` the
/// answer is uniformly random over all goals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObserverModel {
    pub kind: ObserverKind,
    pub noise: f64,
}

impl ObserverModel {
    pub fn validate(&self) -> Result<(), Error> {
        if let ObserverKind::ProgressRamp { a, b } = self.kind {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::NonFinite { context: "progress ramp parameters" });
            }
        }
        if !self.noise.is_finite() || !(0.0..=1.0).contains(&self.noise) {
            return Err(Error::InvalidArgument { what: "observer noise must be in [0, 1]" });
        }
        Ok(())
    }
}

fn nearest_distractor(scene: &Scene, to: Point3) -> Point3 {
    let mut best = None;
    for (index, goal) in scene.goals().iter().enumerate() {
        if index == scene.intended_index() {
            continue;
        }
        let distance = to.distance(goal.position);
        let closer = match best {
            None => true,
            Some((record, _)) => distance < record,
        };
        if closer {
            best = Some((distance, goal.position));
        }
    }
    best.expect("scenes always hold at least one distractor").1
}

fn perpendicular_away_from(chord: Point3, toward_distractor: Point3) -> Point3 {
    let chord_dir = chord.scale(1.0 / chord.norm());
    let lateral =
        toward_distractor - chord_dir.scale(toward_distractor.dot(chord_dir));
    if lateral.norm() > 1e-9 {
        return lateral.scale(-1.0 / lateral.norm());
    }
    let mut fallback = chord_dir.cross(Point3::new(0.0, 0.0, 1.0));
    if fallback.norm() < 1e-9 {
        fallback = chord_dir.cross(Point3::new(0.0, 1.0, 0.0));
    }
    fallback.scale(1.0 / fallback.norm())
}

fn rodrigues(v: Point3, axis: Point3, angle: f64) -> Point3 {
    let (sin, cos) = angle.sin_cos();
    v.scale(cos) + axis.cross(v).scale(sin) + axis.scale(axis.dot(v) * (1.0 - cos))
}

/// Generates one reach of the requested shape from `start` to the scene's
/// intended goal, sampled on a uniform time grid over `duration`.
///
/// The final sample is exactly the intended goal position. The arc's bow
/// height is 0.35 of the chord length, on the side away from the nearest
/// distractor; the deceptive shape turns at half time from a waypoint 0.85
/// of the way to the nearest distractor.
pub fn generate_trajectory(
    kind: TrajectoryKind,
    scene: &Scene,
    start: Point3,
    samples: usize,
    duration: f64,
    id: &str,
) -> Result<Trajectory, Error> {
    if samples < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: samples });
    }
    if !duration.is_finite() || duration <= 0.0 {
        return Err(Error::InvalidArgument { what: "duration must be finite and positive" });
    }
    if !start.is_finite() {
        return Err(Error::NonFinite { context: "start position" });
    }
    let goal = scene.intended_position();
    let chord = goal - start;
    if chord.norm() == 0.0 {
        return Err(Error::InvalidArgument {
            what: "start position coincides with the intended goal",
        });
    }

    let position_at = |alpha: f64| -> Point3 {
        match kind {
            TrajectoryKind::Straight => start.lerp(goal, alpha),
            TrajectoryKind::Arc => {
                let c = chord.norm();
                let h = 0.35 * c;
                let radius = (c * c / 4.0 + h * h) / (2.0 * h);
                let outward = perpendicular_away_from(chord, nearest_distractor(scene, start) - start);
                let midpoint = start.lerp(goal, 0.5);
                let center = midpoint - outward.scale(radius - h);
                let vs = start - center;
                let vg = goal - center;
                let axis_raw = vs.cross(vg);
                let axis = axis_raw.scale(1.0 / axis_raw.norm());
                let theta = 2.0 * ((c / 2.0) / radius).min(1.0).asin();
                center + rodrigues(vs, axis, alpha * theta)
            }
            TrajectoryKind::Deceptive => {
                let waypoint = start + (nearest_distractor(scene, start) - start).scale(0.85);
                if alpha <= 0.5 {
                    start.lerp(waypoint, alpha * 2.0)
                } else {
                    waypoint.lerp(goal, (alpha - 0.5) * 2.0)
                }
            }
        }
    };

    let mut points: Vec<TrajectorySample> = (0..samples)
        .map(|index| {
            let alpha = index as f64 / (samples - 1) as f64;
            TrajectorySample { t: alpha * duration, p: position_at(alpha) }
        })
        .collect();
    let last = points.len() - 1;
    points[last].p = goal;
    Trajectory::new(String::from(id), String::from(scene.id()), points)
}

/// One trajectory to generate: its id, shape, and target goal.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySpec {
    pub id: String,
    pub kind: TrajectoryKind,
    pub goal_id: String,
}

/// Full recipe for a synthetic dataset.
///
/// All trajectories share one goal layout and start position; a scene is
/// created per distinct target goal so each trajectory's scene marks its
/// own goal as intended.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub seed: u64,
    pub goals: Vec<Goal>,
    pub priors: Option<BTreeMap<String, f64>>,
    pub start: Point3,
    pub trajectories: Vec<TrajectorySpec>,
    pub fractions: Vec<Fraction>,
    pub viewpoints: Vec<Viewpoint>,
    pub samples_per_trajectory: usize,
    pub duration_s: f64,
    /// Observer responses sampled per (trajectory, fraction) item; zero
    /// generates none.
    pub responses_per_item: usize,
    pub observer: ObserverModel,
}

fn observer_distribution(
    model: &ObserverModel,
    scene: &Scene,
    partial: &Trajectory,
    fraction: Fraction,
) -> Vec<f64> {
    let k = scene.goals().len();
    let base: Vec<f64> = match model.kind {
        ObserverKind::Posterior => goal_posterior(scene, partial.start(), partial.end()),
        ObserverKind::NearestGoal => {
            let shown = partial.end();
            let mut nearest = 0;
            for (index, goal) in scene.goals().iter().enumerate() {
                if shown.distance(goal.position) < shown.distance(scene.goals()[nearest].position)
                {
                    nearest = index;
                }
            }
            (0..k).map(|index| if index == nearest { 1.0 } else { 0.0 }).collect()
        }
        ObserverKind::ProgressRamp { a, b } => {
            let correct = (a + b * fraction.value()).clamp(0.0, 1.0);
            let rest = (1.0 - correct) / (k - 1) as f64;
            (0..k)
                .map(|index| if index == scene.intended_index() { correct } else { rest })
                .collect()
        }
    };
    let uniform = 1.0 / k as f64;
    base.into_iter()
        .map(|p| model.noise * uniform + (1.0 - model.noise) * p)
        .collect()
}

fn sample_index(distribution: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let draw: f64 = rng.gen();
    let mut cumulative = 0.0;
    for (index, p) in distribution.iter().enumerate() {
        cumulative += p;
        if draw < cumulative {
            return index;
        }
    }
    distribution.len() - 1
}

/// Builds the full dataset a spec describes: scenes, trajectories, display
/// fractions, viewpoints, and simulated observer responses.
///
/// Responses are untagged by viewpoint; observers judge the world-space
/// partial. Byte-identical specs produce identical datasets.
pub fn generate_dataset(spec: &SynthSpec) -> Result<Dataset, Error> {
    spec.observer.validate()?;
    if spec.trajectories.is_empty() {
        return Err(Error::InvalidArgument { what: "spec lists no trajectories" });
    }

    let mut scene_ids: BTreeMap<String, String> = BTreeMap::new();
    let mut scenes: Vec<Scene> = Vec::new();
    for trajectory in &spec.trajectories {
        if scene_ids.contains_key(&trajectory.goal_id) {
            continue;
        }
        let scene_id = format!("scene-{}", trajectory.goal_id);
        let scene = Scene::new(
            scene_id.clone(),
            spec.goals.clone(),
            &trajectory.goal_id,
            spec.priors.as_ref(),
        )?;
        scene_ids.insert(trajectory.goal_id.clone(), scene_id);
        scenes.push(scene);
    }

    let mut trajectories: Vec<Trajectory> = Vec::new();
    for trajectory in &spec.trajectories {
        let scene_id = &scene_ids[&trajectory.goal_id];
        let scene = scenes
            .iter()
            .find(|scene| scene.id() == scene_id)
            .expect("scene was created above");
        trajectories.push(generate_trajectory(
            trajectory.kind,
            scene,
            spec.start,
            spec.samples_per_trajectory,
            spec.duration_s,
            &trajectory.id,
        )?);
    }

    let fractions: BTreeMap<String, Vec<Fraction>> = trajectories
        .iter()
        .map(|trajectory| (String::from(trajectory.id()), spec.fractions.clone()))
        .collect();

    let mut responses: Vec<ResponseRecord> = Vec::new();
    if spec.responses_per_item > 0 {
        for trajectory in &trajectories {
            let scene = scenes
                .iter()
                .find(|scene| scene.id() == trajectory.scene_id())
                .expect("trajectory scenes come from the map above");
            for &fraction in &spec.fractions {
                let partial = trajectory.truncate_to_fraction(fraction)?;
                let item_seed = derive_seed(
                    spec.seed,
                    &["synth-responses", trajectory.id(), &format!("{fraction}")],
                );
                let mut rng = ChaCha8Rng::seed_from_u64(item_seed);
                let distribution =
                    observer_distribution(&spec.observer, scene, &partial, fraction);
                for participant in 0..spec.responses_per_item {
                    let choice = sample_index(&distribution, &mut rng);
                    responses.push(ResponseRecord {
                        trajectory_id: String::from(trajectory.id()),
                        fraction,
                        viewpoint_id: None,
                        participant_id: format!("p{participant:04}"),
                        guess: Guess::Goal(scene.goals()[choice].id.clone()),
                        response_time_s: None,
                    });
                }
            }
        }
    }

    Dataset::new(scenes, trajectories, fractions, spec.viewpoints.clone(), responses)
}
