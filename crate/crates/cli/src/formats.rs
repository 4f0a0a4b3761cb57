//! On-disk dataset schema: JSON for scenes, trajectories, and viewpoints,
//! CSV for observer responses, plus the JSON recipe for synthetic datasets.
//!
//! Loading validates eagerly and names the offending file and record.
//! Writing emits the same schema, so generated datasets round-trip through
//! [`load_dataset`] unchanged.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use legibility_core::baseline::{Guess, ResponseRecord};
use legibility_core::camera::Viewpoint;
use legibility_core::dataset::Dataset;
use legibility_core::synthgen::{
    ObserverKind, ObserverModel, SynthSpec, TrajectoryKind, TrajectorySpec,
};
use legibility_core::trajectory::{Fraction, Goal, Point3, Scene, Trajectory, TrajectorySample};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoalDto {
    pub id: String,
    pub position: [f64; 3],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDto {
    pub id: String,
    pub goals: Vec<GoalDto>,
    pub intended_goal: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priors: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleDto {
    pub t: f64,
    pub p: [f64; 3],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryDto {
    pub id: String,
    pub scene_id: String,
    pub fractions: Vec<f64>,
    pub samples: Vec<SampleDto>,
}

/// Pinhole camera with a row-major 3x3 rotation.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViewpointDto {
    pub id: String,
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: f64,
    pub height: f64,
    pub rotation: [f64; 9],
    pub translation: [f64; 3],
}

/// One responses.csv row. Empty strings stand for absent viewpoint, "none
/// of the above" guesses, and unrecorded response times.
#[derive(Debug, Deserialize)]
struct ResponseRow {
    trajectory_id: String,
    fraction: f64,
    viewpoint_id: String,
    participant_id: String,
    guess: String,
    response_time_s: String,
}

fn point(coords: [f64; 3]) -> Point3 {
    Point3::new(coords[0], coords[1], coords[2])
}

fn triple(p: Point3) -> [f64; 3] {
    [p.x, p.y, p.z]
}

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, HarnessError> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::io(path, source))?;
    serde_json::from_str(&text).map_err(|error| HarnessError::format(path, error.to_string()))
}

fn write_text(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|source| HarnessError::io(path, source))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), HarnessError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|error| HarnessError::format(path, error.to_string()))?;
    text.push('\n');
    write_text(path, &text)
}

fn build_scene(dto: SceneDto, path: &Path) -> Result<Scene, HarnessError> {
    let id = dto.id.clone();
    let goals = dto
        .goals
        .into_iter()
        .map(|goal| Goal { id: goal.id, position: point(goal.position) })
        .collect();
    Scene::new(dto.id, goals, &dto.intended_goal, dto.priors.as_ref())
        .map_err(|error| HarnessError::format(path, format!("scene '{id}': {error}")))
}

fn build_trajectory(
    dto: TrajectoryDto,
    path: &Path,
) -> Result<(Trajectory, Vec<Fraction>), HarnessError> {
    let id = dto.id.clone();
    let context = |error: legibility_core::Error| {
        HarnessError::format(path, format!("trajectory '{id}': {error}"))
    };
    let fractions = dto
        .fractions
        .iter()
        .map(|&value| Fraction::new(value).map_err(context))
        .collect::<Result<Vec<_>, _>>()?;
    let samples = dto
        .samples
        .into_iter()
        .map(|sample| TrajectorySample { t: sample.t, p: point(sample.p) })
        .collect();
    let trajectory = Trajectory::new(dto.id, dto.scene_id, samples).map_err(context)?;
    Ok((trajectory, fractions))
}

fn build_viewpoint(dto: ViewpointDto, path: &Path) -> Result<Viewpoint, HarnessError> {
    let id = dto.id.clone();
    let r = dto.rotation;
    let rotation = [[r[0], r[1], r[2]], [r[3], r[4], r[5]], [r[6], r[7], r[8]]];
    Viewpoint::new(
        dto.id,
        dto.fx,
        dto.fy,
        dto.cx,
        dto.cy,
        dto.width,
        dto.height,
        rotation,
        point(dto.translation),
    )
    .map_err(|error| HarnessError::format(path, format!("viewpoint '{id}': {error}")))
}

fn load_responses(path: &Path, scene_of: &ScenesByTrajectory) -> Result<Vec<ResponseRecord>, HarnessError> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::io(path, source))?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut responses = Vec::new();
    for (index, row) in reader.deserialize::<ResponseRow>().enumerate() {
        let line = index + 2;
        let row = row.map_err(|error| HarnessError::format(path, error.to_string()))?;
        let fraction = Fraction::new(row.fraction).map_err(|error| {
            HarnessError::format(path, format!("row {line}: {error}"))
        })?;
        let guess = if row.guess.is_empty() {
            Guess::NoAnswer
        } else {
            if let Some(scene) = scene_of.get(&row.trajectory_id) {
                if scene.goal_index(&row.guess).is_none() {
                    return Err(HarnessError::format(
                        path,
                        format!(
                            "row {line}: guess '{}' is not a goal of scene '{}'",
                            row.guess,
                            scene.id()
                        ),
                    ));
                }
            }
            Guess::Goal(row.guess)
        };
        let response_time_s = if row.response_time_s.is_empty() {
            None
        } else {
            let seconds: f64 = row.response_time_s.parse().map_err(|_| {
                HarnessError::format(
                    path,
                    format!("row {line}: response_time_s '{}' is not a number", row.response_time_s),
                )
            })?;
            Some(seconds)
        };
        responses.push(ResponseRecord {
            trajectory_id: row.trajectory_id,
            fraction,
            viewpoint_id: if row.viewpoint_id.is_empty() { None } else { Some(row.viewpoint_id) },
            participant_id: row.participant_id,
            guess,
            response_time_s,
        });
    }
    Ok(responses)
}

type ScenesByTrajectory = BTreeMap<String, Scene>;

/// Reads scenes.json, trajectories.json, and the optional viewpoints.json
/// and responses.csv from `dir` into a validated [`Dataset`].
pub fn load_dataset(dir: &Path) -> Result<Dataset, HarnessError> {
    let scenes_path = dir.join("scenes.json");
    let scene_dtos: Vec<SceneDto> = read_json(&scenes_path)?;
    let scenes = scene_dtos
        .into_iter()
        .map(|dto| build_scene(dto, &scenes_path))
        .collect::<Result<Vec<_>, _>>()?;

    let trajectories_path = dir.join("trajectories.json");
    let trajectory_dtos: Vec<TrajectoryDto> = read_json(&trajectories_path)?;
    if trajectory_dtos.is_empty() {
        return Err(HarnessError::format(
            &trajectories_path,
            "dataset must list at least one trajectory",
        ));
    }
    let mut trajectories = Vec::new();
    let mut fractions = BTreeMap::new();
    for dto in trajectory_dtos {
        let (trajectory, listed) = build_trajectory(dto, &trajectories_path)?;
        fractions.insert(String::from(trajectory.id()), listed);
        trajectories.push(trajectory);
    }

    let viewpoints_path = dir.join("viewpoints.json");
    let viewpoints = if viewpoints_path.exists() {
        let dtos: Vec<ViewpointDto> = read_json(&viewpoints_path)?;
        dtos.into_iter()
            .map(|dto| build_viewpoint(dto, &viewpoints_path))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };

    let responses_path = dir.join("responses.csv");
    let responses = if responses_path.exists() {
        let scene_of: ScenesByTrajectory = trajectories
            .iter()
            .filter_map(|trajectory| {
                scenes
                    .iter()
                    .find(|scene| scene.id() == trajectory.scene_id())
                    .map(|scene| (String::from(trajectory.id()), scene.clone()))
            })
            .collect();
        load_responses(&responses_path, &scene_of)?
    } else {
        Vec::new()
    };

    Ok(Dataset::new(scenes, trajectories, fractions, viewpoints, responses)?)
}

/// Writes `dataset` into `dir` in the schema [`load_dataset`] reads.
///
/// All four files are always written; viewpoints.json may hold an empty
/// list and responses.csv may hold only the header.
pub fn write_dataset(dataset: &Dataset, dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(dir).map_err(|source| HarnessError::io(dir, source))?;

    let scenes: Vec<SceneDto> = dataset
        .scenes()
        .iter()
        .map(|scene| SceneDto {
            id: String::from(scene.id()),
            goals: scene
                .goals()
                .iter()
                .map(|goal| GoalDto { id: goal.id.clone(), position: triple(goal.position) })
                .collect(),
            intended_goal: String::from(scene.intended_goal()),
            priors: Some(
                scene
                    .goals()
                    .iter()
                    .zip(scene.priors())
                    .map(|(goal, &prior)| (goal.id.clone(), prior))
                    .collect(),
            ),
        })
        .collect();
    write_json(&dir.join("scenes.json"), &scenes)?;

    let trajectories: Vec<TrajectoryDto> = dataset
        .trajectories()
        .iter()
        .map(|trajectory| TrajectoryDto {
            id: String::from(trajectory.id()),
            scene_id: String::from(trajectory.scene_id()),
            fractions: dataset
                .fractions_for(trajectory.id())
                .iter()
                .map(|fraction| fraction.value())
                .collect(),
            samples: trajectory
                .samples()
                .iter()
                .map(|sample| SampleDto { t: sample.t, p: triple(sample.p) })
                .collect(),
        })
        .collect();
    write_json(&dir.join("trajectories.json"), &trajectories)?;

    let viewpoints: Vec<ViewpointDto> = dataset
        .viewpoints()
        .iter()
        .map(|view| {
            let r = view.rotation();
            ViewpointDto {
                id: String::from(view.id()),
                fx: view.fx(),
                fy: view.fy(),
                cx: view.cx(),
                cy: view.cy(),
                width: view.width(),
                height: view.height(),
                rotation: [
                    r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1],
                    r[2][2],
                ],
                translation: triple(view.translation()),
            }
        })
        .collect();
    write_json(&dir.join("viewpoints.json"), &viewpoints)?;

    let responses_path = dir.join("responses.csv");
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header =
        ["trajectory_id", "fraction", "viewpoint_id", "participant_id", "guess", "response_time_s"];
    writer
        .write_record(header)
        .and_then(|()| {
            dataset.responses().iter().try_for_each(|response| {
                let fraction = format!("{}", response.fraction);
                let time = response.response_time_s.map(|t| t.to_string()).unwrap_or_default();
                writer.write_record([
                    response.trajectory_id.as_str(),
                    fraction.as_str(),
                    response.viewpoint_id.as_deref().unwrap_or(""),
                    response.participant_id.as_str(),
                    match &response.guess {
                        Guess::Goal(id) => id.as_str(),
                        Guess::NoAnswer => "",
                    },
                    time.as_str(),
                ])
            })
        })
        .map_err(|error| HarnessError::format(&responses_path, error.to_string()))?;
    let bytes = writer
        .into_inner()
        .map_err(|error| HarnessError::format(&responses_path, error.to_string()))?;
    fs::write(&responses_path, bytes).map_err(|source| HarnessError::io(&responses_path, source))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthTrajectoryDto {
    pub id: String,
    pub kind: String,
    pub goal_id: String,
}

/// Synthetic observer description: `kind` is `posterior`, `nearest_goal`,
/// or `progress_ramp`; `a` and `b` apply only to `progress_ramp`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObserverDto {
    pub kind: String,
    #[serde(default)]
    pub noise: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

/// JSON recipe for a synthetic dataset.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthSpecDto {
    pub seed: u64,
    pub start: [f64; 3],
    pub goals: Vec<GoalDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priors: Option<BTreeMap<String, f64>>,
    pub trajectories: Vec<SynthTrajectoryDto>,
    pub fractions: Vec<f64>,
    #[serde(default)]
    pub viewpoints: Vec<ViewpointDto>,
    pub samples_per_trajectory: usize,
    pub duration_s: f64,
    pub responses_per_item: usize,
    pub observer: ObserverDto,
}

fn build_observer(dto: &ObserverDto, path: &Path) -> Result<ObserverModel, HarnessError> {
    let kind = match dto.kind.as_str() {
        "posterior" => ObserverKind::Posterior,
        "nearest_goal" => ObserverKind::NearestGoal,
        "progress_ramp" => {
            let missing = |name: &str| {
                HarnessError::format(
                    path,
                    format!("observer kind 'progress_ramp' needs parameter '{name}'"),
                )
            };
            ObserverKind::ProgressRamp {
                a: dto.a.ok_or_else(|| missing("a"))?,
                b: dto.b.ok_or_else(|| missing("b"))?,
            }
        }
        other => {
            return Err(HarnessError::format(
                path,
                format!(
                    "unknown observer kind '{other}'; expected posterior, nearest_goal, or progress_ramp"
                ),
            ));
        }
    };
    if !matches!(kind, ObserverKind::ProgressRamp { .. }) && (dto.a.is_some() || dto.b.is_some()) {
        return Err(HarnessError::format(
            path,
            format!("observer kind '{}' takes no parameters 'a' or 'b'", dto.kind),
        ));
    }
    Ok(ObserverModel { kind, noise: dto.noise })
}

/// Reads and validates a [`SynthSpec`] recipe from JSON.
pub fn load_synth_spec(path: &Path) -> Result<SynthSpec, HarnessError> {
    let dto: SynthSpecDto = read_json(path)?;
    let goals = dto
        .goals
        .into_iter()
        .map(|goal| Goal { id: goal.id, position: point(goal.position) })
        .collect();
    let trajectories = dto
        .trajectories
        .into_iter()
        .map(|spec| {
            let kind = TrajectoryKind::parse(&spec.kind).ok_or_else(|| {
                HarnessError::format(
                    path,
                    format!(
                        "trajectory '{}': unknown kind '{}'; expected straight, arc, or deceptive",
                        spec.id, spec.kind
                    ),
                )
            })?;
            Ok(TrajectorySpec { id: spec.id, kind, goal_id: spec.goal_id })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    let fractions = dto
        .fractions
        .iter()
        .map(|&value| {
            Fraction::new(value)
                .map_err(|error| HarnessError::format(path, format!("fractions: {error}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let viewpoints = dto
        .viewpoints
        .into_iter()
        .map(|view| build_viewpoint(view, path))
        .collect::<Result<Vec<_>, _>>()?;
    let observer = build_observer(&dto.observer, path)?;
    Ok(SynthSpec {
        seed: dto.seed,
        goals,
        priors: dto.priors,
        start: point(dto.start),
        trajectories,
        fractions,
        viewpoints,
        samples_per_trajectory: dto.samples_per_trajectory,
        duration_s: dto.duration_s,
        responses_per_item: dto.responses_per_item,
        observer,
    })
}
