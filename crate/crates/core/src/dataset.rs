//! A validated bundle of scenes, trajectories, fractions, viewpoints, and
//! observer responses.
//!
//! Construction checks every cross reference once, so scoring and baseline
//! code can index freely without re-validating. The scored items of a
//! dataset are the pairs of a trajectory with one of its listed display
//! fractions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::baseline::{Guess, ResponseRecord};
use crate::camera::Viewpoint;
use crate::error::Error;
use crate::trajectory::{Fraction, Scene, Trajectory};

/// Input bundle for scoring and baseline estimation.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    scenes: Vec<Scene>,
    trajectories: Vec<Trajectory>,
    fractions: BTreeMap<String, Vec<Fraction>>,
    viewpoints: Vec<Viewpoint>,
    responses: Vec<ResponseRecord>,
}

impl Dataset {
    /// Bundles the pieces after validating ids and cross references.
    ///
    /// Requirements: unique scene, trajectory, and viewpoint ids; every
    /// trajectory references an existing scene and lists at least one
    /// display fraction; fraction lists contain no duplicates and name
    /// existing trajectories; responses reference existing trajectories,
    /// listed fractions, existing viewpoints, and goals present in the
    /// trajectory's scene, with finite nonnegative response times or none.
    /// Fraction lists are sorted ascending.
    pub fn new(
        scenes: Vec<Scene>,
        trajectories: Vec<Trajectory>,
        fractions: BTreeMap<String, Vec<Fraction>>,
        viewpoints: Vec<Viewpoint>,
        responses: Vec<ResponseRecord>,
    ) -> Result<Self, Error> {
        let mut scene_ids = BTreeSet::new();
        for scene in &scenes {
            if !scene_ids.insert(String::from(scene.id())) {
                return Err(Error::DuplicateId { id: String::from(scene.id()) });
            }
        }
        let mut trajectory_ids = BTreeSet::new();
        for trajectory in &trajectories {
            if !trajectory_ids.insert(String::from(trajectory.id())) {
                return Err(Error::DuplicateId { id: String::from(trajectory.id()) });
            }
            if !scene_ids.contains(trajectory.scene_id()) {
                return Err(Error::DanglingReference {
                    kind: "scene",
                    id: String::from(trajectory.scene_id()),
                });
            }
        }
        let mut viewpoint_ids = BTreeSet::new();
        for view in &viewpoints {
            if !viewpoint_ids.insert(String::from(view.id())) {
                return Err(Error::DuplicateId { id: String::from(view.id()) });
            }
        }

        let mut fractions = fractions;
        for (trajectory_id, list) in &mut fractions {
            if !trajectory_ids.contains(trajectory_id) {
                return Err(Error::DanglingReference {
                    kind: "trajectory",
                    id: trajectory_id.clone(),
                });
            }
            list.sort();
            for pair in list.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::InvalidArgument {
                        what: "display fractions for a trajectory must be distinct",
                    });
                }
            }
        }
        for trajectory in &trajectories {
            let listed = fractions.get(trajectory.id()).map_or(0, Vec::len);
            if listed == 0 {
                return Err(Error::InvalidArgument {
                    what: "every trajectory needs at least one display fraction",
                });
            }
        }

        let dataset = Dataset { scenes, trajectories, fractions, viewpoints, responses };
        for response in &dataset.responses {
            let Some(trajectory) = dataset.trajectory(&response.trajectory_id) else {
                return Err(Error::DanglingReference {
                    kind: "trajectory",
                    id: response.trajectory_id.clone(),
                });
            };
            if !dataset.fractions[trajectory.id()].contains(&response.fraction) {
                return Err(Error::DanglingReference {
                    kind: "fraction",
                    id: format!("{}@{}", trajectory.id(), response.fraction),
                });
            }
            if let Some(view_id) = &response.viewpoint_id {
                if !viewpoint_ids.contains(view_id) {
                    return Err(Error::DanglingReference {
                        kind: "viewpoint",
                        id: view_id.clone(),
                    });
                }
            }
            let scene = dataset
                .scene(trajectory.scene_id())
                .expect("trajectory scene references were validated above");
            if let Guess::Goal(goal_id) = &response.guess {
                if scene.goal_index(goal_id).is_none() {
                    return Err(Error::UnknownGoal { id: goal_id.clone() });
                }
            }
            if let Some(time) = response.response_time_s {
                if !time.is_finite() {
                    return Err(Error::NonFinite { context: "response time" });
                }
                if time < 0.0 {
                    return Err(Error::InvalidArgument {
                        what: "response times must be nonnegative",
                    });
                }
            }
        }
        Ok(dataset)
    }

    pub fn scenes(&self) -> &[Scene] {
        &self.scenes
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    pub fn viewpoints(&self) -> &[Viewpoint] {
        &self.viewpoints
    }

    pub fn responses(&self) -> &[ResponseRecord] {
        &self.responses
    }

    pub fn scene(&self, id: &str) -> Option<&Scene> {
        self.scenes.iter().find(|scene| scene.id() == id)
    }

    pub fn trajectory(&self, id: &str) -> Option<&Trajectory> {
        self.trajectories.iter().find(|trajectory| trajectory.id() == id)
    }

    /// The scene a trajectory belongs to.
    pub fn scene_for_trajectory(&self, trajectory_id: &str) -> Option<&Scene> {
        self.trajectory(trajectory_id)
            .and_then(|trajectory| self.scene(trajectory.scene_id()))
    }

    /// Display fractions listed for a trajectory, ascending.
    pub fn fractions_for(&self, trajectory_id: &str) -> &[Fraction] {
        self.fractions.get(trajectory_id).map_or(&[], Vec::as_slice)
    }

    /// Responses for one displayed item. With `viewpoint` set, only
    /// responses tagged with that viewpoint match; with `None`, the
    /// viewpoint tag is ignored.
    pub fn responses_matching(
        &self,
        trajectory_id: &str,
        fraction: Fraction,
        viewpoint: Option<&str>,
    ) -> Vec<ResponseRecord> {
        self.responses
            .iter()
            .filter(|response| {
                response.trajectory_id == trajectory_id
                    && response.fraction == fraction
                    && viewpoint.is_none_or(|id| response.viewpoint_id.as_deref() == Some(id))
            })
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::{Goal, Point3, TrajectorySample};

    fn scene(id: &str) -> Scene {
        Scene::new(
            String::from(id),
            vec![
                Goal { id: String::from("g0"), position: Point3::new(1.0, 0.0, 0.0) },
                Goal { id: String::from("g1"), position: Point3::new(-1.0, 0.0, 0.0) },
            ],
            "g0",
            None,
        )
        .unwrap()
    }

    fn trajectory(id: &str, scene_id: &str) -> Trajectory {
        Trajectory::new(
            String::from(id),
            String::from(scene_id),
            vec![
                TrajectorySample { t: 0.0, p: Point3::ORIGIN },
                TrajectorySample { t: 1.0, p: Point3::new(0.5, 0.0, 0.0) },
                TrajectorySample { t: 2.0, p: Point3::new(1.0, 0.0, 0.0) },
            ],
        )
        .unwrap()
    }

    fn viewpoint(id: &str) -> Viewpoint {
        Viewpoint::new(
            String::from(id),
            100.0,
            100.0,
            50.0,
            50.0,
            100.0,
            100.0,
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            Point3::new(0.0, 0.0, 5.0),
        )
        .unwrap()
    }

    fn fractions(entries: &[(&str, &[f64])]) -> BTreeMap<String, Vec<Fraction>> {
        entries
            .iter()
            .map(|(id, values)| {
                (
                    String::from(*id),
                    values.iter().map(|&v| Fraction::new(v).unwrap()).collect(),
                )
            })
            .collect()
    }

    fn response(trajectory_id: &str, fraction: f64, guess: Guess) -> ResponseRecord {
        ResponseRecord {
            trajectory_id: String::from(trajectory_id),
            fraction: Fraction::new(fraction).unwrap(),
            viewpoint_id: None,
            participant_id: String::from("p1"),
            guess,
            response_time_s: None,
        }
    }

    #[test]
    fn builds_and_answers_lookups() {
        let dataset = Dataset::new(
            vec![scene("s1"), scene("s2")],
            vec![trajectory("t1", "s1"), trajectory("t2", "s2")],
            fractions(&[("t1", &[1.0, 0.25]), ("t2", &[0.5])]),
            vec![viewpoint("v1")],
            vec![response("t1", 0.25, Guess::Goal(String::from("g0")))],
        )
        .unwrap();
        assert_eq!(dataset.scenes().len(), 2);
        assert_eq!(dataset.trajectories().len(), 2);
        assert_eq!(dataset.scene_for_trajectory("t2").unwrap().id(), "s2");
        assert!(dataset.scene_for_trajectory("t9").is_none());
        let listed: Vec<f64> =
            dataset.fractions_for("t1").iter().map(|f| f.value()).collect();
        assert_eq!(listed, vec![0.25, 1.0]);
        assert!(dataset.fractions_for("t9").is_empty());
    }

    #[test]
    fn rejects_duplicate_ids() {
        let result = Dataset::new(
            vec![scene("s1"), scene("s1")],
            vec![],
            BTreeMap::new(),
            vec![],
            vec![],
        );
        assert_eq!(result.unwrap_err(), Error::DuplicateId { id: String::from("s1") });

        let result = Dataset::new(
            vec![scene("s1")],
            vec![trajectory("t1", "s1"), trajectory("t1", "s1")],
            fractions(&[("t1", &[1.0])]),
            vec![],
            vec![],
        );
        assert_eq!(result.unwrap_err(), Error::DuplicateId { id: String::from("t1") });

        let result = Dataset::new(
            vec![scene("s1")],
            vec![trajectory("t1", "s1")],
            fractions(&[("t1", &[1.0])]),
            vec![viewpoint("v1"), viewpoint("v1")],
            vec![],
        );
        assert_eq!(result.unwrap_err(), Error::DuplicateId { id: String::from("v1") });
    }

    #[test]
    fn rejects_dangling_references() {
        let result = Dataset::new(
            vec![scene("s1")],
            vec![trajectory("t1", "s9")],
            fractions(&[("t1", &[1.0])]),
            vec![],
            vec![],
        );
        assert_eq!(
            result.unwrap_err(),
            Error::DanglingReference { kind: "scene", id: String::from("s9") }
        );

        let result = Dataset::new(
            vec![scene("s1")],
            vec![trajectory("t1", "s1")],
            fractions(&[("t1", &[1.0]), ("t9", &[1.0])]),
            vec![],
            vec![],
        );
        assert_eq!(
            result.unwrap_err(),
            Error::DanglingReference { kind: "trajectory", id: String::from("t9") }
        );
    }

    #[test]
    fn requires_distinct_fractions_for_every_trajectory() {
        let result = Dataset::new(
            vec![scene("s1")],
            vec![trajectory("t1", "s1")],
            BTreeMap::new(),
            vec![],
            vec![],
        );
        assert_eq!(
            result.unwrap_err(),
            Error::InvalidArgument { what: "every trajectory needs at least one display fraction" }
        );

        let result = Dataset::new(
            vec![scene("s1")],
            vec![trajectory("t1", "s1")],
            fractions(&[("t1", &[0.5, 0.5])]),
            vec![],
            vec![],
        );
        assert_eq!(
            result.unwrap_err(),
            Error::InvalidArgument {
                what: "display fractions for a trajectory must be distinct"
            }
        );
    }

    #[test]
    fn validates_responses() {
        let base = |responses: Vec<ResponseRecord>| {
            Dataset::new(
                vec![scene("s1")],
                vec![trajectory("t1", "s1")],
                fractions(&[("t1", &[0.5, 1.0])]),
                vec![viewpoint("v1")],
                responses,
            )
        };

        assert_eq!(
            base(vec![response("t9", 0.5, Guess::NoAnswer)]).unwrap_err(),
            Error::DanglingReference { kind: "trajectory", id: String::from("t9") }
        );
        assert_eq!(
            base(vec![response("t1", 0.75, Guess::NoAnswer)]).unwrap_err(),
            Error::DanglingReference { kind: "fraction", id: String::from("t1@0.75") }
        );
        assert_eq!(
            base(vec![response("t1", 0.5, Guess::Goal(String::from("g7")))]).unwrap_err(),
            Error::UnknownGoal { id: String::from("g7") }
        );

        let mut tagged = response("t1", 0.5, Guess::NoAnswer);
        tagged.viewpoint_id = Some(String::from("v9"));
        assert_eq!(
            base(vec![tagged]).unwrap_err(),
            Error::DanglingReference { kind: "viewpoint", id: String::from("v9") }
        );

        let mut negative = response("t1", 0.5, Guess::NoAnswer);
        negative.response_time_s = Some(-0.1);
        assert_eq!(
            base(vec![negative]).unwrap_err(),
            Error::InvalidArgument { what: "response times must be nonnegative" }
        );

        let mut nan = response("t1", 0.5, Guess::NoAnswer);
        nan.response_time_s = Some(f64::NAN);
        assert_eq!(
            base(vec![nan]).unwrap_err(),
            Error::NonFinite { context: "response time" }
        );

        assert!(base(vec![response("t1", 0.5, Guess::NoAnswer)]).is_ok());
    }

    #[test]
    fn matches_responses_by_item_and_viewpoint() {
        let mut tagged = response("t1", 0.5, Guess::Goal(String::from("g0")));
        tagged.viewpoint_id = Some(String::from("v1"));
        let untagged = response("t1", 0.5, Guess::Goal(String::from("g1")));
        let other_fraction = response("t1", 1.0, Guess::NoAnswer);
        let dataset = Dataset::new(
            vec![scene("s1")],
            vec![trajectory("t1", "s1")],
            fractions(&[("t1", &[0.5, 1.0])]),
            vec![viewpoint("v1")],
            vec![tagged, untagged, other_fraction],
        )
        .unwrap();

        let half = Fraction::new(0.5).unwrap();
        let pooled = dataset.responses_matching("t1", half, None);
        assert_eq!(pooled.len(), 2);
        let only_v1 = dataset.responses_matching("t1", half, Some("v1"));
        assert_eq!(only_v1.len(), 1);
        assert_eq!(only_v1[0].viewpoint_id.as_deref(), Some("v1"));
        assert!(dataset.responses_matching("t1", half, Some("v2")).is_empty());
        assert_eq!(dataset.responses_matching("t1", Fraction::FULL, None).len(), 1);
    }
}
