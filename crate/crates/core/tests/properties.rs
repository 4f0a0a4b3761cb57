//! Randomized invariants over the public geometry, scoring, and statistics
//! surface.

use legibility_core::baseline::{bootstrap_ci, Guess, ResponseRecord};
use legibility_core::camera::Viewpoint;
use legibility_core::frameworks::{goal_posterior, score_dragan, score_nikolaidis};
use legibility_core::stats::spearman_rho;
use legibility_core::trajectory::{
    integrate_time_series, DerivativeOrder, Fraction, Goal, Point3, Scene, Trajectory,
    TrajectorySample,
};
use proptest::prelude::*;

fn rotated(p: Point3, axis: Point3, angle: f64) -> Point3 {
    let u = axis.scale(1.0 / axis.norm());
    let (sin, cos) = angle.sin_cos();
    p.scale(cos) + u.cross(p).scale(sin) + u.scale(u.dot(p) * (1.0 - cos))
}

fn rebuilt(traj: &Trajectory, map: impl Fn(Point3) -> Point3) -> Trajectory {
    let samples = traj
        .samples()
        .iter()
        .map(|sample| TrajectorySample { t: sample.t, p: map(sample.p) })
        .collect();
    Trajectory::new(traj.id().to_string(), traj.scene_id().to_string(), samples).unwrap()
}

fn coordinate() -> impl Strategy<Value = f64> + Clone {
    -3.0f64..3.0
}

fn point() -> impl Strategy<Value = Point3> + Clone {
    (coordinate(), coordinate(), coordinate()).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn visible_point() -> impl Strategy<Value = Point3> + Clone {
    (coordinate(), coordinate(), 0.5f64..3.0).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn unit_axis() -> impl Strategy<Value = Point3> {
    point().prop_filter("axis needs a usable norm", |p| p.norm() > 1e-2)
}

fn trajectory_from(
    points: impl Strategy<Value = Point3> + Clone,
) -> impl Strategy<Value = Trajectory> {
    (0.0f64..2.0, points.clone(), proptest::collection::vec((0.05f64..1.0, points), 3..11))
        .prop_map(|(t0, first, steps)| {
            let mut samples = vec![TrajectorySample { t: t0, p: first }];
            for (dt, p) in steps {
                let t = samples.last().unwrap().t + dt;
                samples.push(TrajectorySample { t, p });
            }
            Trajectory::new("traj".to_string(), "scene".to_string(), samples).unwrap()
        })
}

fn trajectory() -> impl Strategy<Value = Trajectory> {
    trajectory_from(point())
}

fn scene_from(points: impl Strategy<Value = Point3> + Clone) -> impl Strategy<Value = Scene> {
    proptest::collection::vec(points, 2..5)
        .prop_filter("goals must be pairwise separated", |positions| {
            positions
                .iter()
                .enumerate()
                .all(|(i, a)| positions[..i].iter().all(|b| a.distance(*b) > 1e-3))
        })
        .prop_map(|positions| {
            let goals = positions
                .into_iter()
                .enumerate()
                .map(|(i, position)| Goal { id: format!("g{i}"), position })
                .collect();
            Scene::new("scene".to_string(), goals, "g0", None).unwrap()
        })
}

fn scene() -> impl Strategy<Value = Scene> {
    scene_from(point())
}

fn frontal_camera() -> Viewpoint {
    Viewpoint::new(
        "cam".to_string(),
        100.0,
        100.0,
        50.0,
        50.0,
        100.0,
        100.0,
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        Point3::ORIGIN,
    )
    .unwrap()
}

proptest! {
    #[test]
    fn truncate_full_returns_the_whole_trajectory(traj in trajectory()) {
        let full = traj.truncate_to_fraction(Fraction::FULL).unwrap();
        prop_assert_eq!(full, traj);
    }

    #[test]
    fn truncation_keeps_a_prefix_and_ends_at_the_cut(
        traj in trajectory(),
        f in 0.01f64..=1.0,
    ) {
        let fraction = Fraction::new(f).unwrap();
        let cut = traj.start_time() + fraction.value() * traj.duration();
        let partial = traj.truncate_to_fraction(fraction).unwrap();
        let kept = partial.samples();
        let original = traj.samples();
        prop_assert!(kept.len() <= original.len());
        for (a, b) in kept.iter().take(kept.len() - 1).zip(original) {
            prop_assert_eq!(a, b);
        }
        let last = kept[kept.len() - 1];
        let on_grid = original.get(kept.len() - 1) == Some(&last);
        prop_assert!(on_grid || last.t == cut);
        if fraction.value() < 1.0 {
            prop_assert!(partial.end_time() <= cut);
        }
    }

    #[test]
    fn arc_length_never_decreases_with_the_fraction(
        traj in trajectory(),
        a in 0.01f64..=1.0,
        b in 0.01f64..=1.0,
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let short = traj.truncate_to_fraction(Fraction::new(lo).unwrap()).unwrap();
        let long = traj.truncate_to_fraction(Fraction::new(hi).unwrap()).unwrap();
        prop_assert!(short.arc_length() <= long.arc_length() + 1e-9);
    }

    #[test]
    fn arc_length_is_invariant_under_rigid_motion(
        traj in trajectory(),
        axis in unit_axis(),
        angle in -3.2f64..3.2,
        shift in point(),
    ) {
        let moved = rebuilt(&traj, |p| rotated(p, axis, angle) + shift);
        let reference = traj.arc_length();
        prop_assert!((moved.arc_length() - reference).abs() <= 1e-9 * (1.0 + reference));
    }

    #[test]
    fn integration_is_linear_in_the_integrand(
        grid in proptest::collection::vec((0.05f64..1.0, -5.0f64..5.0, -5.0f64..5.0), 2..12),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let mut t = 0.0;
        let mut f = Vec::new();
        let mut g = Vec::new();
        let mut combined = Vec::new();
        for (dt, fv, gv) in grid {
            t += dt;
            f.push((t, fv));
            g.push((t, gv));
            combined.push((t, a * fv + b * gv));
        }
        let lhs = integrate_time_series(&combined).unwrap();
        let rhs = a * integrate_time_series(&f).unwrap() + b * integrate_time_series(&g).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs() + rhs.abs()));
    }

    #[test]
    fn integration_is_exact_for_affine_integrands(
        steps in proptest::collection::vec(0.05f64..1.0, 1..12),
        t0 in 0.0f64..2.0,
        c0 in -5.0f64..5.0,
        c1 in -5.0f64..5.0,
    ) {
        let mut series = vec![(t0, c0 + c1 * t0)];
        for dt in steps {
            let t = series.last().unwrap().0 + dt;
            series.push((t, c0 + c1 * t));
        }
        let t1 = series.last().unwrap().0;
        let exact = c0 * (t1 - t0) + 0.5 * c1 * (t1 * t1 - t0 * t0);
        let quadrature = integrate_time_series(&series).unwrap();
        prop_assert!((quadrature - exact).abs() <= 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn velocity_of_straight_uniform_motion_is_the_slope(
        steps in proptest::collection::vec(0.05f64..1.0, 3..11),
        t0 in 0.0f64..2.0,
        base in point(),
        slope in point(),
    ) {
        let mut samples = vec![TrajectorySample { t: t0, p: base + slope.scale(t0) }];
        for dt in steps {
            let t = samples.last().unwrap().t + dt;
            samples.push(TrajectorySample { t, p: base + slope.scale(t) });
        }
        let traj = Trajectory::new("traj".to_string(), "scene".to_string(), samples).unwrap();
        for (_, v) in traj.finite_difference_series(DerivativeOrder::Velocity).unwrap() {
            prop_assert!((v - slope).norm() <= 1e-9 * (1.0 + slope.norm()));
        }
    }

    #[test]
    fn goal_posterior_is_a_probability_vector(
        scene in scene(),
        start in point(),
        query in point(),
    ) {
        let posterior = goal_posterior(&scene, start, query);
        prop_assert_eq!(posterior.len(), scene.goals().len());
        let mut sum = 0.0;
        for p in &posterior {
            prop_assert!(*p >= 0.0 && *p <= 1.0 + 1e-12);
            sum += p;
        }
        prop_assert!((sum - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn dragan_score_stays_in_the_unit_interval(traj in trajectory(), scene in scene()) {
        let score = score_dragan(&traj, &scene).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&score));
    }

    #[test]
    fn nikolaidis_score_stays_in_the_unit_interval(
        traj in trajectory_from(visible_point()),
        scene in scene_from(visible_point()),
    ) {
        let view = frontal_camera();
        let score = score_nikolaidis(&traj, &scene, &view).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&score));
    }

    #[test]
    fn straight_reach_commitment_is_monotone_without_forward_distractors(
        start in point(),
        goal in point(),
        k in 0.1f64..2.0,
        c1 in -2.0f64..2.0,
        c2 in -2.0f64..2.0,
    ) {
        let w = goal - start;
        prop_assume!(w.norm() > 0.05);
        let helper = if w.cross(Point3::new(0.0, 0.0, 1.0)).norm() > 1e-6 {
            Point3::new(0.0, 0.0, 1.0)
        } else {
            Point3::new(0.0, 1.0, 0.0)
        };
        let u1 = {
            let raw = w.cross(helper);
            raw.scale(1.0 / raw.norm())
        };
        let u2 = {
            let raw = w.cross(u1);
            raw.scale(1.0 / raw.norm())
        };
        let distractor = goal - w.scale(k) + u1.scale(c1) + u2.scale(c2);
        prop_assume!(distractor.distance(goal) > 1e-3);
        let scene = Scene::new(
            "scene".to_string(),
            vec![
                Goal { id: "g0".to_string(), position: goal },
                Goal { id: "g1".to_string(), position: distractor },
            ],
            "g0",
            None,
        )
        .unwrap();
        let mut previous = -1.0;
        for step in 0..=10 {
            let alpha = f64::from(step) / 10.0;
            let p = goal_posterior(&scene, start, start.lerp(goal, alpha))[0];
            prop_assert!(p + 1e-12 >= previous);
            previous = p;
        }
    }

    #[test]
    fn spearman_is_symmetric_and_bounded(
        pairs in proptest::collection::vec((-6i32..=6, -6i32..=6), 3..16),
    ) {
        let left: Vec<f64> = pairs.iter().map(|&(a, _)| f64::from(a) * 0.5).collect();
        let right: Vec<f64> = pairs.iter().map(|&(_, b)| f64::from(b) * 0.5).collect();
        prop_assume!(left.iter().any(|v| *v != left[0]));
        prop_assume!(right.iter().any(|v| *v != right[0]));
        let forward = spearman_rho(&left, &right).unwrap();
        let backward = spearman_rho(&right, &left).unwrap();
        prop_assert!(forward.rho.abs() <= 1.0 + 1e-12);
        prop_assert!((forward.rho - backward.rho).abs() <= 1e-12);
        prop_assert_eq!(forward.n, left.len());
    }

    #[test]
    fn spearman_ignores_monotone_rescaling(
        pairs in proptest::collection::vec((-6i32..=6, -6i32..=6), 3..16),
    ) {
        let left: Vec<f64> = pairs.iter().map(|&(a, _)| f64::from(a) * 0.5).collect();
        let right: Vec<f64> = pairs.iter().map(|&(_, b)| f64::from(b) * 0.5).collect();
        prop_assume!(left.iter().any(|v| *v != left[0]));
        prop_assume!(right.iter().any(|v| *v != right[0]));
        let cubed: Vec<f64> = left.iter().map(|v| v * v * v).collect();
        let plain = spearman_rho(&left, &right).unwrap();
        let warped = spearman_rho(&cubed, &right).unwrap();
        prop_assert!((plain.rho - warped.rho).abs() <= 1e-12);
    }

    #[test]
    fn bootstrap_interval_is_ordered_and_seeded(
        outcomes in proptest::collection::vec(any::<bool>(), 3..12),
        resamples in 20usize..100,
        level in 0.5f64..0.99,
        seed in any::<u64>(),
    ) {
        let scene = Scene::new(
            "scene".to_string(),
            vec![
                Goal { id: "g0".to_string(), position: Point3::new(1.0, 0.0, 0.0) },
                Goal { id: "g1".to_string(), position: Point3::new(-1.0, 0.0, 0.0) },
            ],
            "g0",
            None,
        )
        .unwrap();
        let responses: Vec<ResponseRecord> = outcomes
            .iter()
            .enumerate()
            .map(|(i, correct)| ResponseRecord {
                trajectory_id: "t".to_string(),
                fraction: Fraction::FULL,
                viewpoint_id: None,
                participant_id: format!("p{i}"),
                guess: Guess::Goal(if *correct { "g0" } else { "g1" }.to_string()),
                response_time_s: None,
            })
            .collect();
        let (low, high) = bootstrap_ci(&responses, &scene, resamples, level, seed).unwrap();
        prop_assert!(low <= high);
        prop_assert!((0.0..=1.0).contains(&low) && (0.0..=1.0).contains(&high));
        let again = bootstrap_ci(&responses, &scene, resamples, level, seed).unwrap();
        prop_assert_eq!((low, high), again);
    }
}
