//! Pinhole viewpoints and world-to-pixel projection.
//!
//! A [`Viewpoint`] is a calibrated camera: intrinsics, image size, and a
//! rigid world-to-camera transform. Camera-space scoring projects
//! trajectory samples and goal positions through it and works entirely in
//! pixel coordinates, which is how viewing angle enters the pipeline.

use alloc::string::String;
use alloc::vec::Vec;


use crate::error::Error;
use crate::trajectory::{Point3, Trajectory};

const ROTATION_TOLERANCE: f64 = 1e-9;

/// One projected trajectory sample, in pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelSample {
    pub t: f64,
    pub u: f64,
    pub v: f64,
}

/// A calibrated pinhole camera.
///
/// The pose maps world points into the camera frame as `R p + t` with `R`
/// orthonormal (determinant +1, row-major rows) and the optical axis along
/// +z, so only points with positive camera-frame depth are visible.
#[derive(Debug, Clone, PartialEq)]
pub struct Viewpoint {
    id: String,
    fx: f64,
    fy: f64,
    cx: f64,
    cy: f64,
    width: f64,
    height: f64,
    rotation: [[f64; 3]; 3],
    translation: Point3,
}

impl Viewpoint {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: String,
        fx: f64,
        fy: f64,
        cx: f64,
        cy: f64,
        width: f64,
        height: f64,
        rotation: [[f64; 3]; 3],
        translation: Point3,
    ) -> Result<Self, Error> {
        let scalars = [fx, fy, cx, cy, width, height];
        if scalars.iter().any(|value| !value.is_finite()) || !translation.is_finite() {
            return Err(Error::NonFinite { context: "camera parameters" });
        }
        if rotation.iter().flatten().any(|value| !value.is_finite()) {
            return Err(Error::NonFinite { context: "camera parameters" });
        }
        if fx <= 0.0 || fy <= 0.0 {
            return Err(Error::InvalidCamera { reason: "focal lengths must be positive" });
        }
        if width <= 0.0 || height <= 0.0 {
            return Err(Error::InvalidCamera { reason: "image size must be positive" });
        }
        let rows = [row(rotation, 0), row(rotation, 1), row(rotation, 2)];
        for i in 0..3 {
            for j in i..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (rows[i].dot(rows[j]) - expected).abs() > ROTATION_TOLERANCE {
                    return Err(Error::InvalidRotation);
                }
            }
        }
        let det = rows[0].dot(rows[1].cross(rows[2]));
        if (det - 1.0).abs() > ROTATION_TOLERANCE {
            return Err(Error::InvalidRotation);
        }
        Ok(Viewpoint { id, fx, fy, cx, cy, width, height, rotation, translation })
    }

    /// Builds the pose of a camera at `eye` aimed at `target`, with `up`
    /// fixing the roll, and the given intrinsics.
    #[allow(clippy::too_many_arguments)]
    pub fn look_at(
        id: String,
        eye: Point3,
        target: Point3,
        up: Point3,
        fx: f64,
        fy: f64,
        cx: f64,
        cy: f64,
        width: f64,
        height: f64,
    ) -> Result<Self, Error> {
        if !eye.is_finite() || !target.is_finite() || !up.is_finite() {
            return Err(Error::NonFinite { context: "camera parameters" });
        }
        let forward = target - eye;
        if forward.norm() < 1e-12 {
            return Err(Error::InvalidCamera { reason: "eye and target coincide" });
        }
        let z_axis = forward.scale(1.0 / forward.norm());
        let side = up.cross(z_axis);
        if side.norm() < 1e-12 {
            return Err(Error::InvalidCamera {
                reason: "up direction is parallel to the view direction",
            });
        }
        let x_axis = side.scale(1.0 / side.norm());
        let y_axis = z_axis.cross(x_axis);
        let rotation = [
            [x_axis.x, x_axis.y, x_axis.z],
            [y_axis.x, y_axis.y, y_axis.z],
            [z_axis.x, z_axis.y, z_axis.z],
        ];
        let translation = Point3::new(
            -row(rotation, 0).dot(eye),
            -row(rotation, 1).dot(eye),
            -row(rotation, 2).dot(eye),
        );
        Viewpoint::new(id, fx, fy, cx, cy, width, height, rotation, translation)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn fx(&self) -> f64 {
        self.fx
    }

    pub fn fy(&self) -> f64 {
        self.fy
    }

    pub fn cx(&self) -> f64 {
        self.cx
    }

    pub fn cy(&self) -> f64 {
        self.cy
    }

    pub fn rotation(&self) -> &[[f64; 3]; 3] {
        &self.rotation
    }

    pub fn translation(&self) -> Point3 {
        self.translation
    }

    /// Image diagonal in pixels, the normalizer for camera-space distances.
    pub fn image_diagonal(&self) -> f64 {
        (self.width * self.width + self.height * self.height).sqrt()
    }

    /// The world point expressed in the camera frame.
    pub fn camera_frame(&self, point: Point3) -> Point3 {
        Point3::new(
            row(self.rotation, 0).dot(point),
            row(self.rotation, 1).dot(point),
            row(self.rotation, 2).dot(point),
        ) + self.translation
    }

    /// Projects a world point to pixel coordinates `(u, v)`.
    ///
    /// Fails with a behind-camera error when the point's camera-frame depth
    /// is not strictly positive.
    pub fn project_point(&self, point: Point3) -> Result<(f64, f64), Error> {
        let cam = self.camera_frame(point);
        if cam.z <= 0.0 {
            return Err(Error::BehindCamera { sample: None });
        }
        Ok((self.fx * cam.x / cam.z + self.cx, self.fy * cam.y / cam.z + self.cy))
    }

    /// Projects every trajectory sample, preserving timestamps. A failure
    /// names the first offending sample.
    pub fn project_trajectory(&self, trajectory: &Trajectory) -> Result<Vec<PixelSample>, Error> {
        trajectory
            .samples()
            .iter()
            .enumerate()
            .map(|(index, sample)| match self.project_point(sample.p) {
                Ok((u, v)) => Ok(PixelSample { t: sample.t, u, v }),
                Err(Error::BehindCamera { .. }) => {
                    Err(Error::BehindCamera { sample: Some(index) })
                }
                Err(other) => Err(other),
            })
            .collect()
    }
}

fn row(rotation: [[f64; 3]; 3], index: usize) -> Point3 {
    Point3::new(rotation[index][0], rotation[index][1], rotation[index][2])
}
