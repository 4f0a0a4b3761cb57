//! Error type shared by every module in the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while validating inputs or scoring them.
///
/// Construction-time validation (trajectories, scenes, cameras, datasets)
/// and scoring-time failures (degenerate partials, points behind a camera,
/// missing human feedback) share this one enum so results compose across
/// modules without conversion layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A numeric input was NaN or infinite.
    NonFinite { context: &'static str },
    /// Fewer samples than the operation requires.
    TooFewSamples { needed: usize, got: usize },
    /// Sample timestamps must be strictly increasing.
    TimestampsNotIncreasing { index: usize },
    /// Sample timestamps must be nonnegative.
    NegativeTimestamp { index: usize },
    /// A display fraction must be finite and in (0, 1].
    InvalidFraction { value: f64 },
    /// Truncation left fewer than two samples or a zero-length time span.
    DegeneratePartial,
    /// A trajectory spans no time, so time-weighted scores are undefined.
    DegenerateTrajectory,
    /// A scene needs an intended goal and at least one distractor.
    TooFewGoals { got: usize },
    /// A goal id was referenced but does not exist in the scene.
    UnknownGoal { id: String },
    /// Two records share an id that must be unique.
    DuplicateId { id: String },
    /// Goal positions within a scene must be pairwise distinct.
    DuplicateGoalPosition { first: String, second: String },
    /// The prior map failed validation.
    InvalidPriors { reason: &'static str },
    /// A scoring hyperparameter failed validation.
    InvalidHyperparameter { name: &'static str, reason: &'static str },
    /// Camera intrinsics or image size failed validation.
    InvalidCamera { reason: &'static str },
    /// The rotation matrix is not orthonormal with determinant +1.
    InvalidRotation,
    /// A world point mapped to nonpositive camera-frame depth.
    BehindCamera { sample: Option<usize> },
    /// A camera-space scorer was requested but the dataset has no viewpoints.
    MissingViewpoints,
    /// A feedback-based scorer was requested without matching responses.
    MissingFeedback,
    /// An estimate was requested over an empty response set.
    EmptyResponses,
    /// Paired lists must have equal lengths.
    LengthMismatch { left: usize, right: usize },
    /// Too few pairs for a rank correlation.
    InsufficientPairs { needed: usize, got: usize },
    /// A correlation input was constant, so the coefficient is undefined.
    ConstantValues { side: &'static str },
    /// A record referenced an id that is missing from the dataset.
    DanglingReference { kind: &'static str, id: String },
    /// A scalar argument was outside its documented range.
    InvalidArgument { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { context } => {
                write!(f, "non-finite value in {context}")
            }
            Error::TooFewSamples { needed, got } => {
                write!(f, "insufficient samples: need at least {needed}, got {got}")
            }
            Error::TimestampsNotIncreasing { index } => {
                write!(f, "timestamps must be strictly increasing (violation at sample {index})")
            }
            Error::NegativeTimestamp { index } => {
                write!(f, "timestamps must be nonnegative (violation at sample {index})")
            }
            Error::InvalidFraction { value } => {
                write!(f, "fraction must be finite and in (0, 1], got {value}")
            }
            Error::DegeneratePartial => {
                write!(f, "degenerate partial: truncation left fewer than two samples or no time span")
            }
            Error::DegenerateTrajectory => {
                write!(f, "degenerate trajectory: samples span no time")
            }
            Error::TooFewGoals { got } => {
                write!(f, "scene needs at least 2 goals, got {got}")
            }
            Error::UnknownGoal { id } => {
                write!(f, "unknown goal id '{id}'")
            }
            Error::DuplicateId { id } => {
                write!(f, "duplicate id '{id}'")
            }
            Error::DuplicateGoalPosition { first, second } => {
                write!(f, "goals '{first}' and '{second}' share a position")
            }
            Error::InvalidPriors { reason } => {
                write!(f, "invalid goal priors: {reason}")
            }
            Error::InvalidHyperparameter { name, reason } => {
                write!(f, "invalid hyperparameter {name}: {reason}")
            }
            Error::InvalidCamera { reason } => {
                write!(f, "invalid camera: {reason}")
            }
            Error::InvalidRotation => {
                write!(f, "rotation must be orthonormal with determinant +1")
            }
            Error::BehindCamera { sample } => match sample {
                Some(index) => write!(f, "point behind camera at sample {index}"),
                None => write!(f, "point behind camera"),
            },
            Error::MissingViewpoints => {
                write!(f, "dataset provides no viewpoints")
            }
            Error::MissingFeedback => {
                write!(f, "no observer responses for this item")
            }
            Error::EmptyResponses => {
                write!(f, "response set is empty")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "paired lists differ in length: {left} vs {right}")
            }
            Error::InsufficientPairs { needed, got } => {
                write!(f, "insufficient pairs: need at least {needed}, got {got}")
            }
            Error::ConstantValues { side } => {
                write!(f, "correlation undefined: {side} values are constant")
            }
            Error::DanglingReference { kind, id } => {
                write!(f, "reference to unknown {kind} '{id}'")
            }
            Error::InvalidArgument { what } => {
                write!(f, "invalid argument: {what}")
            }
        }
    }
}

impl core::error::Error for Error {}
