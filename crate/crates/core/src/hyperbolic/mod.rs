//! Isometries of the hyperbolic plane in the hyperboloid model
//! `x² + y² − t² = −1, t > 0`, represented as real 3×3 matrices preserving
//! the form `J = diag(1, 1, −1)`.
//!
//! Angles are counterclockwise when the sheet is viewed from above
//! (looking down the `t` axis), so [`rotation`] about the origin by `θ` is
//! the usual rotation of the `(x, y)` plane.

mod assignment;
mod geometry;
mod triangle;

use thiserror::Error;

use crate::presentations::PresentationError;

pub use assignment::{
    evaluate_word, triangle_group_rep, AssignmentSpec, ImageSpec, RotationSpec, TriangleSpec,
};
pub use geometry::{
    classify, is_identity, lorentz, lorentz_defect, minkowski, reflect, rotation, Classification,
    Geodesic, HPoint, Isometry, IsometryKind, LORENTZ_TOL,
};
pub use triangle::{triangle_from_angles, Triangle, A, B, C};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperbolicError {
    #[error("({x}, {y}, {t}) is not on the upper sheet")]
    InvalidPoint { x: f64, y: f64, t: f64 },
    #[error("({x}, {y}, {t}) is not a spacelike unit normal")]
    NotSpacelike { x: f64, y: f64, t: f64 },
    #[error("matrix does not preserve the Lorentz form (relative defect {defect:e})")]
    NotLorentz { defect: f64 },
    #[error("matrix exchanges the two sheets")]
    SwapsSheets,
    #[error("angle {0} is not in (0, π)")]
    InvalidAngle(f64),
    #[error("angle sum {sum} is not below π")]
    NotHyperbolic { sum: f64 },
    #[error("isometry reverses orientation")]
    OrientationReversing,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown side `{0}`")]
    UnknownEdge(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}
