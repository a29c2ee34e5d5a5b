use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::geometry::{rotation, Isometry};
use super::triangle::Triangle;
use super::HyperbolicError;
use crate::presentations::{evaluate, GeneratorAssignment, GroupElement, Word};

/// Composes the images of `w` left to right.
pub fn evaluate_word(w: &Word, a: &GeneratorAssignment<Isometry>) -> Result<Isometry, HyperbolicError> {
    Ok(evaluate(w, a)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleSpec {
    /// Denominators `[p, q, r]`: angles `π/p, π/q, π/r` at `A, B, C`.
    pub angles: [u32; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationSpec {
    pub vertex: String,
    pub angle: f64,
}

/// How one generator is realized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ImageSpec {
    Rotation(RotationSpec),
    /// Product of reflections in the named sides, leftmost applied last,
    /// e.g. `["BC", "AC"]` is `r_BC ∘ r_AC`.
    Reflections(Vec<String>),
}

/// Assignment file: a triangle and an image for each generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentSpec {
    pub triangle: TriangleSpec,
    pub generators: BTreeMap<String, ImageSpec>,
}

impl AssignmentSpec {
    pub fn from_json(text: &str) -> Result<Self, HyperbolicError> {
        serde_json::from_str(text).map_err(|e| HyperbolicError::Json(e.to_string()))
    }

    pub fn triangle(&self) -> Result<Triangle, HyperbolicError> {
        let [p, q, r] = self.triangle.angles;
        Triangle::from_denominators(p, q, r)
    }

    pub fn build(&self) -> Result<(Triangle, GeneratorAssignment<Isometry>), HyperbolicError> {
        let t = self.triangle()?;
        let mut a = GeneratorAssignment::new();
        for (g, spec) in &self.generators {
            let m = match spec {
                ImageSpec::Rotation(r) => rotation(t.vertex(&r.vertex)?, r.angle),
                ImageSpec::Reflections(sides) => sides.iter().try_fold(Isometry::identity(), |acc, s| {
                    Ok::<_, HyperbolicError>(acc.compose(&t.reflection(s)?))
                })?,
            };
            a.insert(g.as_str(), m);
        }
        Ok((t, a))
    }
}

/// The `(7, 2, 5)` data: angles `π/7, π/2, π/5` at `A, B, C`, with
/// `β ↦ rotation(C, −2π/5) = r_BC ∘ r_AC` and
/// `γ ↦ rotation(A, −2π/7) = r_AC ∘ r_AB`.
pub fn triangle_group_rep() -> (Triangle, GeneratorAssignment<Isometry>) {
    let t = Triangle::from_denominators(7, 2, 5).expect("(7,2,5) is hyperbolic");
    let a = GeneratorAssignment::new()
        .with("beta", rotation(&t.vertices[super::C], -2.0 * PI / 5.0))
        .with("gamma", rotation(&t.vertices[super::A], -2.0 * PI / 7.0));
    (t, a)
}
