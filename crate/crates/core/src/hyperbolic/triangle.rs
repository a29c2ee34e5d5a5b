use std::f64::consts::PI;

use serde::Serialize;

use super::geometry::{minkowski, reflect, Geodesic, HPoint, Isometry};
use super::HyperbolicError;

/// A hyperbolic triangle `ABC`, placed with `B` at the origin, `A` on the
/// positive x-axis and `C` above it, so a right angle at `B` puts `C` on the
/// positive y-axis.
///
/// `edges[i]` is the side opposite `vertices[i]`: `[BC, AC, AB]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Triangle {
    pub angles: [f64; 3],
    pub vertices: [HPoint; 3],
    pub edges: [Geodesic; 3],
}

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;

/// Builds the triangle with angles `a1, a2, a3` at `A, B, C`.
pub fn triangle_from_angles(a1: f64, a2: f64, a3: f64) -> Result<Triangle, HyperbolicError> {
    for a in [a1, a2, a3] {
        if !(a > 0.0 && a < PI) {
            return Err(HyperbolicError::InvalidAngle(a));
        }
    }
    let sum = a1 + a2 + a3;
    if !(sum < PI) {
        return Err(HyperbolicError::NotHyperbolic { sum });
    }
    let ab = opposite_side(a3, a1, a2);
    let bc = opposite_side(a1, a2, a3);
    let va = HPoint::from_polar(ab, 0.0);
    let vb = HPoint::origin();
    let vc = HPoint::from_polar(bc, a2);
    let edges = [
        Geodesic::through(&vb, &vc)?,
        Geodesic::through(&va, &vc)?,
        Geodesic::through(&va, &vb)?,
    ];
    Ok(Triangle { angles: [a1, a2, a3], vertices: [va, vb, vc], edges })
}

/// Length of the side opposite the angle `opp`, from the angle form of the
/// hyperbolic law of cosines.
fn opposite_side(opp: f64, adj1: f64, adj2: f64) -> f64 {
    ((opp.cos() + adj1.cos() * adj2.cos()) / (adj1.sin() * adj2.sin())).acosh()
}

impl Triangle {
    /// The triangle with angles `π/p, π/q, π/r` at `A, B, C`.
    pub fn from_denominators(p: u32, q: u32, r: u32) -> Result<Self, HyperbolicError> {
        if p == 0 || q == 0 || r == 0 {
            return Err(HyperbolicError::InvalidAngle(f64::INFINITY));
        }
        triangle_from_angles(PI / p as f64, PI / q as f64, PI / r as f64)
    }

    pub fn vertex(&self, name: &str) -> Result<&HPoint, HyperbolicError> {
        match name {
            "A" => Ok(&self.vertices[A]),
            "B" => Ok(&self.vertices[B]),
            "C" => Ok(&self.vertices[C]),
            _ => Err(HyperbolicError::UnknownVertex(name.to_string())),
        }
    }

    /// Side by endpoint names in either order, e.g. `"BC"` or `"CB"`.
    pub fn edge(&self, name: &str) -> Result<&Geodesic, HyperbolicError> {
        let mut ends: Vec<char> = name.chars().collect();
        ends.sort_unstable();
        match ends[..] {
            ['B', 'C'] => Ok(&self.edges[A]),
            ['A', 'C'] => Ok(&self.edges[B]),
            ['A', 'B'] => Ok(&self.edges[C]),
            _ => Err(HyperbolicError::UnknownEdge(name.to_string())),
        }
    }

    /// Reflection `r_XY` in the side through `X` and `Y`.
    pub fn reflection(&self, name: &str) -> Result<Isometry, HyperbolicError> {
        Ok(reflect(self.edge(name)?))
    }

    /// Length of the side opposite vertex `i`.
    pub fn side_length(&self, i: usize) -> f64 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        self.vertices[j].distance(&self.vertices[k])
    }

    /// Interior angle at vertex `i`, measured from the placed coordinates.
    pub fn measured_angle(&self, i: usize) -> f64 {
        let p = self.vertices[i].vector();
        let tangent = |q: nalgebra::Vector3<f64>| q + minkowski(&q, &p) * p;
        let u = tangent(self.vertices[(i + 1) % 3].vector());
        let v = tangent(self.vertices[(i + 2) % 3].vector());
        let cos = minkowski(&u, &v) / (minkowski(&u, &u) * minkowski(&v, &v)).sqrt();
        cos.clamp(-1.0, 1.0).acos()
    }
}
