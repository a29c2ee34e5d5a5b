use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use super::HyperbolicError;
use crate::presentations::GroupElement;

/// The Lorentz form diag(1, 1, -1).
pub fn lorentz() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
}

/// `⟨u, v⟩ = u₁v₁ + u₂v₂ − u₃v₃`.
pub fn minkowski(u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
    u.x * v.x + u.y * v.y - u.z * v.z
}

const POINT_TOL: f64 = 1e-12;
/// Bound on [`lorentz_defect`] accepted by [`Isometry::new`].
pub const LORENTZ_TOL: f64 = 1e-9;

/// A point of the upper sheet `x² + y² − t² = −1`, `t > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HPoint {
    coords: [f64; 3],
}

impl HPoint {
    pub fn new(x: f64, y: f64, t: f64) -> Result<Self, HyperbolicError> {
        let v = Vector3::new(x, y, t);
        let norm = minkowski(&v, &v);
        if !(t > 0.0) || (norm + 1.0).abs() > POINT_TOL * norm.abs().max(1.0) {
            return Err(HyperbolicError::InvalidPoint { x, y, t });
        }
        Ok(HPoint { coords: [x, y, t] })
    }

    pub fn origin() -> Self {
        HPoint { coords: [0.0, 0.0, 1.0] }
    }

    /// The point at distance `r` from the origin in direction `theta`.
    pub fn from_polar(r: f64, theta: f64) -> Self {
        HPoint { coords: [r.sinh() * theta.cos(), r.sinh() * theta.sin(), r.cosh()] }
    }

    /// Rescales a timelike vector onto the upper sheet.
    pub fn from_timelike(v: Vector3<f64>) -> Result<Self, HyperbolicError> {
        let q = minkowski(&v, &v);
        if !(q < 0.0) {
            return Err(HyperbolicError::InvalidPoint { x: v.x, y: v.y, t: v.z });
        }
        let s = (-q).sqrt() * v.z.signum();
        HPoint::new(v.x / s, v.y / s, v.z / s)
    }

    pub fn vector(&self) -> Vector3<f64> {
        Vector3::from(self.coords)
    }

    pub fn coords(&self) -> [f64; 3] {
        self.coords
    }

    pub fn distance(&self, other: &HPoint) -> f64 {
        (-minkowski(&self.vector(), &other.vector())).max(1.0).acosh()
    }

    /// Lorentz boost taking the origin to `self`.
    pub fn boost(&self) -> Matrix3<f64> {
        let [x, y, t] = self.coords;
        let k = 1.0 / (1.0 + t);
        Matrix3::new(
            1.0 + k * x * x, k * x * y, x,
            k * x * y, 1.0 + k * y * y, y,
            x, y, t,
        )
    }
}

/// A geodesic, given by a spacelike unit normal `n` (`⟨n, n⟩ = 1`); its
/// points are the `p` with `⟨n, p⟩ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Geodesic {
    normal: [f64; 3],
}

impl Geodesic {
    pub fn new(x: f64, y: f64, t: f64) -> Result<Self, HyperbolicError> {
        let v = Vector3::new(x, y, t);
        if (minkowski(&v, &v) - 1.0).abs() > POINT_TOL * v.norm_squared().max(1.0) {
            return Err(HyperbolicError::NotSpacelike { x, y, t });
        }
        Ok(Geodesic { normal: [x, y, t] })
    }

    /// Normalizes any spacelike vector.
    pub fn from_normal(v: Vector3<f64>) -> Result<Self, HyperbolicError> {
        let q = minkowski(&v, &v);
        if !(q > 0.0) {
            return Err(HyperbolicError::NotSpacelike { x: v.x, y: v.y, t: v.z });
        }
        let v = v / q.sqrt();
        Geodesic::new(v.x, v.y, v.z)
    }

    /// The geodesic through two distinct points.
    pub fn through(p: &HPoint, q: &HPoint) -> Result<Self, HyperbolicError> {
        Geodesic::from_normal(lorentz() * p.vector().cross(&q.vector()))
    }

    pub fn normal(&self) -> Vector3<f64> {
        Vector3::from(self.normal)
    }

    pub fn contains(&self, p: &HPoint, tol: f64) -> bool {
        minkowski(&self.normal(), &p.vector()).abs() < tol
    }
}

/// Orientation-preserving or -reversing isometry of H², as a matrix `M`
/// with `MᵀJM = J` acting on column vectors.
///
/// Products are carried in double-double precision: `low` holds the rounding
/// error of `matrix`, so long words that cancel in the group (entries first
/// growing, then shrinking) lose accuracy relative to the largest partial
/// product only at the 1e−32 level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    matrix: Matrix3<f64>,
    low: Matrix3<f64>,
    orientation: i8,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Low part putting `m` on the Lorentz group to double-double accuracy:
/// with `D = mᵀJm − J` (computed without cancellation), `m(I − ½JD)`
/// preserves the form to second order in `D`.
fn lorentz_low(m: &Matrix3<f64>) -> Matrix3<f64> {
    let sign = [1.0, 1.0, -1.0];
    let mut d = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let (mut s, mut e) = (if i == j { -sign[i] } else { 0.0 }, 0.0);
            for k in 0..3 {
                let (p, pe) = two_prod(m[(k, i)] * sign[k], m[(k, j)]);
                let (t, te) = two_sum(s, p);
                s = t;
                e += pe + te;
            }
            d[(i, j)] = s + e;
        }
    }
    -0.5 * m * lorentz() * d
}

/// `(a + a_lo)(b + b_lo)`, dropping `a_lo b_lo`.
fn dd_mul(a: &Matrix3<f64>, a_lo: &Matrix3<f64>, b: &Matrix3<f64>, b_lo: &Matrix3<f64>) -> (Matrix3<f64>, Matrix3<f64>) {
    let mut hi = Matrix3::zeros();
    let mut lo = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let (mut s, mut e) = (0.0, 0.0);
            for k in 0..3 {
                let (p, pe) = two_prod(a[(i, k)], b[(k, j)]);
                let (t, te) = two_sum(s, p);
                s = t;
                e += pe + te + a[(i, k)] * b_lo[(k, j)] + a_lo[(i, k)] * b[(k, j)];
            }
            let (h, l) = two_sum(s, e);
            hi[(i, j)] = h;
            lo[(i, j)] = l;
        }
    }
    (hi, lo)
}

/// Scale-free Lorentz defect `max|MᵀJM − J| / max(1, max|M|)²`. Entries of
/// long products grow exponentially, so an absolute bound is meaningless.
pub fn lorentz_defect(m: &Matrix3<f64>) -> f64 {
    let j = lorentz();
    let scale = m.amax().max(1.0);
    (m.transpose() * j * m - j).amax() / (scale * scale)
}

impl Isometry {
    pub fn new(matrix: Matrix3<f64>) -> Result<Self, HyperbolicError> {
        let defect = lorentz_defect(&matrix);
        if !(defect <= LORENTZ_TOL) {
            return Err(HyperbolicError::NotLorentz { defect });
        }
        if !(matrix[(2, 2)] > 0.0) {
            return Err(HyperbolicError::SwapsSheets);
        }
        Ok(Isometry::from_matrix_unchecked(matrix))
    }

    pub(crate) fn from_matrix_unchecked(matrix: Matrix3<f64>) -> Self {
        let orientation = if matrix.determinant() < 0.0 { -1 } else { 1 };
        Isometry { low: lorentz_low(&matrix), matrix, orientation }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        let v = self.matrix * p.vector();
        HPoint { coords: [v.x, v.y, v.z] }
    }

    pub fn lorentz_defect(&self) -> f64 {
        lorentz_defect(&self.matrix)
    }

    /// Max-norm distance from the identity matrix.
    pub fn distance_from_identity(&self) -> f64 {
        ((self.matrix - Matrix3::identity()) + self.low).amax()
    }

    pub fn pow(&self, k: i64) -> Isometry {
        let base = if k < 0 { GroupElement::inverse(self) } else { *self };
        (0..k.unsigned_abs()).fold(Isometry::identity(), |acc, _| acc.compose(&base))
    }
}

impl GroupElement for Isometry {
    fn identity() -> Self {
        Isometry { matrix: Matrix3::identity(), low: Matrix3::zeros(), orientation: 1 }
    }

    fn compose(&self, rhs: &Self) -> Self {
        let (matrix, low) = dd_mul(&self.matrix, &self.low, &rhs.matrix, &rhs.low);
        Isometry { matrix, low, orientation: self.orientation * rhs.orientation }
    }

    /// `J Mᵀ J`, exact for Lorentz matrices.
    fn inverse(&self) -> Self {
        let j = lorentz();
        Isometry {
            matrix: j * self.matrix.transpose() * j,
            low: j * self.low.transpose() * j,
            orientation: self.orientation,
        }
    }

    fn distance_from_identity(&self) -> f64 {
        Isometry::distance_from_identity(self)
    }
}

/// Reflection `I − 2 n nᵀJ / ⟨n, n⟩` in a geodesic.
pub fn reflect(g: &Geodesic) -> Isometry {
    let n = g.normal();
    let m = Matrix3::identity() - 2.0 * n * (lorentz() * n).transpose() / minkowski(&n, &n);
    Isometry { low: lorentz_low(&m), matrix: m, orientation: -1 }
}

/// Counterclockwise rotation by `angle` about `p`, seen from above the sheet.
pub fn rotation(p: &HPoint, angle: f64) -> Isometry {
    let (s, c) = angle.sin_cos();
    let r = Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0);
    let t = p.boost();
    let j = lorentz();
    let t_inv = j * t.transpose() * j;
    let m = t * r * t_inv;
    Isometry { low: lorentz_low(&m), matrix: m, orientation: 1 }
}

pub fn is_identity(m: &Isometry, tol: f64) -> bool {
    m.distance_from_identity() < tol
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Result of [`classify`]. `value` is the signed rotation angle in
/// `(−π, π]` for elliptic elements, the translation length for hyperbolic
/// ones, and 0 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub kind: IsometryKind,
    pub value: f64,
    pub trace: f64,
    pub center: Option<HPoint>,
}

const CLASSIFY_TOL: f64 = 1e-9;

pub fn classify(m: &Isometry) -> Result<Classification, HyperbolicError> {
    if m.orientation() < 0 {
        return Err(HyperbolicError::OrientationReversing);
    }
    let trace = m.trace();
    let scale = m.matrix().amax().max(1.0);
    if m.distance_from_identity() < CLASSIFY_TOL * scale {
        return Ok(Classification { kind: IsometryKind::Identity, value: 0.0, trace, center: None });
    }
    if (trace - 3.0).abs() <= CLASSIFY_TOL * scale {
        return Ok(Classification { kind: IsometryKind::Parabolic, value: 0.0, trace, center: None });
    }
    if trace > 3.0 {
        let length = ((trace - 1.0) / 2.0).acosh();
        return Ok(Classification { kind: IsometryKind::Hyperbolic, value: length, trace, center: None });
    }
    let center = fixed_point(m)?;
    let t = center.boost();
    let j = lorentz();
    let local = j * t.transpose() * j * m.matrix() * t;
    let angle = local[(1, 0)].atan2(local[(0, 0)]);
    Ok(Classification { kind: IsometryKind::Elliptic, value: angle, trace, center: Some(center) })
}

/// The fixed point of an elliptic isometry: the timelike null vector of `M − I`.
fn fixed_point(m: &Isometry) -> Result<HPoint, HyperbolicError> {
    let svd = (m.matrix() - Matrix3::identity()).svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("three singular values");
    let v = v_t.row(k).transpose();
    HPoint::from_timelike(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p() -> HPoint {
        HPoint::from_polar(0.7, 1.1)
    }

    #[test]
    fn point_validation() {
        assert!(HPoint::new(0.0, 0.0, 1.0).is_ok());
        assert!(HPoint::new(0.0, 0.0, -1.0).is_err());
        assert!(HPoint::new(1.0, 0.0, 1.0).is_err());
        assert!(Geodesic::new(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn reflection_is_an_involution_fixing_its_geodesic() {
        let q = HPoint::from_polar(1.3, -2.0);
        let g = Geodesic::through(&p(), &q).unwrap();
        let r = reflect(&g);
        assert_eq!(r.orientation(), -1);
        assert!(is_identity(&r.compose(&r), 1e-10));
        for s in [p(), q] {
            let image = r.apply(&s);
            assert!((image.vector() - s.vector()).amax() < 1e-10);
        }
    }

    #[test]
    fn rotation_basics() {
        assert!(is_identity(&rotation(&p(), 0.0), 1e-12));
        let r = rotation(&p(), 0.4);
        assert!((r.trace() - (1.0 + 2.0 * 0.4f64.cos())).abs() < 1e-12);
        assert!((r.apply(&p()).vector() - p().vector()).amax() < 1e-12);
        let sum = rotation(&p(), 0.4).compose(&rotation(&p(), 1.9));
        assert!((sum.matrix() - rotation(&p(), 2.3).matrix()).amax() < 1e-9);
        assert!(is_identity(&rotation(&p(), 2.0 * PI / 5.0).pow(5), 1e-9));
    }

    #[test]
    fn classify_recovers_signed_angle_and_center() {
        for angle in [-2.5, -0.3, 0.8, 3.0] {
            let c = classify(&rotation(&p(), angle)).unwrap();
            assert_eq!(c.kind, IsometryKind::Elliptic);
            assert!((c.value - angle).abs() < 1e-9, "{angle} -> {}", c.value);
            assert!((c.center.unwrap().vector() - p().vector()).amax() < 1e-9);
        }
        assert_eq!(classify(&Isometry::identity()).unwrap().kind, IsometryKind::Identity);
    }

    #[test]
    fn classify_translations_and_reflections() {
        let a = rotation(&HPoint::from_polar(1.0, 0.0), PI);
        let b = rotation(&HPoint::origin(), PI);
        // Product of two half-turns translates by twice their distance.
        let c = classify(&a.compose(&b)).unwrap();
        assert_eq!(c.kind, IsometryKind::Hyperbolic);
        assert!((c.value - 2.0).abs() < 1e-9);
        let g = Geodesic::from_normal(Vector3::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(classify(&reflect(&g)), Err(HyperbolicError::OrientationReversing));
    }

    #[test]
    fn inverse_is_exact_for_lorentz_matrices() {
        let m = rotation(&p(), 0.9).compose(&rotation(&HPoint::from_polar(2.0, 0.3), -1.4));
        assert!(is_identity(&m.compose(&GroupElement::inverse(&m)), 1e-9));
        assert!(Isometry::new(*m.matrix()).is_ok());
        assert!(Isometry::new(Matrix3::identity() * 2.0).is_err());
    }
}
