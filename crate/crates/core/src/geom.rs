//! Coordinates, projections, distances and spherical areas.
//!
//! Conventions used throughout the crate:
//!
//! * the polar angle `phi` is measured from the north pole `(0,0,1)`,
//!   the azimuth `theta` lies in `[0, 2*pi)` with `theta = 0` at the poles;
//! * all distances are chordal (Euclidean in R^3);
//! * spherical polygon areas use the angle-excess formula and expect
//!   vertices in counterclockwise order viewed from outside the sphere.

use crate::error::Error;
use crate::Result;

/// Unit-norm tolerance enforced by constructors and projections.
pub const UNIT_TOL: f64 = 1e-12;

/// A point on the unit sphere, stored as a Euclidean 3-vector.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct UnitPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Spherical coordinates: polar angle from the north pole and azimuth.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphCoord {
    /// Polar angle in `[0, pi]`.
    pub phi: f64,
    /// Azimuth in `[0, 2*pi)`.
    pub theta: f64,
}

impl UnitPoint {
    /// Builds a unit point, renormalizing input that is within `1e-6` of
    /// the sphere. Exactly zero (or far off-sphere) input is rejected.
    pub fn try_new(x: f64, y: f64, z: f64) -> Result<Self> {
        let r = (x * x + y * y + z * z).sqrt();
        if !(r.is_finite()) || (r - 1.0).abs() > 1e-6 {
            return Err(Error::Degenerate(format!(
                "point ({x}, {y}, {z}) has norm {r}, not on the unit sphere"
            )));
        }
        Ok(Self {
            x: x / r,
            y: y / r,
            z: z / r,
        })
    }

    /// Wraps coordinates already known to be unit-norm.
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Normalizes an arbitrary nonzero vector onto the sphere.
    pub fn project(x: f64, y: f64, z: f64) -> Self {
        let r = (x * x + y * y + z * z).sqrt();
        debug_assert!(r > 0.0);
        Self {
            x: x / r,
            y: y / r,
            z: z / r,
        }
    }

    /// Constructs from spherical coordinates.
    pub fn from_sph(c: SphCoord) -> Self {
        let (sp, cp) = c.phi.sin_cos();
        let (st, ct) = c.theta.sin_cos();
        Self {
            x: sp * ct,
            y: sp * st,
            z: cp,
        }
    }

    /// Converts to spherical coordinates. Poles map to `theta = 0`.
    pub fn to_sph(self) -> SphCoord {
        let phi = self.z.clamp(-1.0, 1.0).acos();
        let theta = if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            normalize_azimuth(self.y.atan2(self.x))
        };
        SphCoord { phi, theta }
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> [f64; 3] {
        [
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        ]
    }

    pub fn norm_err(self) -> f64 {
        ((self.x * self.x + self.y * self.y + self.z * self.z) - 1.0).abs()
    }
}

/// Normalizes an angle into `[0, 2*pi)`.
pub fn normalize_azimuth(theta: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut t = theta % tau;
    if t < 0.0 {
        t += tau;
    }
    // The remainder can land exactly on tau after the correction.
    if t >= tau {
        t -= tau;
    }
    t
}

impl SphCoord {
    pub fn new(phi: f64, theta: f64) -> Self {
        debug_assert!((0.0..=std::f64::consts::PI).contains(&phi));
        Self {
            phi,
            theta: normalize_azimuth(theta),
        }
    }
}

/// Chordal (Euclidean) distance between two points on the sphere.
pub fn chordal_distance(a: UnitPoint, b: UnitPoint) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Lambert cylindrical equal-area projection from `[0,1)^2` to the sphere:
/// `(x, y) -> (sqrt(1-(2y-1)^2) cos 2*pi*x, sqrt(1-(2y-1)^2) sin 2*pi*x, 2y-1)`.
pub fn lambert(x: f64, y: f64) -> UnitPoint {
    let z = 2.0 * y - 1.0;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let (s, c) = (std::f64::consts::TAU * x).sin_cos();
    UnitPoint {
        x: r * c,
        y: r * s,
        z,
    }
}

/// Inverse of [`lambert`]; returns `(x, y)` in `[0,1) x [0,1]`.
pub fn lambert_inv(p: UnitPoint) -> (f64, f64) {
    let s = p.to_sph();
    (s.theta / std::f64::consts::TAU, (p.z + 1.0) / 2.0)
}

/// Area in steradians of a spherical polygon given by `>= 3` vertices in
/// counterclockwise order (viewed from outside), all within an open
/// hemisphere. Uses the angle-excess (Gauss-Bonnet) formula.
pub fn spherical_polygon_area(vertices: &[UnitPoint]) -> Result<f64> {
    let m = vertices.len();
    if m < 3 {
        return Err(Error::Degenerate(format!(
            "spherical polygon needs >= 3 vertices, got {m}"
        )));
    }
    let mut angle_sum = 0.0;
    for i in 0..m {
        let prev = vertices[(i + m - 1) % m];
        let v = vertices[i];
        let next = vertices[(i + 1) % m];
        let tp = tangent_towards(v, prev);
        let tn = tangent_towards(v, next);
        let (Some(tp), Some(tn)) = (tp, tn) else {
            return Err(Error::Degenerate(
                "duplicate adjacent vertices in spherical polygon".into(),
            ));
        };
        // Interior angle: rotation from the outgoing edge to the incoming
        // one, counterclockwise around the outward normal at v.
        let cross = [
            tn[1] * tp[2] - tn[2] * tp[1],
            tn[2] * tp[0] - tn[0] * tp[2],
            tn[0] * tp[1] - tn[1] * tp[0],
        ];
        let sin_a = cross[0] * v.x + cross[1] * v.y + cross[2] * v.z;
        let cos_a = tn[0] * tp[0] + tn[1] * tp[1] + tn[2] * tp[2];
        let mut a = sin_a.atan2(cos_a);
        if a < 0.0 {
            a += std::f64::consts::TAU;
        }
        angle_sum += a;
    }
    Ok(angle_sum - (m as f64 - 2.0) * std::f64::consts::PI)
}

/// Unit tangent vector at `at` pointing along the great circle towards `to`.
/// `None` if the points coincide or are antipodal within roundoff.
pub fn tangent_towards(at: UnitPoint, to: UnitPoint) -> Option<[f64; 3]> {
    let d = at.dot(to);
    let tx = to.x - d * at.x;
    let ty = to.y - d * at.y;
    let tz = to.z - d * at.z;
    let n = (tx * tx + ty * ty + tz * tz).sqrt();
    if n < 1e-300 {
        return None;
    }
    Some([tx / n, ty / n, tz / n])
}

/// Circumcenter direction of the spherical triangle `(a, b, c)`, oriented so
/// it lies on the same side as the triangle's outward normal.
pub fn circumcenter(a: UnitPoint, b: UnitPoint, c: UnitPoint) -> Option<UnitPoint> {
    let ab = [b.x - a.x, b.y - a.y, b.z - a.z];
    let ac = [c.x - a.x, c.y - a.y, c.z - a.z];
    let n = [
        ab[1] * ac[2] - ab[2] * ac[1],
        ab[2] * ac[0] - ab[0] * ac[2],
        ab[0] * ac[1] - ab[1] * ac[0],
    ];
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if len < 1e-300 {
        return None;
    }
    Some(UnitPoint {
        x: n[0] / len,
        y: n[1] / len,
        z: n[2] / len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn up(x: f64, y: f64, z: f64) -> UnitPoint {
        UnitPoint::try_new(x, y, z).unwrap()
    }

    #[test]
    fn convert_north_pole() {
        let s = up(0.0, 0.0, 1.0).to_sph();
        assert_eq!(s.phi, 0.0);
        assert_eq!(s.theta, 0.0);
    }

    #[test]
    fn convert_equator_reference() {
        let s = up(1.0, 0.0, 0.0).to_sph();
        assert!((s.phi - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(s.theta, 0.0);
    }

    #[test]
    fn convert_direct_formula() {
        let p = UnitPoint::from_sph(SphCoord::new(PI / 3.0, PI));
        assert!((p.x - (-(PI / 3.0).sin())).abs() < 1e-15);
        assert!(p.y.abs() < 1e-15);
        assert!((p.z - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lambert_center_and_pole() {
        let p = lambert(0.0, 0.5);
        assert!((p.x - 1.0).abs() < 1e-15 && p.y.abs() < 1e-15 && p.z.abs() < 1e-15);
        let q = lambert(0.25, 1.0);
        assert!((q.z - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lambert_area_preserving_monte_carlo() {
        // sigma(Lambert([0,1/2] x [0,1/2])) = 1/4 within 3 standard errors.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let n = 1_000_000usize;
        let mut hits = 0usize;
        for _ in 0..n {
            // Uniform on the sphere.
            let z: f64 = rng.gen_range(-1.0..1.0);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let p = UnitPoint::from_sph(SphCoord::new(z.acos(), t));
            let (x, y) = lambert_inv(p);
            if x < 0.5 && y < 0.5 {
                hits += 1;
            }
        }
        let frac = hits as f64 / n as f64;
        let se = (0.25f64 * 0.75 / n as f64).sqrt();
        assert!(
            (frac - 0.25).abs() < 3.0 * se,
            "frac {frac} not within 3 SE of 0.25"
        );
    }

    #[test]
    fn chordal_basics() {
        let a = up(0.0, 0.0, 1.0);
        let b = up(0.0, 0.0, -1.0);
        assert_eq!(chordal_distance(a, b), 2.0);
        assert_eq!(chordal_distance(a, a), 0.0);
        let c = UnitPoint::from_sph(SphCoord::new(FRAC_PI_2, 0.0));
        let d = UnitPoint::from_sph(SphCoord::new(FRAC_PI_2, FRAC_PI_2));
        assert!((chordal_distance(c, d) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn octant_triangle_area() {
        let v = [up(1.0, 0.0, 0.0), up(0.0, 1.0, 0.0), up(0.0, 0.0, 1.0)];
        let a = spherical_polygon_area(&v).unwrap();
        assert!((a - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn icosahedron_face_area() {
        // Radially projected icosahedron face covers 4*pi/20.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let a = UnitPoint::project(0.0, 1.0, phi);
        let b = UnitPoint::project(0.0, -1.0, phi);
        let c = UnitPoint::project(phi, 0.0, 1.0);
        let raw = spherical_polygon_area(&[b, a, c]).unwrap();
        // Orientation-independent: a clockwise traversal yields the
        // complementary area.
        let area = raw.min(4.0 * PI - raw);
        assert!(
            (area - 4.0 * PI / 20.0).abs() < 1e-12,
            "got {area}, want {}",
            4.0 * PI / 20.0
        );
    }

    #[test]
    fn polygon_too_few_vertices() {
        assert!(spherical_polygon_area(&[up(1.0, 0.0, 0.0), up(0.0, 1.0, 0.0)]).is_err());
    }

    #[test]
    fn round_trip_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100_000 {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let p = UnitPoint::from_sph(SphCoord::new(z.acos(), t));
            let q = UnitPoint::from_sph(p.to_sph());
            assert!(chordal_distance(p, q) < 1e-12);
            assert!(p.norm_err() < UNIT_TOL);
        }
    }
}
