//! Polyhedral families: lattices on the icosahedron, cube, and octahedron
//! carried to the sphere by radial projection or an equal-area map.
//!
//! Shared lattice sites (polyhedron vertices and edge points) are
//! deduplicated by exact integer keys, never by floating-point matching,
//! with first-wins ordering over (face id, lattice i, lattice j).

use std::collections::HashSet;

use crate::config::{Configuration, Family};
use crate::error::Error;
use crate::geom::UnitPoint;
use crate::Result;

/// The 12 vertices of a regular icosahedron of circumradius 1 with one
/// vertex at the north pole and an adjacent vertex at azimuth 0.
pub(crate) fn icosahedron_vertices() -> [UnitPoint; 12] {
    let mut v = [UnitPoint::new(0.0, 0.0, 1.0); 12];
    let r = 2.0 / 5f64.sqrt();
    let z = 1.0 / 5f64.sqrt();
    for j in 0..5 {
        let az = std::f64::consts::TAU * j as f64 / 5.0;
        v[1 + j] = UnitPoint::new(r * az.cos(), r * az.sin(), z);
        let az = az + std::f64::consts::PI / 5.0;
        v[6 + j] = UnitPoint::new(r * az.cos(), r * az.sin(), -z);
    }
    v[11] = UnitPoint::new(0.0, 0.0, -1.0);
    v
}

/// The 20 faces as vertex-index triples, counterclockwise from outside.
pub(crate) fn icosahedron_faces() -> [[usize; 3]; 20] {
    let v = icosahedron_vertices();
    let mut faces = [[0usize; 3]; 20];
    for j in 0..5 {
        let jn = (j + 1) % 5;
        faces[j] = [0, 1 + j, 1 + jn];
        faces[5 + j] = [1 + j, 6 + j, 1 + jn];
        faces[10 + j] = [6 + j, 6 + jn, 1 + jn];
        faces[15 + j] = [11, 6 + jn, 6 + j];
    }
    // Fix each triple to counterclockwise from outside (positive
    // determinant for an origin-centered polyhedron).
    for f in &mut faces {
        if det3(v[f[0]], v[f[1]], v[f[2]]) < 0.0 {
            f.swap(1, 2);
        }
    }
    faces
}

pub(crate) fn det3(a: UnitPoint, b: UnitPoint, c: UnitPoint) -> f64 {
    let bc = b.cross(c);
    a.x * bc[0] + a.y * bc[1] + a.z * bc[2]
}

/// Exact identity of a lattice site on a triangulated polyhedron face,
/// barycentric (k-i-j, i, j) over the face corners.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub(super) enum SiteKey {
    Vertex(usize),
    /// Edge between global vertices a < b, step t of k measured from a.
    Edge(usize, usize, usize),
    Interior(usize, usize, usize),
}

pub(super) fn site_key(face_id: usize, corners: [usize; 3], k: usize, i: usize, j: usize) -> SiteKey {
    let b0 = k - i - j;
    let edge = |a: usize, b: usize, t: usize| {
        if a < b {
            SiteKey::Edge(a, b, t)
        } else {
            SiteKey::Edge(b, a, k - t)
        }
    };
    match (b0 == 0, i == 0, j == 0) {
        (_, true, true) => SiteKey::Vertex(corners[0]),
        (true, _, true) => SiteKey::Vertex(corners[1]),
        (true, true, _) => SiteKey::Vertex(corners[2]),
        (false, false, true) => edge(corners[0], corners[1], i),
        (false, true, false) => edge(corners[0], corners[2], j),
        (true, false, false) => edge(corners[1], corners[2], j),
        (false, false, false) => SiteKey::Interior(face_id, i, j),
    }
}

/// Walk the triangular lattice of every face in canonical order, handing
/// each first-seen site to `emit` as (face id, i, j).
fn for_each_site(
    faces: &[[usize; 3]],
    k: usize,
    mut emit: impl FnMut(usize, usize, usize),
) {
    let mut seen = HashSet::new();
    for (face_id, corners) in faces.iter().enumerate() {
        for i in 0..=k {
            for j in 0..=k - i {
                if seen.insert(site_key(face_id, *corners, k, i, j)) {
                    emit(face_id, i, j);
                }
            }
        }
    }
}

/// Radial icosahedral nodes: each face of a circumradius-1 icosahedron
/// carries a triangular lattice with k subdivisions per edge, projected
/// radially to the sphere. `N = 10k^2 + 2`.
pub fn radial_icosahedral(k: usize) -> Result<Configuration> {
    if k < 1 {
        return Err(Error::InvalidCardinality(
            "radial_icosahedral requires k >= 1".to_string(),
        ));
    }
    let v = icosahedron_vertices();
    let faces = icosahedron_faces();
    let mut points = Vec::with_capacity(10 * k * k + 2);
    for_each_site(&faces, k, |face_id, i, j| {
        let [a, b, c] = faces[face_id];
        let t = i as f64 / k as f64;
        let u = j as f64 / k as f64;
        points.push(UnitPoint::project(
            v[a].x + t * (v[b].x - v[a].x) + u * (v[c].x - v[a].x),
            v[a].y + t * (v[b].y - v[a].y) + u * (v[c].y - v[a].y),
            v[a].z + t * (v[b].z - v[a].z) + u * (v[c].z - v[a].z),
        ));
    });
    let n = 10 * k * k + 2;
    if points.len() != n {
        return Err(Error::Inconsistency(format!(
            "radial icosahedral produced {} points for k = {k}, expected {n}",
            points.len()
        )));
    }
    Ok(Configuration::new(points, Family::RadialIcosahedral)
        .with_param("k", k as i64)
        .with_param("n", n as i64))
}

/// Cubed sphere nodes: a k x k grid (boundaries included) on each face of
/// the cube, radially projected. `N = 6k^2 - 12k + 8`.
pub fn cubed_sphere(k: usize) -> Result<Configuration> {
    if k < 2 {
        return Err(Error::InvalidCardinality(
            "cubed_sphere requires k >= 2".to_string(),
        ));
    }
    let m = (k - 1) as i64; // grid coordinates run 0..=m per face axis
    // Face order +x, -x, +y, -y, +z, -z; each face maps grid (i, j) to an
    // integer point of the cube [0, m]^3 used as the exact dedup key.
    let face_point = |f: usize, i: i64, j: i64| -> (i64, i64, i64) {
        match f {
            0 => (m, i, j),
            1 => (0, i, j),
            2 => (i, m, j),
            3 => (i, 0, j),
            4 => (i, j, m),
            _ => (i, j, 0),
        }
    };
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    for f in 0..6 {
        for i in 0..=m {
            for j in 0..=m {
                let key = face_point(f, i, j);
                if seen.insert(key) {
                    // Equiangular grid: tangents of equally spaced angles in
                    // [-pi/4, pi/4], so cell footprints stay near-uniform
                    // toward the face edges.
                    let to_unit = |c: i64| {
                        ((2.0 * c as f64 / m as f64 - 1.0) * std::f64::consts::FRAC_PI_4).tan()
                    };
                    points.push(UnitPoint::project(
                        to_unit(key.0),
                        to_unit(key.1),
                        to_unit(key.2),
                    ));
                }
            }
        }
    }
    let n = 6 * k * k - 12 * k + 8;
    if points.len() != n {
        return Err(Error::Inconsistency(format!(
            "cubed sphere produced {} points for k = {k}, expected {n}",
            points.len()
        )));
    }
    Ok(Configuration::new(points, Family::CubedSphere)
        .with_param("k", k as i64)
        .with_param("n", n as i64))
}

fn sgn(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Area-preserving map from the surface of the regular octahedron of edge
/// `L = sqrt(2*pi)/3^(1/4)` (vertices on the coordinate axes at distance
/// `L/sqrt(2)`) to the unit sphere.
fn octahedron_map(x: f64, y: f64, z: f64) -> UnitPoint {
    let l = (2.0 * std::f64::consts::PI).sqrt() / 3f64.powf(0.25);
    let uz = (2.0 * z / (l * l)) * (2f64.sqrt() * l - z.abs());
    if x == 0.0 && y == 0.0 {
        return UnitPoint::new(0.0, 0.0, if z >= 0.0 { 1.0 } else { -1.0 });
    }
    let r = (1.0 - uz * uz).max(0.0).sqrt();
    let ang = std::f64::consts::FRAC_PI_2 * y.abs() / (x.abs() + y.abs());
    UnitPoint {
        x: sgn(x) * r * ang.cos(),
        y: sgn(y) * r * ang.sin(),
        z: uz,
    }
}

/// Equal-area octahedral nodes: vertices of the k-subdivided triangular
/// lattice on each octahedron face, mapped by the area-preserving map.
/// `N = 4k^2 + 2`.
pub fn octahedral(k: usize) -> Result<Configuration> {
    if k < 1 {
        return Err(Error::InvalidCardinality(
            "octahedral requires k >= 1".to_string(),
        ));
    }
    let ki = k as i64;
    // Lattice sites are signed integer triples (a, b, c), |a|+|b|+|c| = k,
    // one octant face per sign pattern; the triple is the exact dedup key.
    let octants: [(i64, i64, i64); 8] = [
        (1, 1, 1),
        (-1, 1, 1),
        (-1, -1, 1),
        (1, -1, 1),
        (1, 1, -1),
        (-1, 1, -1),
        (-1, -1, -1),
        (1, -1, -1),
    ];
    let l = (2.0 * std::f64::consts::PI).sqrt() / 3f64.powf(0.25);
    let step = l / (2f64.sqrt() * k as f64);
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(4 * k * k + 2);
    for (sx, sy, sz) in octants {
        for i in 0..=ki {
            for j in 0..=ki - i {
                let key = (sx * (ki - i - j), sy * i, sz * j);
                if seen.insert(key) {
                    points.push(octahedron_map(
                        key.0 as f64 * step,
                        key.1 as f64 * step,
                        key.2 as f64 * step,
                    ));
                }
            }
        }
    }
    let n = 4 * k * k + 2;
    if points.len() != n {
        return Err(Error::Inconsistency(format!(
            "octahedral produced {} points for k = {k}, expected {n}",
            points.len()
        )));
    }
    Ok(Configuration::new(points, Family::Octahedral)
        .with_param("k", k as i64)
        .with_param("n", n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::chordal_distance;

    fn rotate_z(p: UnitPoint, ang: f64) -> UnitPoint {
        let (s, c) = ang.sin_cos();
        UnitPoint {
            x: c * p.x - s * p.y,
            y: s * p.x + c * p.y,
            z: p.z,
        }
    }

    fn set_invariant_under(points: &[UnitPoint], map: impl Fn(UnitPoint) -> UnitPoint) -> bool {
        points.iter().all(|&p| {
            let q = map(p);
            points.iter().any(|&r| chordal_distance(q, r) < 1e-12)
        })
    }

    #[test]
    fn icosahedron_edge_length() {
        let v = icosahedron_vertices();
        let a = 1.0 / (2.0 * std::f64::consts::PI / 5.0).sin();
        assert!((chordal_distance(v[0], v[1]) - a).abs() < 1e-14);
        assert!((chordal_distance(v[1], v[6]) - a).abs() < 1e-14);
    }

    #[test]
    fn icosahedron_faces_outward() {
        let v = icosahedron_vertices();
        for f in icosahedron_faces() {
            assert!(det3(v[f[0]], v[f[1]], v[f[2]]) > 0.0);
        }
    }

    #[test]
    fn radial_icosahedral_counts() {
        for k in 1..=6 {
            assert_eq!(radial_icosahedral(k).unwrap().len(), 10 * k * k + 2);
        }
    }

    #[test]
    fn radial_icosahedral_k1_is_vertices() {
        let c = radial_icosahedral(1).unwrap();
        let v = icosahedron_vertices();
        assert_eq!(c.len(), 12);
        for p in &c.points {
            assert!(v.iter().any(|&q| chordal_distance(*p, q) < 1e-14));
        }
    }

    #[test]
    fn radial_icosahedral_five_fold_symmetry() {
        let c = radial_icosahedral(4).unwrap();
        let fifth = std::f64::consts::TAU / 5.0;
        assert!(set_invariant_under(&c.points, |p| rotate_z(p, fifth)));
    }

    #[test]
    fn cubed_sphere_counts_and_vertices() {
        for k in 2..=8 {
            assert_eq!(cubed_sphere(k).unwrap().len(), 6 * k * k - 12 * k + 8);
        }
        let c = cubed_sphere(2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        for p in &c.points {
            assert!((p.x.abs() - r).abs() < 1e-15);
            assert!((p.y.abs() - r).abs() < 1e-15);
            assert!((p.z.abs() - r).abs() < 1e-15);
        }
    }

    #[test]
    fn cubed_sphere_rotation_group() {
        let c = cubed_sphere(5).unwrap();
        let quarter = std::f64::consts::FRAC_PI_2;
        assert!(set_invariant_under(&c.points, |p| rotate_z(p, quarter)));
        // Quarter turn about x.
        assert!(set_invariant_under(&c.points, |p| UnitPoint {
            x: p.x,
            y: -p.z,
            z: p.y,
        }));
    }

    #[test]
    fn octahedral_k1_is_axis_vertices() {
        let c = octahedral(1).unwrap();
        assert_eq!(c.len(), 6);
        for p in &c.points {
            let m = [p.x.abs(), p.y.abs(), p.z.abs()];
            let mx = m.iter().cloned().fold(0.0, f64::max);
            assert!((mx - 1.0).abs() < 1e-14);
            assert!(m.iter().filter(|&&v| v > 1e-14).count() == 1);
        }
    }

    #[test]
    fn octahedral_counts_and_unit_norm() {
        for k in 1..=8 {
            let c = octahedral(k).unwrap();
            assert_eq!(c.len(), 4 * k * k + 2);
            for p in &c.points {
                assert!(p.norm_err() < 1e-12);
            }
        }
    }

    #[test]
    fn octahedral_edge_midpoint_on_equator() {
        // Face edge midpoints with Z = 0 map to the equator, azimuth
        // split evenly between the octant's bounding meridians.
        let c = octahedral(2).unwrap();
        let on_equator: Vec<_> = c.points.iter().filter(|p| p.z.abs() < 1e-14).collect();
        assert_eq!(on_equator.len(), 8);
        let pi4 = std::f64::consts::FRAC_PI_4;
        let mut count_diag = 0;
        for p in on_equator {
            let az = p.to_sph().theta;
            if ((az / pi4).round() - az / pi4).abs() < 1e-12 && (az / pi4).round() as i64 % 2 == 1 {
                count_diag += 1;
            }
        }
        assert_eq!(count_diag, 4);
    }

    #[test]
    fn octahedral_separation_lower_bound() {
        for k in [1usize, 2, 3, 5, 8, 13] {
            let c = octahedral(k).unwrap();
            let mut min2 = f64::INFINITY;
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    let d = chordal_distance(c.points[i], c.points[j]);
                    min2 = min2.min(d * d);
                }
            }
            let kf = k as f64;
            let bound = (2.0 / (kf * kf)) * (2.0 - ((kf + 1.0) * (kf + 1.0)) / (kf * kf));
            assert!(min2 >= bound, "k = {k}: {min2} < {bound}");
        }
    }
}
