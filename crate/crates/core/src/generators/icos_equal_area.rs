//! Equal-area icosahedral nodes: a Caspar-Klug triangular lattice folded
//! onto the icosahedron and carried to the sphere by an azimuthal
//! equal-area map defined piecewise on the six altitude triangles of each
//! face.

use std::collections::HashSet;

use super::polyhedral::{icosahedron_faces, icosahedron_vertices, site_key};
use crate::config::{Configuration, Family};
use crate::error::Error;
use crate::geom::{tangent_towards, UnitPoint};
use crate::Result;

/// Planar icosahedron edge length giving total surface area `4*pi`.
fn edge_length() -> f64 {
    (4.0 * std::f64::consts::PI).sqrt() / 75f64.powf(0.25)
}

/// Equal-area map of a single face, taking exact barycentric numerators
/// `(u, v)` over the lattice denominator `d` and the face's vertex ids.
///
/// The point is located inside one of the six triangles cut out by the
/// face altitudes and parametrized by `h` (altitude-foot distance from
/// the face center) and `w` (distance from the altitude). Radial lines
/// from the face center map to great arcs: the azimuth is chosen so the
/// swept sector area matches (the spherical sector toward the edge arc
/// is a right triangle whose excess has the closed form
/// `2 atan(tan(b/2) tan(u/2))`), and the distance along the arc scales
/// the cap area by the squared radius ratio, which makes the map
/// pointwise area preserving.
fn map_face_point(verts: &[UnitPoint; 12], corners: [usize; 3], u: i64, v: i64, d: i64) -> UnitPoint {
    let bary = [
        (d - u - v) as f64 / d as f64,
        u as f64 / d as f64,
        v as f64 / d as f64,
    ];
    map_face_bary(verts, corners, bary)
}

/// Equal-area image of the face point with barycentric weights
/// `(1 - u - v, u, v)` on face `face` of the reference icosahedron.
pub fn icos_face_point(face: usize, u: f64, v: f64) -> Result<UnitPoint> {
    if face >= 20 {
        return Err(Error::Degenerate(format!("face id {face} out of range")));
    }
    if !(u >= 0.0 && v >= 0.0 && u + v <= 1.0) {
        return Err(Error::Degenerate(format!(
            "({u}, {v}) outside the barycentric face domain"
        )));
    }
    let verts = icosahedron_vertices();
    let corners = icosahedron_faces()[face];
    Ok(map_face_bary(&verts, corners, [1.0 - u - v, u, v]))
}

fn map_face_bary(verts: &[UnitPoint; 12], corners: [usize; 3], bary: [f64; 3]) -> UnitPoint {
    let l = edge_length();
    // Planar face with the same corner order.
    let p2 = [
        (0.0, 0.0),
        (l, 0.0),
        (l / 2.0, l * 3f64.sqrt() / 2.0),
    ];
    let px = bary[0] * p2[0].0 + bary[1] * p2[1].0 + bary[2] * p2[2].0;
    let py = bary[0] * p2[0].1 + bary[1] * p2[1].1 + bary[2] * p2[2].1;
    let ox = (p2[0].0 + p2[1].0 + p2[2].0) / 3.0;
    let oy = (p2[0].1 + p2[1].1 + p2[2].1) / 3.0;

    // Altitude triangle: nearest corner and nearest adjacent corner.
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| bary[b].total_cmp(&bary[a]));
    let (ci, cj) = (order[0], order[1]);

    let mx = (p2[ci].0 + p2[cj].0) / 2.0;
    let my = (p2[ci].1 + p2[cj].1) / 2.0;
    let hlen = ((mx - ox).powi(2) + (my - oy).powi(2)).sqrt();
    let (ehx, ehy) = ((mx - ox) / hlen, (my - oy) / hlen);
    let wlen = ((p2[ci].0 - mx).powi(2) + (p2[ci].1 - my).powi(2)).sqrt();
    let (ewx, ewy) = ((p2[ci].0 - mx) / wlen, (p2[ci].1 - my) / wlen);
    let h = ((px - ox) * ehx + (py - oy) * ehy).max(0.0);
    let w = ((px - ox) * ewx + (py - oy) * ewy).max(0.0);

    // Spherical anchors of the altitude triangle.
    let vi = verts[corners[ci]];
    let vj = verts[corners[cj]];
    let vk = verts[corners[order[2]]];
    let center = UnitPoint::project(vi.x + vj.x + vk.x, vi.y + vj.y + vk.y, vi.z + vj.z + vk.z);
    let r = h.hypot(w);
    if r == 0.0 {
        return center;
    }
    let edge_mid = UnitPoint::project(vi.x + vj.x, vi.y + vj.y, vi.z + vj.z);

    // Azimuth from sector-area matching: the planar sector up to azimuth
    // `az` has area a^2 tan(az) / 2, and the spherical sector toward the
    // edge great circle is a right triangle with legs `bm` (center to
    // edge midpoint) and `u` (along the edge circle) whose excess is
    // 2 atan(tan(bm/2) tan(u/2)).
    let apothem = edge_length() / (2.0 * 3f64.sqrt());
    let az = w.atan2(h);
    let sector = apothem * apothem * az.tan() / 2.0;
    let cos_bm = center.dot(edge_mid).clamp(-1.0, 1.0);
    let bm = cos_bm.acos();
    let u = 2.0 * ((sector / 2.0).tan() / (bm / 2.0).tan()).atan();

    // Exit point of the image ray on the edge great circle.
    let ehat = tangent_towards(edge_mid, vi).expect("edge midpoint and corner distinct");
    let (sin_u, cos_u) = u.sin_cos();
    let exit = [
        edge_mid.x * cos_u + ehat[0] * sin_u,
        edge_mid.y * cos_u + ehat[1] * sin_u,
        edge_mid.z * cos_u + ehat[2] * sin_u,
    ];

    // Distance along the arc: cap area within an infinitesimal wedge
    // grows like sin^2(d/2), matching the planar r^2 growth.
    let cos_dmax = (cos_bm * cos_u).clamp(-1.0, 1.0);
    let sin_dmax = (1.0 - cos_dmax * cos_dmax).sqrt();
    let dmax = cos_dmax.acos();
    let reach = apothem / az.cos();
    let d = 2.0 * ((r / reach) * (dmax / 2.0).sin()).clamp(-1.0, 1.0).asin();
    let that = [
        (exit[0] - cos_dmax * center.x) / sin_dmax,
        (exit[1] - cos_dmax * center.y) / sin_dmax,
        (exit[2] - cos_dmax * center.z) / sin_dmax,
    ];
    let (sin_d, cos_d) = d.sin_cos();
    UnitPoint::project(
        center.x * cos_d + that[0] * sin_d,
        center.y * cos_d + that[1] * sin_d,
        center.z * cos_d + that[2] * sin_d,
    )
}

/// Caspar-Klug equal-area icosahedral nodes for lattice vector `(m, n)`,
/// `N = 10(m^2 + mn + n^2) + 2`.
pub fn icos_equal_area(m: usize, n: usize) -> Result<Configuration> {
    if m == 0 && n == 0 {
        return Err(Error::InvalidCardinality(
            "icos_equal_area requires (m, n) != (0, 0)".to_string(),
        ));
    }
    let (mi, ni) = (m as i64, n as i64);
    let d = mi * mi + mi * ni + ni * ni;
    let verts = icosahedron_vertices();
    let faces = icosahedron_faces();

    // Lattice sites of one face in lattice coordinates (a, b): barycentric
    // numerators over d via exact cross products with the face basis
    // T1 = (m, n), T2 = (-n, m+n).
    let mut sites = Vec::new();
    for a in -ni..=mi {
        for b in 0..=mi + ni {
            let u = a * (mi + ni) + b * ni;
            let v = mi * b - ni * a;
            if u >= 0 && v >= 0 && u + v <= d {
                sites.push((u, v));
            }
        }
    }

    let mut seen = HashSet::new();
    let mut points = Vec::new();
    for (face_id, corners) in faces.iter().enumerate() {
        for &(u, v) in &sites {
            if seen.insert(site_key(face_id, *corners, d as usize, u as usize, v as usize)) {
                points.push(map_face_point(&verts, *corners, u, v, d));
            }
        }
    }

    let total = (10 * d + 2) as usize;
    if points.len() != total {
        return Err(Error::Inconsistency(format!(
            "icos_equal_area produced {} points for (m, n) = ({m}, {n}), expected {total}",
            points.len()
        )));
    }
    Ok(Configuration::new(points, Family::IcosEqualArea)
        .with_param("m", mi)
        .with_param("n", ni)
        .with_param("n_total", total as i64))
}
