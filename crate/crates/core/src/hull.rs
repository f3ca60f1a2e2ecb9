//! Incremental 3-D convex hull with deterministic handling of coplanar
//! faces.
//!
//! The hull drives the spherical Delaunay triangulation, so the output is
//! canonicalized: groups of mutually coplanar faces (cocircular point
//! quadruples and larger fans occur for the symmetric families) are merged
//! and re-fan-triangulated from their lowest vertex index, and the face
//! list is sorted. The coplanarity tolerance on the signed-volume
//! predicate is `1e-12`.

use std::collections::HashMap;

use crate::error::Error;
use crate::geom::UnitPoint;
use crate::Result;

/// Signed-volume coplanarity tolerance for all visibility tests.
const PLANE_TOL: f64 = 1e-12;

/// Six times the signed volume of the tetrahedron (a, b, c, p); positive
/// when p is on the outward side of the counterclockwise face (a, b, c).
fn orient(a: UnitPoint, b: UnitPoint, c: UnitPoint, p: UnitPoint) -> f64 {
    let ab = [b.x - a.x, b.y - a.y, b.z - a.z];
    let ac = [c.x - a.x, c.y - a.y, c.z - a.z];
    let ap = [p.x - a.x, p.y - a.y, p.z - a.z];
    ap[0] * (ab[1] * ac[2] - ab[2] * ac[1])
        + ap[1] * (ab[2] * ac[0] - ab[0] * ac[2])
        + ap[2] * (ab[0] * ac[1] - ab[1] * ac[0])
}

struct Face {
    v: [usize; 3],
    outside: Vec<usize>,
    alive: bool,
}

impl Face {
    fn sees(&self, pts: &[UnitPoint], p: usize) -> f64 {
        orient(pts[self.v[0]], pts[self.v[1]], pts[self.v[2]], pts[p])
    }
}

/// Computes the convex hull of the points and returns its faces as
/// counterclockwise (outward) vertex triples in canonical order.
pub fn convex_hull(pts: &[UnitPoint]) -> Result<Vec<[usize; 3]>> {
    if pts.len() < 4 {
        return Err(Error::Degenerate(format!(
            "convex hull needs >= 4 points, got {}",
            pts.len()
        )));
    }
    let (mut faces, seed) = initial_tetrahedron(pts)?;
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for e in face_edges(f.v) {
            edge_owner.insert(e, fi);
        }
    }

    // Conflict lists: every point goes to the first face that sees it.
    for p in 0..pts.len() {
        if seed.contains(&p) {
            continue;
        }
        for f in faces.iter_mut() {
            if f.sees(pts, p) > PLANE_TOL {
                f.outside.push(p);
                break;
            }
        }
    }

    let mut queue: Vec<usize> = (0..faces.len()).collect();
    while let Some(fi) = queue.pop() {
        if !faces[fi].alive || faces[fi].outside.is_empty() {
            continue;
        }
        // Farthest conflict point of this face.
        let &p = faces[fi]
            .outside
            .iter()
            .max_by(|&&a, &&b| faces[fi].sees(pts, a).total_cmp(&faces[fi].sees(pts, b)))
            .expect("non-empty outside set");

        // Flood the visible region from fi across shared edges.
        let mut visible = vec![fi];
        let mut mark: HashMap<usize, ()> = HashMap::new();
        mark.insert(fi, ());
        let mut stack = vec![fi];
        while let Some(g) = stack.pop() {
            for (a, b) in face_edges(faces[g].v) {
                let Some(&h) = edge_owner.get(&(b, a)) else {
                    continue;
                };
                if faces[h].alive && !mark.contains_key(&h) && faces[h].sees(pts, p) > PLANE_TOL {
                    mark.insert(h, ());
                    visible.push(h);
                    stack.push(h);
                }
            }
        }

        // Horizon: directed edges of visible faces whose twin is hidden.
        let mut horizon = Vec::new();
        for &g in &visible {
            for (a, b) in face_edges(faces[g].v) {
                let twin = edge_owner.get(&(b, a)).copied();
                if twin.is_none_or(|h| !mark.contains_key(&h)) {
                    horizon.push((a, b));
                }
            }
        }

        // Retire the visible region, pool its conflicts.
        let mut orphans = Vec::new();
        for &g in &visible {
            faces[g].alive = false;
            orphans.append(&mut faces[g].outside);
            for e in face_edges(faces[g].v) {
                edge_owner.remove(&e);
            }
        }

        // New cone of faces from p over the horizon.
        let first_new = faces.len();
        for (a, b) in horizon {
            let fi = faces.len();
            faces.push(Face {
                v: [a, b, p],
                outside: Vec::new(),
                alive: true,
            });
            for e in face_edges([a, b, p]) {
                edge_owner.insert(e, fi);
            }
            queue.push(fi);
        }
        for q in orphans {
            if q == p {
                continue;
            }
            for fi in first_new..faces.len() {
                if faces[fi].sees(pts, q) > PLANE_TOL {
                    faces[fi].outside.push(q);
                    break;
                }
            }
        }
    }

    let final_faces: Vec<[usize; 3]> = faces.iter().filter(|f| f.alive).map(|f| f.v).collect();
    canonicalize(pts, final_faces)
}

fn face_edges(v: [usize; 3]) -> [(usize, usize); 3] {
    [(v[0], v[1]), (v[1], v[2]), (v[2], v[0])]
}

/// Picks four affinely independent points and builds the starting
/// tetrahedron, erroring on rank-deficient input.
fn initial_tetrahedron(pts: &[UnitPoint]) -> Result<(Vec<Face>, [usize; 4])> {
    let i0 = 0usize;
    let mut i1 = 0;
    let mut best = 0.0;
    for (i, p) in pts.iter().enumerate() {
        let d = crate::geom::chordal_distance(pts[i0], *p);
        if d > best {
            best = d;
            i1 = i;
        }
    }
    if best <= PLANE_TOL {
        return Err(Error::Degenerate("all points coincide".to_string()));
    }
    let mut i2 = 0;
    best = 0.0;
    let e = [
        pts[i1].x - pts[i0].x,
        pts[i1].y - pts[i0].y,
        pts[i1].z - pts[i0].z,
    ];
    for (i, p) in pts.iter().enumerate() {
        let w = [p.x - pts[i0].x, p.y - pts[i0].y, p.z - pts[i0].z];
        let cx = e[1] * w[2] - e[2] * w[1];
        let cy = e[2] * w[0] - e[0] * w[2];
        let cz = e[0] * w[1] - e[1] * w[0];
        let d = cx * cx + cy * cy + cz * cz;
        if d > best {
            best = d;
            i2 = i;
        }
    }
    if best <= PLANE_TOL * PLANE_TOL {
        return Err(Error::Degenerate("all points collinear".to_string()));
    }
    let mut i3 = 0;
    best = 0.0;
    for i in 0..pts.len() {
        let d = orient(pts[i0], pts[i1], pts[i2], pts[i]).abs();
        if d > best {
            best = d;
            i3 = i;
        }
    }
    if best <= PLANE_TOL {
        return Err(Error::Degenerate("all points coplanar".to_string()));
    }
    let (a, b, c, d) = if orient(pts[i0], pts[i1], pts[i2], pts[i3]) < 0.0 {
        (i0, i1, i2, i3)
    } else {
        (i0, i2, i1, i3)
    };
    // With d below the (a, b, c) plane, these four faces are outward CCW.
    let faces = [[a, b, c], [a, d, b], [b, d, c], [a, c, d]]
        .into_iter()
        .map(|v| Face {
            v,
            outside: Vec::new(),
            alive: true,
        })
        .collect();
    Ok((faces, [a, b, c, d]))
}

/// Merges runs of mutually coplanar faces, reinstates points that the
/// strict predicate dropped onto face interiors (cocircular fans), and
/// re-fan-triangulates every merged polygon from its lowest vertex index.
fn canonicalize(pts: &[UnitPoint], faces: Vec<[usize; 3]>) -> Result<Vec<[usize; 3]>> {
    let nf = faces.len();
    // Union-find over flat dihedral angles.
    let mut parent: Vec<usize> = (0..nf).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for e in face_edges(*f) {
            edge_owner.insert(e, fi);
        }
    }
    for (fi, f) in faces.iter().enumerate() {
        for (a, b) in face_edges(*f) {
            let Some(&g) = edge_owner.get(&(b, a)) else {
                return Err(Error::Inconsistency("open hull edge".to_string()));
            };
            if g <= fi {
                continue;
            }
            let apex = faces[g]
                .into_iter()
                .find(|&v| v != a && v != b)
                .expect("neighbor face has an apex");
            if orient(pts[f[0]], pts[f[1]], pts[f[2]], pts[apex]).abs() <= PLANE_TOL {
                let (ra, rb) = (find(&mut parent, fi), find(&mut parent, g));
                parent[ra] = rb;
            }
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for fi in 0..nf {
        let r = find(&mut parent, fi);
        groups.entry(r).or_default().push(fi);
    }

    // Points used by the hull; everything else was dropped as coplanar
    // and must be re-attached to the group whose plane contains it.
    let mut used = vec![false; pts.len()];
    for f in &faces {
        for &v in f {
            used[v] = true;
        }
    }
    let mut extra: HashMap<usize, Vec<usize>> = HashMap::new();
    for p in 0..pts.len() {
        if used[p] {
            continue;
        }
        // The containing face is the one whose support plane the point
        // lies on; all other planes see it strictly below.
        let mut host = None;
        let mut best = f64::NEG_INFINITY;
        for (fi, f) in faces.iter().enumerate() {
            let o = orient(pts[f[0]], pts[f[1]], pts[f[2]], pts[p]);
            if o > best {
                best = o;
                host = Some(fi);
            }
        }
        let host = host.expect("hull has faces");
        if best.abs() > PLANE_TOL {
            return Err(Error::Degenerate(format!(
                "point {p} is strictly inside the hull"
            )));
        }
        let r = find(&mut parent, host);
        extra.entry(r).or_default().push(p);
    }

    let mut out = Vec::with_capacity(nf);
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();
    for r in roots {
        let members = &groups[&r];
        let additions = extra.get(&r).map(Vec::as_slice).unwrap_or(&[]);
        if members.len() == 1 && additions.is_empty() {
            out.push(faces[members[0]]);
            continue;
        }
        // Collect the polygon's vertices (cocircular, hence in convex
        // position on the group plane).
        let mut vs: Vec<usize> = members
            .iter()
            .flat_map(|&fi| faces[fi].into_iter())
            .chain(additions.iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();

        // Angular order around the outward group normal.
        let f0 = faces[members[0]];
        let normal = crate::geom::circumcenter(pts[f0[0]], pts[f0[1]], pts[f0[2]])
            .ok_or_else(|| Error::Degenerate("zero-area hull face".to_string()))?;
        let centroid = {
            let mut c = [0.0; 3];
            for &v in &vs {
                c[0] += pts[v].x;
                c[1] += pts[v].y;
                c[2] += pts[v].z;
            }
            let k = vs.len() as f64;
            [c[0] / k, c[1] / k, c[2] / k]
        };
        let e1 = crate::geom::tangent_towards(normal, pts[vs[0]])
            .ok_or_else(|| Error::Degenerate("degenerate coplanar group".to_string()))?;
        let e2 = [
            normal.y * e1[2] - normal.z * e1[1],
            normal.z * e1[0] - normal.x * e1[2],
            normal.x * e1[1] - normal.y * e1[0],
        ];
        let mut ordered: Vec<(f64, usize)> = vs
            .iter()
            .map(|&v| {
                let w = [
                    pts[v].x - centroid[0],
                    pts[v].y - centroid[1],
                    pts[v].z - centroid[2],
                ];
                let x = w[0] * e1[0] + w[1] * e1[1] + w[2] * e1[2];
                let y = w[0] * e2[0] + w[1] * e2[1] + w[2] * e2[2];
                (y.atan2(x), v)
            })
            .collect();
        ordered.sort_by(|a, b| a.0.total_cmp(&b.0));
        let ring: Vec<usize> = ordered.into_iter().map(|(_, v)| v).collect();

        // Fan from the lowest index, preserving the cyclic order.
        let anchor = ring
            .iter()
            .position(|&v| v == *vs.first().expect("non-empty group"))
            .expect("anchor in ring");
        let m = ring.len();
        for t in 1..m - 1 {
            out.push([
                ring[anchor],
                ring[(anchor + t) % m],
                ring[(anchor + t + 1) % m],
            ]);
        }
    }

    // Canonical order: rotate triples to start at their lowest index,
    // then sort the face list.
    for f in &mut out {
        let lo = (0..3).min_by_key(|&i| f[i]).expect("triple");
        f.rotate_left(lo);
    }
    out.sort_unstable();
    Ok(out)
}
