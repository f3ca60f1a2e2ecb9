//! Spherical Delaunay triangulation and Voronoi diagram built from the
//! 3-D convex hull of a configuration.

use std::collections::HashMap;

use crate::config::Configuration;
use crate::error::Error;
use crate::geom::{circumcenter, spherical_polygon_area, tangent_towards, UnitPoint};
use crate::hull::convex_hull;
use crate::parallel;
use crate::Result;

/// Delaunay triangulation of a spherical point set.
pub struct TriMesh {
    /// Vertex-index triples, counterclockwise from outside.
    pub triangles: Vec<[usize; 3]>,
    /// For each triangle, the neighbor across each edge `(v[i], v[i+1])`.
    pub adjacency: Vec<[usize; 3]>,
    /// Sphere-projected circumcenter of each triangle (outward face
    /// normal direction).
    pub circumcenters: Vec<UnitPoint>,
    /// Chordal circumradius of each triangle.
    pub circumradii: Vec<f64>,
}

/// Voronoi diagram dual to a [`TriMesh`].
pub struct VoronoiDiagram {
    /// Per-site cell boundary, counterclockwise around the site, with
    /// duplicate circumcenters (cocircular fans) merged.
    pub cells: Vec<Vec<UnitPoint>>,
    /// Per-cell area in steradians.
    pub areas: Vec<f64>,
    /// Per-cell edge count.
    pub degrees: Vec<usize>,
}

/// Aggregate Voronoi cell statistics.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CellStats {
    /// `N * max cell area / (4*pi)` normalizer-free: `N * max area`.
    pub max_area_scaled: f64,
    pub min_area_scaled: f64,
    /// Histogram of cell degrees, keyed by degree.
    pub degree_histogram: Vec<(usize, usize)>,
    pub pentagons: usize,
    pub hexagons: usize,
    pub heptagons: usize,
}

/// Builds the Delaunay triangulation: the convex hull faces of the
/// (spherical) point set, with circumcenters taken as outward face
/// normals so degenerate slivers inherit the hull plane's normal.
pub fn delaunay(config: &Configuration) -> Result<TriMesh> {
    let pts = &config.points;
    if pts.len() < 4 {
        return Err(Error::Degenerate(format!(
            "triangulation needs >= 4 points, got {}",
            pts.len()
        )));
    }
    let triangles = convex_hull(pts)?;
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (ti, t) in triangles.iter().enumerate() {
        for i in 0..3 {
            edge_owner.insert((t[i], t[(i + 1) % 3]), ti);
        }
    }
    let mut adjacency = vec![[usize::MAX; 3]; triangles.len()];
    for (ti, t) in triangles.iter().enumerate() {
        for i in 0..3 {
            let twin = (t[(i + 1) % 3], t[i]);
            adjacency[ti][i] = *edge_owner
                .get(&twin)
                .ok_or_else(|| Error::Inconsistency("unpaired Delaunay edge".to_string()))?;
        }
    }
    let centers = parallel::map_indexed(triangles.len(), |ti| {
        let [a, b, c] = triangles[ti];
        circumcenter(pts[a], pts[b], pts[c]).map(|cc| {
            let r = (0..3)
                .map(|i| crate::geom::chordal_distance(cc, pts[triangles[ti][i]]))
                .fold(0.0f64, f64::max);
            (cc, r)
        })
    });
    let mut circumcenters = Vec::with_capacity(triangles.len());
    let mut circumradii = Vec::with_capacity(triangles.len());
    for c in centers {
        let (cc, r) = c.ok_or_else(|| Error::Degenerate("zero-area Delaunay face".to_string()))?;
        circumcenters.push(cc);
        circumradii.push(r);
    }
    Ok(TriMesh {
        triangles,
        adjacency,
        circumcenters,
        circumradii,
    })
}

/// Builds the Voronoi diagram dual to `mesh`: each cell collects the
/// circumcenters of the triangles incident to its site, ordered
/// counterclockwise around the site, with duplicates merged within 1e-10.
pub fn voronoi(config: &Configuration, mesh: &TriMesh) -> Result<VoronoiDiagram> {
    let pts = &config.points;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); pts.len()];
    for (ti, t) in mesh.triangles.iter().enumerate() {
        for &v in t {
            incident[v].push(ti);
        }
    }
    let cells_or_err = parallel::map_indexed(pts.len(), |site| -> Result<(Vec<UnitPoint>, f64)> {
        let tris = &incident[site];
        if tris.len() < 3 {
            return Err(Error::Degenerate(format!(
                "site {site} lies in only {} triangles",
                tris.len()
            )));
        }
        let p = pts[site];
        // Order circumcenters counterclockwise in the tangent plane at p.
        let e1 = tangent_towards(p, mesh.circumcenters[tris[0]]).ok_or_else(|| {
            Error::Degenerate(format!("circumcenter coincides with site {site}"))
        })?;
        let e2 = p.cross(UnitPoint::new(e1[0], e1[1], e1[2]));
        let mut ring: Vec<(f64, UnitPoint)> = tris
            .iter()
            .map(|&ti| {
                let c = mesh.circumcenters[ti];
                let x = (c.x - p.x) * e1[0] + (c.y - p.y) * e1[1] + (c.z - p.z) * e1[2];
                let y = (c.x - p.x) * e2[0] + (c.y - p.y) * e2[1] + (c.z - p.z) * e2[2];
                (y.atan2(x), c)
            })
            .collect();
        ring.sort_by(|a, b| a.0.total_cmp(&b.0));
        // Merge duplicate circumcenters from cocircular fans.
        let mut cell: Vec<UnitPoint> = Vec::with_capacity(ring.len());
        for (_, c) in ring {
            if cell
                .last()
                .is_some_and(|&l| crate::geom::chordal_distance(l, c) <= 1e-10)
            {
                continue;
            }
            cell.push(c);
        }
        while cell.len() > 1
            && crate::geom::chordal_distance(cell[0], *cell.last().expect("non-empty")) <= 1e-10
        {
            cell.pop();
        }
        if cell.len() < 3 {
            return Err(Error::Degenerate(format!(
                "Voronoi cell of site {site} degenerated to {} vertices",
                cell.len()
            )));
        }
        let area = spherical_polygon_area(&cell)?;
        Ok((cell, area))
    });
    let mut cells = Vec::with_capacity(pts.len());
    let mut areas = Vec::with_capacity(pts.len());
    let mut degrees = Vec::with_capacity(pts.len());
    for r in cells_or_err {
        let (cell, area) = r?;
        degrees.push(cell.len());
        areas.push(area);
        cells.push(cell);
    }
    Ok(VoronoiDiagram {
        cells,
        areas,
        degrees,
    })
}

/// Summarizes a Voronoi diagram: scaled extreme cell areas, the degree
/// histogram and the pentagon/hexagon/heptagon scar counts.
pub fn cell_stats(diagram: &VoronoiDiagram) -> CellStats {
    let n = diagram.areas.len() as f64;
    let max_area = diagram.areas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_area = diagram.areas.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut hist: HashMap<usize, usize> = HashMap::new();
    for &d in &diagram.degrees {
        *hist.entry(d).or_insert(0) += 1;
    }
    let mut degree_histogram: Vec<(usize, usize)> = hist.into_iter().collect();
    degree_histogram.sort_unstable();
    let count = |d: usize| {
        degree_histogram
            .iter()
            .find(|&&(deg, _)| deg == d)
            .map_or(0, |&(_, c)| c)
    };
    CellStats {
        max_area_scaled: n * max_area / (4.0 * std::f64::consts::PI),
        min_area_scaled: n * min_area / (4.0 * std::f64::consts::PI),
        pentagons: count(5),
        hexagons: count(6),
        heptagons: count(7),
        degree_histogram,
    }
}

/// Serializes the triangulation in OFF format for mesh viewers.
pub fn to_off(config: &Configuration, mesh: &TriMesh) -> String {
    let mut out = String::from("OFF\n");
    out.push_str(&format!(
        "{} {} 0\n",
        config.len(),
        mesh.triangles.len()
    ));
    for p in &config.points {
        out.push_str(&format!("{:.16e} {:.16e} {:.16e}\n", p.x, p.y, p.z));
    }
    for t in &mesh.triangles {
        out.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Configuration, Family};
    use crate::generators::{cubed_sphere, octahedral, radial_icosahedral, random_uniform, zonal_equal_area};
    use crate::geom::chordal_distance;

    fn tetrahedron() -> Configuration {
        let pts = vec![
            UnitPoint::project(1.0, 1.0, 1.0),
            UnitPoint::project(1.0, -1.0, -1.0),
            UnitPoint::project(-1.0, 1.0, -1.0),
            UnitPoint::project(-1.0, -1.0, 1.0),
        ];
        Configuration::new(pts, Family::External)
    }

    #[test]
    fn tetrahedron_mesh() {
        let c = tetrahedron();
        let m = delaunay(&c).unwrap();
        assert_eq!(m.triangles.len(), 4);
        // Chordal circumradius of a face cap: |normal_dir - vertex|.
        for (t, (&cc, &r)) in m
            .triangles
            .iter()
            .zip(m.circumcenters.iter().zip(&m.circumradii))
        {
            for &v in t {
                assert!((chordal_distance(cc, c.points[v]) - r).abs() < 1e-12);
            }
            // Regular tetrahedron: face circumcenter is the antipode of
            // the opposite vertex; the vertex angles to it have cosine
            // 1/3, so the chordal circumradius is sqrt(2 - 2/3).
            assert!((r - (4.0f64 / 3.0).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn cube_circumcenters_are_face_centers() {
        let c = cubed_sphere(2).unwrap();
        let m = delaunay(&c).unwrap();
        assert_eq!(m.triangles.len(), 12);
        for cc in &m.circumcenters {
            let comps = [cc.x, cc.y, cc.z];
            let big = comps.iter().filter(|v| v.abs() > 1e-9).count();
            assert_eq!(big, 1, "circumcenter {cc:?} is not an axis direction");
        }
    }

    #[test]
    fn rejects_small_and_degenerate() {
        let few = Configuration::new(
            vec![
                UnitPoint::new(0.0, 0.0, 1.0),
                UnitPoint::new(1.0, 0.0, 0.0),
                UnitPoint::new(0.0, 1.0, 0.0),
            ],
            Family::External,
        );
        assert!(delaunay(&few).is_err());
    }

    #[test]
    fn octahedron_voronoi_squares() {
        let c = octahedral(1).unwrap();
        let m = delaunay(&c).unwrap();
        let v = voronoi(&c, &m).unwrap();
        let want = 4.0 * std::f64::consts::PI / 6.0;
        for (cell, &area) in v.cells.iter().zip(&v.areas) {
            assert_eq!(cell.len(), 4);
            assert!((area - want).abs() < 1e-12, "area {area} want {want}");
        }
        let s = cell_stats(&v);
        assert_eq!(s.degree_histogram, vec![(4, 6)]);
    }

    #[test]
    fn radial_icosahedral_pentagon_count() {
        let c = radial_icosahedral(5).unwrap();
        let m = delaunay(&c).unwrap();
        let v = voronoi(&c, &m).unwrap();
        let s = cell_stats(&v);
        assert_eq!(s.pentagons, 12);
        assert_eq!(s.hexagons, c.len() - 12);
        assert_eq!(s.heptagons, 0);
    }

    #[test]
    fn voronoi_invariants_random() {
        let c = random_uniform(300, 1).unwrap();
        let m = delaunay(&c).unwrap();
        assert_eq!(m.triangles.len(), 2 * c.len() - 4);
        let v = voronoi(&c, &m).unwrap();
        let total: f64 = v.areas.iter().sum();
        assert!((total - 4.0 * std::f64::consts::PI).abs() < 1e-9 * c.len() as f64);
        let scars: i64 = v.degrees.iter().map(|&d| 6 - d as i64).sum();
        assert_eq!(scars, 12);
        // Duality: every cell vertex equidistant from its defining sites
        // is implied; check the weaker site-in-cell property via nearest
        // site of the cell centroid.
        for (site, cell) in v.cells.iter().enumerate() {
            let mut cx = [0.0; 3];
            for p in cell {
                cx[0] += p.x;
                cx[1] += p.y;
                cx[2] += p.z;
            }
            let centroid = UnitPoint::project(cx[0], cx[1], cx[2]);
            let nearest = (0..c.len())
                .min_by(|&a, &b| {
                    chordal_distance(centroid, c.points[a])
                        .total_cmp(&chordal_distance(centroid, c.points[b]))
                })
                .unwrap();
            assert_eq!(nearest, site);
        }
    }

    #[test]
    fn voronoi_membership_matches_nearest_site_oracle() {
        use rand::{Rng, SeedableRng};
        let c = random_uniform(150, 9).unwrap();
        let m = delaunay(&c).unwrap();
        let v = voronoi(&c, &m).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10_000 {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let probe = UnitPoint::from_sph(crate::geom::SphCoord::new(z.acos(), t));
            let nearest = (0..c.len())
                .min_by(|&a, &b| {
                    chordal_distance(probe, c.points[a])
                        .total_cmp(&chordal_distance(probe, c.points[b]))
                })
                .unwrap();
            // The probe must be at least as close to its cell's site as
            // to every vertex-defining neighbor, so the cell vertices of
            // `nearest` bound the probe's distance to the set.
            let r_probe = chordal_distance(probe, c.points[nearest]);
            let max_vertex_reach = v.cells[nearest]
                .iter()
                .map(|&cv| chordal_distance(cv, c.points[nearest]))
                .fold(0.0f64, f64::max);
            assert!(r_probe <= max_vertex_reach + 1e-9);
        }
    }

    #[test]
    fn zonal_cell_areas_near_uniform() {
        let c = zonal_equal_area(100, 0, true).unwrap();
        let m = delaunay(&c).unwrap();
        let v = voronoi(&c, &m).unwrap();
        let s = cell_stats(&v);
        assert!((s.max_area_scaled - 1.0).abs() < 0.25, "{}", s.max_area_scaled);
        assert!((s.min_area_scaled - 1.0).abs() < 0.25, "{}", s.min_area_scaled);
    }

    #[test]
    fn empty_circumcap_random() {
        let c = random_uniform(100, 0).unwrap();
        let m = delaunay(&c).unwrap();
        for (ti, t) in m.triangles.iter().enumerate() {
            let cc = m.circumcenters[ti];
            let r = m.circumradii[ti];
            for (p, &pt) in c.points.iter().enumerate() {
                if t.contains(&p) {
                    continue;
                }
                assert!(
                    chordal_distance(cc, pt) >= r - 1e-9,
                    "point {p} inside circumcap of triangle {ti}"
                );
            }
        }
    }

    #[test]
    fn off_export_shape() {
        let c = tetrahedron();
        let m = delaunay(&c).unwrap();
        let off = to_off(&c, &m);
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        assert_eq!(lines.next(), Some("4 4 0"));
        assert_eq!(off.lines().count(), 2 + 4 + 4);
    }
}
