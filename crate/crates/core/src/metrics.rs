//! Separation, covering radius, mesh ratio and sweep reporting.
//!
//! All distances are chordal. Separation is taken over Delaunay edges
//! (the closest pair is always a Delaunay edge) and covering over the
//! Voronoi vertices (the farthest point of the sphere from the set is a
//! Voronoi vertex).

use crate::config::Configuration;
use crate::error::Error;
use crate::geom::chordal_distance;
use crate::tessellation::{cell_stats, delaunay, voronoi, CellStats, TriMesh};
use crate::Result;

/// Quality metrics of one configuration.
#[derive(Clone, Debug, serde::Serialize)]
pub struct QualityReport {
    pub family: String,
    pub params: String,
    pub n: usize,
    /// Minimal pairwise chordal distance.
    pub delta: f64,
    /// Chordal covering radius.
    pub eta: f64,
    /// Mesh ratio `eta / delta`.
    pub gamma: f64,
    pub delta_scaled: f64,
    pub eta_scaled: f64,
    pub cell_stats: CellStats,
}

impl QualityReport {
    /// CSV header matching [`QualityReport::to_csv_row`].
    pub const CSV_HEADER: &'static str = "family,params,N,delta,eta,gamma,delta_sqrtN,eta_sqrtN,\
maxCellArea_N,minCellArea_N,deg5,deg6,deg7";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{},{},{}",
            self.family,
            self.params.replace(',', ";"),
            self.n,
            self.delta,
            self.eta,
            self.gamma,
            self.delta_scaled,
            self.eta_scaled,
            self.cell_stats.max_area_scaled,
            self.cell_stats.min_area_scaled,
            self.cell_stats.pentagons,
            self.cell_stats.hexagons,
            self.cell_stats.heptagons,
        )
    }
}

/// Minimal pairwise chordal distance over the Delaunay edges of `mesh`.
pub fn separation_from_mesh(config: &Configuration, mesh: &TriMesh) -> f64 {
    let mut min = f64::INFINITY;
    for t in &mesh.triangles {
        for i in 0..3 {
            let d = chordal_distance(config.points[t[i]], config.points[t[(i + 1) % 3]]);
            if d < min {
                min = d;
            }
        }
    }
    min
}

/// Minimal pairwise chordal distance; O(N^2) for N <= 2000, otherwise
/// via the Delaunay edge set.
pub fn separation(config: &Configuration) -> Result<f64> {
    if config.len() < 2 {
        return Err(Error::InvalidCardinality(
            "separation needs >= 2 points".to_string(),
        ));
    }
    if config.len() <= 2000 || config.len() < 4 {
        return Ok(separation_brute_force(config));
    }
    let mesh = delaunay(config)?;
    Ok(separation_from_mesh(config, &mesh))
}

/// Exhaustive O(N^2) pairwise minimum, the test oracle for
/// [`separation`].
pub fn separation_brute_force(config: &Configuration) -> f64 {
    let pts = &config.points;
    let per_row = crate::parallel::map_indexed(pts.len(), |i| {
        let mut min = f64::INFINITY;
        for j in i + 1..pts.len() {
            let d = chordal_distance(pts[i], pts[j]);
            if d < min {
                min = d;
            }
        }
        min
    });
    per_row.into_iter().fold(f64::INFINITY, f64::min)
}

/// Chordal covering radius: the largest triangle circumradius, attained
/// at a Voronoi vertex.
pub fn covering_radius_from_mesh(mesh: &TriMesh) -> f64 {
    mesh.circumradii.iter().cloned().fold(0.0, f64::max)
}

/// Chordal covering radius of the configuration.
pub fn covering_radius(config: &Configuration) -> Result<f64> {
    let mesh = delaunay(config)?;
    Ok(covering_radius_from_mesh(&mesh))
}

/// Mesh ratio `gamma = eta / delta`.
pub fn mesh_ratio(config: &Configuration) -> Result<f64> {
    let mesh = delaunay(config)?;
    Ok(covering_radius_from_mesh(&mesh) / separation_from_mesh(config, &mesh))
}

/// Full quality report for one configuration: one tessellation shared by
/// all metrics.
pub fn quality_report(config: &Configuration) -> Result<QualityReport> {
    let mesh = delaunay(config)?;
    let diagram = voronoi(config, &mesh)?;
    let delta = separation_from_mesh(config, &mesh);
    let eta = covering_radius_from_mesh(&mesh);
    let n = config.len();
    Ok(QualityReport {
        family: config.family.to_string(),
        params: config.params_string(),
        n,
        delta,
        eta,
        gamma: eta / delta,
        delta_scaled: delta * (n as f64).sqrt(),
        eta_scaled: eta * (n as f64).sqrt(),
        cell_stats: cell_stats(&diagram),
    })
}

/// Runs [`quality_report`] over many configurations, collecting per-item
/// errors instead of aborting the sweep.
pub fn quality_sweep<I>(configs: I) -> Vec<Result<QualityReport>>
where
    I: IntoIterator<Item = Result<Configuration>>,
{
    configs
        .into_iter()
        .map(|c| c.and_then(|cfg| quality_report(&cfg)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fibonacci, gen_spiral, healpix, octahedral, random_uniform};
    use crate::geom::{SphCoord, UnitPoint};

    #[test]
    fn octahedron_separation_sqrt2() {
        let c = octahedral(1).unwrap();
        let d = separation(&c).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn separation_matches_brute_force() {
        for seed in 0..5 {
            let c = random_uniform(400, seed).unwrap();
            let mesh = delaunay(&c).unwrap();
            let fast = separation_from_mesh(&c, &mesh);
            let slow = separation_brute_force(&c);
            assert_eq!(fast, slow, "seed {seed}");
        }
    }

    #[test]
    fn tetrahedron_covering_radius() {
        let pts = vec![
            UnitPoint::project(1.0, 1.0, 1.0),
            UnitPoint::project(1.0, -1.0, -1.0),
            UnitPoint::project(-1.0, 1.0, -1.0),
            UnitPoint::project(-1.0, -1.0, 1.0),
        ];
        let c = Configuration::new(pts, crate::Family::External);
        // Farthest sphere point from the vertices is a vertex antipode,
        // whose nearest vertices sit at angle cosine 1/3.
        let eta = covering_radius(&c).unwrap();
        assert!((eta - (4.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn covering_radius_matches_probe_oracle() {
        use rand::{Rng, SeedableRng};
        let c = random_uniform(200, 2).unwrap();
        let eta = covering_radius(&c).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut probe_max = 0.0f64;
        for _ in 0..1_000_000 {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let p = UnitPoint::from_sph(SphCoord::new(z.acos(), t));
            let nearest = c
                .points
                .iter()
                .map(|&q| chordal_distance(p, q))
                .fold(f64::INFINITY, f64::min);
            probe_max = probe_max.max(nearest);
        }
        assert!(eta >= probe_max - 1e-12, "eta {eta} < probe {probe_max}");
        // Probe resolution for 1e6 samples over 200 cells is generous.
        assert!(eta <= probe_max + 0.05, "eta {eta} >> probe {probe_max}");
    }

    #[test]
    fn spiral_scaled_separation() {
        let c = gen_spiral(10_000).unwrap();
        let d = separation(&c).unwrap() * (c.len() as f64).sqrt();
        assert!((d - 3.1319).abs() < 0.02, "delta*sqrt(N) = {d}");
    }

    #[test]
    fn fibonacci_scaled_separation() {
        let c = fibonacci(10_001).unwrap();
        let d = separation(&c).unwrap() * (c.len() as f64).sqrt();
        assert!((d - 3.0921).abs() < 0.02, "delta*sqrt(N) = {d}");
    }

    #[test]
    fn healpix_mesh_ratio_k5() {
        // Chordal mesh ratio, plus the variant with a great-circle
        // covering radius, which is what the published reference value
        // for this family was computed with.
        let c = healpix(5).unwrap();
        let mesh = delaunay(&c).unwrap();
        let delta = separation_from_mesh(&c, &mesh);
        let eta = covering_radius_from_mesh(&mesh);
        assert!((eta / delta - 0.938971).abs() < 1e-4);
        let g = 2.0 * (eta / 2.0).asin() / delta;
        assert!((g - 0.940016).abs() < 1e-4, "gamma = {g}");
    }

    #[test]
    fn gamma_lower_bound() {
        for seed in 0..3 {
            let r = quality_report(&random_uniform(250, seed).unwrap()).unwrap();
            assert!(r.gamma >= 0.5);
            assert!((r.gamma - r.eta / r.delta).abs() < 1e-15);
        }
    }

    #[test]
    fn sweep_collects_errors() {
        let out = quality_sweep(vec![
            gen_spiral(100),
            Err(crate::Error::InvalidCardinality("boom".to_string())),
            gen_spiral(200),
        ]);
        assert_eq!(out.len(), 3);
        assert!(out[0].is_ok() && out[2].is_ok());
        assert!(out[1].is_err());
    }

    #[test]
    fn csv_row_field_count() {
        let r = quality_report(&gen_spiral(100).unwrap()).unwrap();
        assert_eq!(
            r.to_csv_row().split(',').count(),
            QualityReport::CSV_HEADER.split(',').count()
        );
    }
}
