//! Iso-latitudinal equal-area families: recursive zonal equal area nodes
//! and HEALPix pixel centers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Configuration, Family};
use crate::error::Error;
use crate::geom::{normalize_azimuth, SphCoord, UnitPoint};
use crate::Result;

/// Zonal equal area nodes: centers of the cells of the recursive zonal
/// equal-area partition (two polar caps plus collars of equal-area cells).
///
/// Each collar gets an independent random starting azimuth drawn from
/// `seed`; with `shift = false` all starting azimuths are zero, which
/// makes the configuration deterministic but aligns the collars.
pub fn zonal_equal_area(n: usize, seed: u64, shift: bool) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::InvalidCardinality(format!(
            "zonal requires N >= 2, got {n}"
        )));
    }
    let nf = n as f64;
    let mut points = Vec::with_capacity(n);
    // North polar cap center.
    points.push(UnitPoint::new(0.0, 0.0, 1.0));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n > 2 {
        // Cap colatitude and collar count.
        let phi_c = (1.0 - 2.0 / nf).clamp(-1.0, 1.0).acos();
        let delta_ideal = (4.0 * std::f64::consts::PI / nf).sqrt();
        let n_ideal = (std::f64::consts::PI - 2.0 * phi_c) / delta_ideal;
        let collars = (n_ideal.round() as i64).max(1) as usize;
        let delta_fit = (std::f64::consts::PI - 2.0 * phi_c) / collars as f64;

        // Cumulative rounding of the ideal per-collar cell counts.
        let mut counts = Vec::with_capacity(collars);
        let mut acc = 0.0;
        for j in 0..collars {
            let top = phi_c + j as f64 * delta_fit;
            let bot = phi_c + (j + 1) as f64 * delta_fit;
            let area = 2.0 * std::f64::consts::PI * (top.cos() - bot.cos());
            let ideal = area * nf / (4.0 * std::f64::consts::PI);
            let y = (ideal + acc).round().max(0.0) as usize;
            acc += ideal - y as f64;
            counts.push(y);
        }
        let total: usize = counts.iter().sum();
        if total != n - 2 {
            return Err(Error::Inconsistency(format!(
                "zonal cell counts sum to {} for N = {n}",
                total + 2
            )));
        }

        // Collar boundary colatitudes from cumulative normalized areas,
        // then one point per cell at the cell center.  Without random
        // shifts each collar is staggered half a cell against the one
        // above it (cumulative pi/y offsets), which maximizes the
        // distance between adjacent rings.
        let mut cum = 1usize; // north cap
        let mut prev_phi = phi_c;
        let mut stagger = 0.0;
        let mut first = true;
        for &y in &counts {
            let next = 1.0 - 2.0 * (cum + y) as f64 / nf;
            let next_phi = next.clamp(-1.0, 1.0).acos();
            let phi = 0.5 * (prev_phi + next_phi);
            let width = std::f64::consts::TAU / y as f64;
            if !first {
                stagger += 0.5 * width;
            }
            first = false;
            let start = if shift {
                rng.gen_range(0.0..std::f64::consts::TAU)
            } else {
                stagger
            };
            let mut ring: Vec<f64> = (0..y)
                .map(|c| normalize_azimuth(start + c as f64 * width))
                .collect();
            ring.sort_by(f64::total_cmp);
            for theta in ring {
                points.push(UnitPoint::from_sph(SphCoord::new(phi, theta)));
            }
            cum += y;
            prev_phi = next_phi;
        }
    }

    // South polar cap center.
    points.push(UnitPoint::new(0.0, 0.0, -1.0));
    debug_assert_eq!(points.len(), n);
    let mut cfg = Configuration::new(points, Family::ZonalEqualArea)
        .with_param("n", n as i64)
        .with_param("shift", shift as i64);
    if shift {
        cfg = cfg.with_seed(seed);
    }
    Ok(cfg)
}

/// HEALPix pixel centers for resolution `k`, giving `N = 12 k^2` points.
///
/// Polar rings `i = 1..k` carry `4i` points at `|z| = 1 - i^2/(3k^2)`;
/// equatorial rings carry `4k` points at `|z| = 4/3 - 2i/(3k)` with a
/// half-step phase alternation. The equator ring is counted once.
pub fn healpix(k: usize) -> Result<Configuration> {
    if k < 1 {
        return Err(Error::InvalidCardinality(
            "healpix requires k >= 1".to_string(),
        ));
    }
    let kf = k as f64;
    let n = 12 * k * k;
    let mut points = Vec::with_capacity(n);

    let mut push_ring = |z: f64, thetas: &mut Vec<f64>| {
        thetas.sort_by(f64::total_cmp);
        let phi = z.clamp(-1.0, 1.0).acos();
        for &theta in thetas.iter() {
            points.push(UnitPoint::from_sph(SphCoord::new(phi, theta)));
        }
    };
    let polar_thetas = |i: usize| -> Vec<f64> {
        (1..=4 * i)
            .map(|j| normalize_azimuth(std::f64::consts::FRAC_PI_2 / i as f64 * (j as f64 - 0.5)))
            .collect()
    };
    let equatorial_thetas = |i: usize| -> Vec<f64> {
        let s = ((i as i64 - k as i64 + 1).rem_euclid(2)) as f64;
        (1..=4 * k)
            .map(|j| normalize_azimuth(std::f64::consts::FRAC_PI_2 / kf * (j as f64 - s / 2.0)))
            .collect()
    };

    // Northern polar rings.
    for i in 1..=k {
        let z = 1.0 - (i * i) as f64 / (3.0 * kf * kf);
        push_ring(z, &mut polar_thetas(i));
    }
    // Equatorial rings, north of and including the equator.
    for i in k + 1..=2 * k {
        let z = 4.0 / 3.0 - 2.0 * i as f64 / (3.0 * kf);
        push_ring(z, &mut equatorial_thetas(i));
    }
    // Southern equatorial rings (equator excluded).
    for i in (k + 1..=2 * k - 1).rev() {
        let z = -(4.0 / 3.0 - 2.0 * i as f64 / (3.0 * kf));
        push_ring(z, &mut equatorial_thetas(i));
    }
    // Southern polar rings.
    for i in (1..=k).rev() {
        let z = -(1.0 - (i * i) as f64 / (3.0 * kf * kf));
        push_ring(z, &mut polar_thetas(i));
    }

    if points.len() != n {
        return Err(Error::Inconsistency(format!(
            "healpix produced {} points for k = {k}, expected {n}",
            points.len()
        )));
    }
    Ok(Configuration::new(points, Family::Healpix)
        .with_param("k", k as i64)
        .with_param("n", n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::chordal_distance;

    #[test]
    fn zonal_n2_is_poles() {
        let c = zonal_equal_area(2, 0, true).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.points[0].z, 1.0);
        assert_eq!(c.points[1].z, -1.0);
    }

    #[test]
    fn zonal_counts_and_poles() {
        for n in [3, 4, 5, 10, 17, 100, 701, 5000] {
            let c = zonal_equal_area(n, 7, true).unwrap();
            assert_eq!(c.len(), n, "N = {n}");
            assert_eq!(c.points[0].z, 1.0);
            assert_eq!(c.points[n - 1].z, -1.0);
        }
    }

    #[test]
    fn zonal_latitudes_monotone_south() {
        let c = zonal_equal_area(300, 3, true).unwrap();
        for w in c.points.windows(2) {
            assert!(w[1].z <= w[0].z + 1e-12);
        }
    }

    #[test]
    fn zonal_shift_changes_azimuths_only() {
        let a = zonal_equal_area(100, 1, true).unwrap();
        let b = zonal_equal_area(100, 2, true).unwrap();
        let c = zonal_equal_area(100, 1, true).unwrap();
        assert!(a
            .points
            .iter()
            .zip(&c.points)
            .all(|(p, q)| p.as_array() == q.as_array()));
        let mut differ = false;
        for (p, q) in a.points.iter().zip(&b.points) {
            assert!((p.z - q.z).abs() < 1e-12);
            if chordal_distance(*p, *q) > 1e-9 {
                differ = true;
            }
        }
        assert!(differ);
    }

    #[test]
    fn zonal_no_shift_staggers_collars() {
        // N = 10 gives two collars of four cells; without shifts the
        // first collar starts at azimuth zero and the second is rotated
        // half a cell (pi/4), the square-antiprism arrangement.
        let c = zonal_equal_area(10, 0, false).unwrap();
        let ring1: Vec<f64> = c.points[1..5].iter().map(|p| p.to_sph().theta).collect();
        let ring2: Vec<f64> = c.points[5..9].iter().map(|p| p.to_sph().theta).collect();
        for (i, t) in ring1.iter().enumerate() {
            assert!((t - i as f64 * std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        }
        for (i, t) in ring2.iter().enumerate() {
            let expect = std::f64::consts::FRAC_PI_4 * (2 * i + 1) as f64;
            assert!((t - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn healpix_counts() {
        for k in 1..=8 {
            let c = healpix(k).unwrap();
            assert_eq!(c.len(), 12 * k * k);
        }
    }

    #[test]
    fn healpix_k1_rings() {
        let c = healpix(1).unwrap();
        // Three rings of four: z = 2/3, 0, -2/3.
        for i in 0..4 {
            assert!((c.points[i].z - 2.0 / 3.0).abs() < 1e-15);
            assert!(c.points[4 + i].z.abs() < 1e-15);
            assert!((c.points[8 + i].z + 2.0 / 3.0).abs() < 1e-15);
        }
        // First polar ring azimuths: pi/4, 3pi/4, 5pi/4, 7pi/4.
        for (i, p) in c.points[..4].iter().enumerate() {
            let expect = std::f64::consts::FRAC_PI_4 * (2 * i + 1) as f64;
            assert!((p.to_sph().theta - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn healpix_equator_counted_once() {
        let c = healpix(3).unwrap();
        let on_equator = c.points.iter().filter(|p| p.z.abs() < 1e-12).count();
        assert_eq!(on_equator, 12);
    }

    #[test]
    fn healpix_antipodal_symmetry() {
        // z -> -z maps the configuration onto itself (phases align
        // because the ring phase depends on i - k + 1 mod 2).
        let c = healpix(4).unwrap();
        for p in &c.points {
            let mirror = UnitPoint {
                x: p.x,
                y: p.y,
                z: -p.z,
            };
            let close = c
                .points
                .iter()
                .any(|q| chordal_distance(*q, mirror) < 1e-9);
            assert!(close, "no mirror for {p:?}");
        }
    }

    #[test]
    fn healpix_all_distinct() {
        let c = healpix(3).unwrap();
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                assert!(chordal_distance(c.points[i], c.points[j]) > 1e-9);
            }
        }
    }
}
