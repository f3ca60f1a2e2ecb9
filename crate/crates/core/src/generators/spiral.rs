//! Generalized spiral and Fibonacci (Swinbank-Purser) nodes.

use crate::config::{Configuration, Family};
use crate::error::Error;
use crate::geom::{normalize_azimuth, SphCoord, UnitPoint};
use crate::Result;

/// Generalized spiral points: `phi_k = arccos(1 - (2k-1)/N)`,
/// `theta_k = sqrt(N*pi) * phi_k mod 2*pi`, `k = 1..N`.
pub fn gen_spiral(n: usize) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::InvalidCardinality(format!(
            "gen_spiral requires N >= 2, got {n}"
        )));
    }
    let slope = (n as f64 * std::f64::consts::PI).sqrt();
    let points = (1..=n)
        .map(|k| {
            let h = 1.0 - (2.0 * k as f64 - 1.0) / n as f64;
            let phi = h.clamp(-1.0, 1.0).acos();
            UnitPoint::from_sph(SphCoord::new(phi, normalize_azimuth(slope * phi)))
        })
        .collect();
    Ok(Configuration::new(points, Family::GenSpiral).with_param("n", n as i64))
}

/// Fibonacci nodes after Swinbank and Purser, defined for odd `N = 2M+1`:
/// `sin(lat_i) = 2i/(2M+1)`, `theta_i = 2*pi*i/golden`, `i = -M..M`.
/// Ordered by ascending latitude (south to north).
pub fn fibonacci(n: usize) -> Result<Configuration> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidCardinality(format!(
            "fibonacci requires odd N >= 3, got {n}"
        )));
    }
    let m = (n as i64 - 1) / 2;
    let golden_inv = 2.0 / (1.0 + 5f64.sqrt());
    let points = (-m..=m)
        .map(|i| {
            let sin_lat = 2.0 * i as f64 / n as f64;
            let phi = std::f64::consts::FRAC_PI_2 - sin_lat.clamp(-1.0, 1.0).asin();
            let theta = normalize_azimuth(std::f64::consts::TAU * i as f64 * golden_inv);
            UnitPoint::from_sph(SphCoord::new(phi, theta))
        })
        .collect();
    Ok(Configuration::new(points, Family::Fibonacci).with_param("n", n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::chordal_distance;

    #[test]
    fn spiral_n2_direct_formula() {
        let c = gen_spiral(2).unwrap();
        let l = (2.0 * std::f64::consts::PI).sqrt();
        let phi1 = 0.5f64.acos();
        let s1 = c.points[0].to_sph();
        assert!((s1.phi - phi1).abs() < 1e-14);
        assert!((s1.theta - normalize_azimuth(l * phi1)).abs() < 1e-12);
        let phi2 = (-0.5f64).acos();
        let s2 = c.points[1].to_sph();
        assert!((s2.phi - phi2).abs() < 1e-14);
        assert!((s2.theta - normalize_azimuth(l * phi2)).abs() < 1e-12);
    }

    #[test]
    fn spiral_rejects_n1() {
        assert!(matches!(gen_spiral(1), Err(Error::InvalidCardinality(_))));
    }

    #[test]
    fn fibonacci_equator_point() {
        let c = fibonacci(1001).unwrap();
        // i = 0 is the middle point: equator, azimuth 0.
        let mid = c.points[500];
        assert!(mid.z.abs() < 1e-15);
        assert_eq!(mid.to_sph().theta, 0.0);
    }

    #[test]
    fn fibonacci_equatorial_mirror() {
        // Point for -i mirrors point for i in latitude, with azimuth negated.
        let c = fibonacci(101).unwrap();
        let m = 50usize;
        for i in 1..=m {
            let p = c.points[m + i];
            let q = c.points[m - i];
            assert!((p.z + q.z).abs() < 1e-15);
            let mirrored = UnitPoint {
                x: q.x,
                y: -q.y,
                z: -q.z,
            };
            assert!(chordal_distance(p, mirrored) < 1e-12);
        }
    }

    #[test]
    fn fibonacci_rejects_even() {
        assert!(fibonacci(1000).is_err());
    }

    #[test]
    fn fibonacci_polar_separation_limit() {
        // sqrt(total) * |x1 - x4| -> 3.09207... (points labeled by latitude).
        let c = fibonacci(100_001).unwrap();
        let d = chordal_distance(c.points[0], c.points[3]);
        let scaled = (c.len() as f64).sqrt() * d;
        assert!(
            (scaled - 3.09206861881).abs() < 5e-3,
            "scaled separation {scaled}"
        );
    }
}
