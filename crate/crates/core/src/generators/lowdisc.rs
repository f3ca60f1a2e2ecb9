//! Low-discrepancy nodes: Hammersley and the two Fibonacci lattices,
//! mapped to the sphere by the Lambert projection.

use crate::config::{Configuration, Family};
use crate::error::Error;
use crate::geom::{lambert, UnitPoint};
use crate::Result;

/// Base-2 van der Corput radical inverse of `k >= 1`.
pub fn van_der_corput(k: u64) -> f64 {
    let mut x = 0.0;
    let mut denom = 2.0;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            x += 1.0 / denom;
        }
        denom *= 2.0;
        k >>= 1;
    }
    x
}

/// Spherical Hammersley nodes: `x_k` is the base-2 radical inverse of k,
/// `y_k = (2k-1)/(2N)`, mapped with azimuth `2*pi*x_k` and height `1-2*y_k`.
pub fn hammersley(n: usize) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::InvalidCardinality(format!(
            "hammersley requires N >= 2, got {n}"
        )));
    }
    let points = (1..=n as u64)
        .map(|k| {
            let x = van_der_corput(k);
            let y = (2.0 * k as f64 - 1.0) / (2.0 * n as f64);
            // Height 1-2y means the Lambert ordinate is 1-y.
            lambert(x, 1.0 - y)
        })
        .collect::<Vec<UnitPoint>>();
    Ok(Configuration::new(points, Family::Hammersley).with_param("n", n as i64))
}

/// Which Fibonacci lattice to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeMode {
    /// Rational lattice `({i F_{k-1}/F_k}, i/F_k)` with `F_k` points.
    Rational,
    /// Irrational lattice `({i/golden}, i/N)` with `N+1` points.
    Irrational,
}

fn fib(k: usize) -> u64 {
    // F_1 = F_2 = 1.
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 2..k {
        let c = a + b;
        a = b;
        b = c;
    }
    if k <= 2 {
        1
    } else {
        b
    }
}

/// Fibonacci lattice points on `[0,1)^2` mapped by the Lambert projection.
///
/// Rational mode takes the Fibonacci index `k >= 3` and produces `F_k`
/// points; irrational mode takes a point-budget `n >= 2` and produces
/// `n + 1` points (indices `0..=n`).
pub fn fibonacci_lattice(k: usize, mode: LatticeMode, n: usize) -> Result<Configuration> {
    let golden_inv = 2.0 / (1.0 + 5f64.sqrt());
    match mode {
        LatticeMode::Rational => {
            if k < 3 {
                return Err(Error::InvalidCardinality(format!(
                    "rational fibonacci lattice requires k >= 3, got {k}"
                )));
            }
            let fk = fib(k);
            let fk1 = fib(k - 1);
            let points = (0..fk)
                .map(|i| {
                    let x = ((i * fk1) % fk) as f64 / fk as f64;
                    let y = i as f64 / fk as f64;
                    lambert(x, y)
                })
                .collect();
            Ok(Configuration::new(points, Family::FibonacciLattice)
                .with_param("k", k as i64)
                .with_param("n", fk as i64))
        }
        LatticeMode::Irrational => {
            if n < 2 {
                return Err(Error::InvalidCardinality(format!(
                    "irrational fibonacci lattice requires N >= 2, got {n}"
                )));
            }
            let points = (0..=n as u64)
                .map(|i| {
                    let x = (i as f64 * golden_inv).fract();
                    let y = i as f64 / n as f64;
                    lambert(x, y)
                })
                .collect();
            Ok(Configuration::new(points, Family::FibonacciLattice).with_param("n", n as i64))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::chordal_distance;

    #[test]
    fn van_der_corput_bit_reversal() {
        assert_eq!(van_der_corput(1), 0.5);
        assert_eq!(van_der_corput(6), 0.375); // 110 -> 0.011
        assert_eq!(van_der_corput(5), 0.625); // 101 -> 0.101
    }

    #[test]
    fn rational_lattice_abscissae_k4() {
        // F_4 = 3, F_3 = 2: abscissae {0, 2/3, 1/3}.
        let c = fibonacci_lattice(4, LatticeMode::Rational, 0).unwrap();
        assert_eq!(c.len(), 3);
        let xs: Vec<f64> = c
            .points
            .iter()
            .map(|p| p.to_sph().theta / std::f64::consts::TAU)
            .collect();
        assert!(xs[0].abs() < 1e-15);
        assert!((xs[1] - 2.0 / 3.0).abs() < 1e-12);
        assert!((xs[2] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn irrational_lattice_golden_abscissa() {
        let c = fibonacci_lattice(0, LatticeMode::Irrational, 4).unwrap();
        assert_eq!(c.len(), 5);
        let x1 = c.points[1].to_sph().theta / std::f64::consts::TAU;
        assert!((x1 - 0.6180339887498949).abs() < 1e-12);
    }

    #[test]
    fn rational_lattice_k10_distinct() {
        let c = fibonacci_lattice(10, LatticeMode::Rational, 0).unwrap();
        assert_eq!(c.len(), 55);
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                assert!(chordal_distance(c.points[i], c.points[j]) > 1e-9);
            }
        }
    }

    #[test]
    fn hammersley_rejects_n1() {
        assert!(hammersley(1).is_err());
    }
}
