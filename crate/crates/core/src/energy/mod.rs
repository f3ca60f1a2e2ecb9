//! Discrete Riesz and logarithmic energies, their continuous limits and
//! normalized asymptotic series, and the Stolarsky L2 discrepancy.
//!
//! Sign conventions: for `s > 0` the energy is `sum 1/|x-y|^s` and for
//! the log kernel `sum log(1/|x-y|)`, both over ordered pairs. For
//! `-2 < s < 0` the reported quantity is the positive distance-sum
//! `sum |x-y|^{|s|}`, so that the first-order limit matches
//! `2^{1-s}/(2-s)`; minimization for these kernels means maximizing the
//! distance sum.

mod zeta;

pub use zeta::{
    dirichlet_l3, epstein_zeta_triangular, hurwitz_zeta, riemann_zeta, second_order_coefficient,
};

use crate::config::Configuration;
use crate::error::Error;
use crate::geom::UnitPoint;
use crate::parallel;
use crate::Result;

/// Printed bracket endpoint for the third-order log-energy constant.
pub const LOG_ORDER3_UPPER_REF: f64 = -0.055_605_30;

/// Pairwise interaction kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kernel {
    /// Riesz kernel with exponent `s` in `(-2, 0) U (0, inf)`.
    Riesz(f64),
    /// Logarithmic kernel `log(1/|x-y|)`.
    Log,
}

impl Kernel {
    pub fn validate(self) -> Result<Self> {
        if let Kernel::Riesz(s) = self {
            if !s.is_finite() || s == 0.0 || s <= -2.0 {
                return Err(Error::KernelMismatch(format!(
                    "riesz exponent must lie in (-2, 0) or (0, inf), got {s}"
                )));
            }
        }
        Ok(self)
    }
}

impl std::fmt::Display for Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kernel::Riesz(s) => write!(f, "s={s}"),
            Kernel::Log => f.write_str("log"),
        }
    }
}

/// Continuous energy of the uniform measure, possibly divergent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ContinuousEnergy {
    Finite(f64),
    Infinite,
}

impl ContinuousEnergy {
    pub fn finite(self) -> Option<f64> {
        match self {
            ContinuousEnergy::Finite(v) => Some(v),
            ContinuousEnergy::Infinite => None,
        }
    }
}

/// Neumaier compensated accumulator.
#[derive(Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.c
    }
}

const BLOCK: usize = 256;

/// Discrete energy over ordered pairs. The summation runs over fixed
/// index blocks with compensated accumulation, so the result does not
/// depend on the number of worker threads.
pub fn discrete_energy(config: &Configuration, kernel: Kernel) -> Result<f64> {
    kernel.validate()?;
    let pts = &config.points;
    if pts.len() < 2 {
        return Err(Error::InvalidCardinality(
            "energy needs >= 2 points".to_string(),
        ));
    }
    let blocks = pts.len().div_ceil(BLOCK);
    let partial = parallel::map_indexed(blocks, |b| -> Result<f64> {
        let lo = b * BLOCK;
        let hi = (lo + BLOCK).min(pts.len());
        let mut acc = Compensated::default();
        for i in lo..hi {
            for j in i + 1..pts.len() {
                acc.add(pair_term(pts[i], pts[j], kernel, i, j)?);
            }
        }
        Ok(acc.value())
    });
    let mut total = Compensated::default();
    for p in partial {
        total.add(p?);
    }
    // Ordered pairs: twice the unordered sum.
    Ok(2.0 * total.value())
}

fn pair_term(a: UnitPoint, b: UnitPoint, kernel: Kernel, i: usize, j: usize) -> Result<f64> {
    let d = crate::geom::chordal_distance(a, b);
    match kernel {
        Kernel::Riesz(s) if s > 0.0 => {
            if d == 0.0 {
                return Err(Error::InfiniteEnergy(i, j));
            }
            // Fast paths for the common integer exponents; powf dominates
            // the O(N^2) sum otherwise.
            Ok(match s {
                _ if s == 1.0 => 1.0 / d,
                _ if s == 2.0 => 1.0 / (d * d),
                _ if s == 3.0 => 1.0 / (d * d * d),
                _ => d.powf(-s),
            })
        }
        // s < 0: positive distance-sum
        Kernel::Riesz(s) if s == -1.0 => Ok(d),
        Kernel::Riesz(s) => Ok(d.powf(-s)),
        Kernel::Log => {
            if d == 0.0 {
                return Err(Error::InfiniteEnergy(i, j));
            }
            Ok(-d.ln())
        }
    }
}

/// Continuous energy of the uniform surface measure:
/// `1/2 - log 2` for the log kernel and `2^{1-s}/(2-s)` for Riesz `s < 2`;
/// divergent for `s >= 2`.
pub fn continuous_value(kernel: Kernel) -> Result<ContinuousEnergy> {
    kernel.validate()?;
    match kernel {
        Kernel::Log => Ok(ContinuousEnergy::Finite(0.5 - 2f64.ln())),
        Kernel::Riesz(s) if s < 2.0 => Ok(ContinuousEnergy::Finite(riesz_continuation(s)?)),
        Kernel::Riesz(_) => Ok(ContinuousEnergy::Infinite),
    }
}

/// The analytic continuation `V_s = 2^{1-s}/(2-s)`, defined for all
/// `s != 2`; equals the continuous energy for `-2 < s < 2`.
pub fn riesz_continuation(s: f64) -> Result<f64> {
    if s == 2.0 {
        return Err(Error::Pole(2.0));
    }
    Ok(2f64.powf(1.0 - s) / (2.0 - s))
}

/// Expected energy of N i.i.d. uniform points: `I[sigma] * N(N-1)`.
pub fn expected_random_energy(kernel: Kernel, n: usize) -> Result<ContinuousEnergy> {
    let nf = n as f64;
    Ok(match continuous_value(kernel)? {
        ContinuousEnergy::Finite(v) => ContinuousEnergy::Finite(v * nf * (nf - 1.0)),
        ContinuousEnergy::Infinite => ContinuousEnergy::Infinite,
    })
}

/// Normalizes a raw energy value to the given series order; the orders
/// mirror the axes of the asymptotic-comparison figures.
pub fn normalize_energy(e: f64, n: usize, kernel: Kernel, order: u8) -> Result<f64> {
    kernel.validate()?;
    let nf = n as f64;
    match (kernel, order) {
        (Kernel::Log, 1) => Ok(e / (nf * nf)),
        (Kernel::Log, 2) => {
            let i = 0.5 - 2f64.ln();
            Ok((e - i * nf * nf) / (nf * nf.ln()))
        }
        (Kernel::Log, 3) => {
            let i = 0.5 - 2f64.ln();
            Ok((e - i * nf * nf + nf * nf.ln() / 2.0) / nf)
        }
        (Kernel::Riesz(s), 1) if s < 2.0 => Ok(e / (nf * nf)),
        (Kernel::Riesz(s), 2) if s < 2.0 => {
            let i = riesz_continuation(s)?;
            Ok((e - i * nf * nf) / nf.powf(1.0 + s / 2.0))
        }
        (Kernel::Riesz(s), 1) if s == 2.0 => Ok(e / (nf * nf * nf.ln())),
        (Kernel::Riesz(s), 1) => Ok(e / nf.powf(1.0 + s / 2.0)),
        (Kernel::Riesz(s), 2) if s > 2.0 && s < 4.0 => {
            let leading = second_order_coefficient(s)?;
            Ok((e - leading * nf.powf(1.0 + s / 2.0)) / (nf * nf))
        }
        _ => Err(Error::KernelMismatch(format!(
            "order {order} is not defined for kernel {kernel}"
        ))),
    }
}

/// Computes the energy and normalizes it; see [`normalize_energy`].
pub fn normalized_series(config: &Configuration, kernel: Kernel, order: u8) -> Result<f64> {
    let e = discrete_energy(config, kernel)?;
    normalize_energy(e, config.len(), kernel, order)
}

/// Stolarsky invariance: `(1/N^2) sum |x_i - x_j| + 4 D^2 = 4/3`, solved
/// for the L2 spherical-cap discrepancy D.
pub fn stolarsky_l2_discrepancy(config: &Configuration) -> Result<f64> {
    let n = config.len() as f64;
    let dist_sum = discrete_energy(config, Kernel::Riesz(-1.0))?;
    let radicand = (4.0 / 3.0 - dist_sum / (n * n)) / 4.0;
    if radicand < -1e-12 {
        return Err(Error::Inconsistency(format!(
            "Stolarsky radicand {radicand} is negative"
        )));
    }
    Ok(radicand.max(0.0).sqrt())
}


/// Sequential twin of [`discrete_energy`] used by the benchmark suite to
/// compare against the parallel path; bit-identical results.
pub fn discrete_energy_seq(config: &Configuration, kernel: Kernel) -> Result<f64> {
    kernel.validate()?;
    let pts = &config.points;
    if pts.len() < 2 {
        return Err(Error::InvalidCardinality(
            "energy needs >= 2 points".to_string(),
        ));
    }
    let blocks = pts.len().div_ceil(BLOCK);
    let partial = parallel::map_indexed_seq(blocks, |b| -> Result<f64> {
        let lo = b * BLOCK;
        let hi = (lo + BLOCK).min(pts.len());
        let mut acc = Compensated::default();
        for i in lo..hi {
            for j in i + 1..pts.len() {
                acc.add(pair_term(pts[i], pts[j], kernel, i, j)?);
            }
        }
        Ok(acc.value())
    });
    let mut total = Compensated::default();
    for p in partial {
        total.add(p?);
    }
    Ok(2.0 * total.value())
}
