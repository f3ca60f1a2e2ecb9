//! Zeta-function machinery for the second-order energy coefficients:
//! Hurwitz zeta via Euler-Maclaurin, the Dirichlet L-function modulo 3,
//! and the Epstein zeta function of the unit triangular lattice.

use crate::error::Error;
use crate::Result;

/// Bernoulli numbers B_2, B_4, ..., B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Hurwitz zeta `zeta(s, a)` for real `s != 1`, `a > 0`, by Euler-Maclaurin
/// summation; accurate to well over 10 significant digits for
/// `s in [-2, 8]` with the fixed truncation below.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole(1.0));
    }
    if !(a > 0.0) {
        return Err(Error::Degenerate(format!("hurwitz zeta needs a > 0, got {a}")));
    }
    const M: usize = 20;
    let mut sum = 0.0;
    for k in 0..M {
        sum += (a + k as f64).powf(-s);
    }
    let x = a + M as f64;
    sum += x.powf(1.0 - s) / (s - 1.0);
    sum += 0.5 * x.powf(-s);
    // Asymptotic tail: B_{2j}/(2j)! * (s)_{2j-1} * x^{-s-2j+1}.
    let mut pochhammer = s; // (s)_1
    let mut factorial = 2.0; // (2j)! at j=1
    for (j, b) in BERNOULLI.iter().enumerate() {
        let exp = -s - 2.0 * (j as f64 + 1.0) + 1.0;
        sum += b / factorial * pochhammer * x.powf(exp);
        // Advance (s)_{2j-1} -> (s)_{2j+1} and (2j)! -> (2j+2)!.
        pochhammer *= (s + 2.0 * j as f64 + 1.0) * (s + 2.0 * j as f64 + 2.0);
        factorial *= (2.0 * j as f64 + 3.0) * (2.0 * j as f64 + 4.0);
    }
    Ok(sum)
}

/// Riemann zeta on the real line (continued), `s != 1`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

/// Dirichlet L-function for the quadratic character modulo 3:
/// `L(s) = sum_{k>=0} (1/(3k+1)^s - 1/(3k+2)^s)`, continued via Hurwitz
/// zeta: `L(s) = 3^{-s} (zeta(s,1/3) - zeta(s,2/3))`.
pub fn dirichlet_l3(s: f64) -> Result<f64> {
    if s == 1.0 {
        // The Hurwitz poles cancel in the difference; the limit is
        // (psi(2/3) - psi(1/3))/3 = pi cot(pi/3)/3 = pi/(3 sqrt 3).
        return Ok(std::f64::consts::PI / (3.0 * 3f64.sqrt()));
    }
    Ok(3f64.powf(-s) * (hurwitz_zeta(s, 1.0 / 3.0)? - hurwitz_zeta(s, 2.0 / 3.0)?))
}

/// Epstein zeta function of the unit triangular lattice via the
/// factorization `zeta_L(s) = 6 zeta(s/2) L(s/2)`; pole at `s = 2`.
pub fn epstein_zeta_triangular(s: f64) -> Result<f64> {
    if s == 2.0 {
        return Err(Error::Pole(2.0));
    }
    Ok(6.0 * riemann_zeta(s / 2.0)? * dirichlet_l3(s / 2.0)?)
}

/// Conjectured second-order coefficient of the minimal Riesz s-energy:
/// `(sqrt(3)/2)^{s/2} zeta_L(s) / (4 pi)^{s/2}`, for `-2 < s < 4`,
/// `s != 0, 2`.
pub fn second_order_coefficient(s: f64) -> Result<f64> {
    if s == 0.0 || s == 2.0 {
        return Err(Error::Pole(s));
    }
    if !(-2.0..4.0).contains(&s) {
        return Err(Error::Degenerate(format!(
            "second-order coefficient defined for -2 < s < 4, got {s}"
        )));
    }
    let ratio = 3f64.sqrt() / (8.0 * std::f64::consts::PI);
    Ok(ratio.powf(s / 2.0) * epstein_zeta_triangular(s)?)
}
