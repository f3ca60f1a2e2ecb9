//! Projected gradient descent towards minimal-energy spherical
//! configurations, with Armijo backtracking and jittered restarts.
//!
//! For Riesz exponents `s < 0` the stored energy is the positive
//! distance-sum, so "minimization" flips sign and maximizes it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Configuration, Family};
use crate::energy::{discrete_energy, Kernel};
use crate::error::Error;
use crate::geom::UnitPoint;
use crate::parallel;
use crate::Result;

/// Settings for [`minimize`].
#[derive(Clone, Debug)]
pub struct OptimizerSettings {
    pub kernel: Kernel,
    pub max_iters: usize,
    /// Infinity-norm threshold on the tangential gradient; defaults to
    /// `1e-8 * N` when `None`.
    pub grad_tol: Option<f64>,
    pub initial_step: f64,
    pub shrink: f64,
    pub sufficient_decrease: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            kernel: Kernel::Log,
            max_iters: 2000,
            grad_tol: None,
            initial_step: 0.1,
            shrink: 0.5,
            sufficient_decrease: 1e-4,
            restarts: 3,
            seed: 0,
        }
    }
}

impl OptimizerSettings {
    fn validate(&self) -> Result<()> {
        self.kernel.validate()?;
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::Degenerate(format!(
                "backtracking shrink factor must lie in (0, 1), got {}",
                self.shrink
            )));
        }
        if self.grad_tol.is_some_and(|t| !(t > 0.0)) {
            return Err(Error::Degenerate("gradient tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Progress record of one optimization run.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct Trace {
    /// Energy after every accepted iterate, starting with the initial one.
    pub energies: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Final tangential gradient infinity-norm.
    pub grad_norm: f64,
    /// Index of the restart that produced the returned configuration.
    pub best_restart: usize,
}

/// Resumable snapshot of an optimization run.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct Checkpoint {
    pub points: Vec<UnitPoint>,
    pub kernel: String,
    pub trace: Trace,
}

impl Checkpoint {
    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Inconsistency(format!("checkpoint serialization: {e}")))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }
}

/// Tangential energy gradients (one 3-vector per point) of the unordered
/// pair sum: for Riesz `s`, `-s * sum (x_i - x_j)/|x_i - x_j|^{s+2}`;
/// for log, `-sum (x_i - x_j)/|x_i - x_j|^2`; each projected onto the
/// tangent plane at its point.
pub fn energy_gradient(config: &Configuration, kernel: Kernel) -> Result<Vec<[f64; 3]>> {
    kernel.validate()?;
    let pts = &config.points;
    let grads = parallel::map_indexed(pts.len(), |i| -> Result<[f64; 3]> {
        let p = pts[i];
        let mut g = [0.0f64; 3];
        for (j, &q) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            let d2 = crate::geom::chordal_distance(p, q).powi(2);
            if d2 == 0.0 {
                return Err(Error::InfiniteEnergy(i.min(j), i.max(j)));
            }
            let w = match kernel {
                Kernel::Riesz(s) => -s * d2.powf(-(s + 2.0) / 2.0),
                Kernel::Log => -1.0 / d2,
            };
            g[0] += w * (p.x - q.x);
            g[1] += w * (p.y - q.y);
            g[2] += w * (p.z - q.z);
        }
        // Remove the radial component.
        let r = g[0] * p.x + g[1] * p.y + g[2] * p.z;
        Ok([g[0] - r * p.x, g[1] - r * p.y, g[2] - r * p.z])
    });
    grads.into_iter().collect()
}

fn grad_inf_norm(g: &[[f64; 3]]) -> f64 {
    g.iter()
        .flat_map(|v| v.iter())
        .fold(0.0f64, |m, &x| m.max(x.abs()))
}

/// Signed objective: the quantity gradient descent decreases. Distance
/// sums (`s < 0`) are maximized, so their sign flips.
fn objective_sign(kernel: Kernel) -> f64 {
    match kernel {
        Kernel::Riesz(s) if s < 0.0 => -1.0,
        _ => 1.0,
    }
}

fn step_points(pts: &[UnitPoint], g: &[[f64; 3]], sign: f64, t: f64) -> Vec<UnitPoint> {
    pts.iter()
        .zip(g)
        .map(|(p, gi)| {
            UnitPoint::project(
                p.x - sign * t * gi[0],
                p.y - sign * t * gi[1],
                p.z - sign * t * gi[2],
            )
        })
        .collect()
}

fn jitter(pts: &[UnitPoint], rng: &mut ChaCha8Rng, sigma: f64) -> Vec<UnitPoint> {
    let mut gauss = || -> f64 {
        // Box-Muller.
        let u: f64 = rng.gen_range(f64::EPSILON..1.0);
        let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        (-2.0 * u.ln()).sqrt() * v.cos()
    };
    pts.iter()
        .map(|p| {
            let n = [gauss(), gauss(), gauss()];
            let r = n[0] * p.x + n[1] * p.y + n[2] * p.z;
            UnitPoint::project(
                p.x + sigma * (n[0] - r * p.x),
                p.y + sigma * (n[1] - r * p.y),
                p.z + sigma * (n[2] - r * p.z),
            )
        })
        .collect()
}

/// Runs projected gradient descent from `initial`, restarting with
/// tangentially jittered copies, and returns the best configuration
/// found together with its trace. The reported energies use the same
/// sign convention as [`discrete_energy`].
pub fn minimize(initial: &Configuration, settings: &OptimizerSettings) -> Result<(Configuration, Trace)> {
    settings.validate()?;
    let n = initial.len();
    if n < 2 {
        return Err(Error::InvalidCardinality(
            "optimizer needs >= 2 points".to_string(),
        ));
    }
    let sign = objective_sign(settings.kernel);
    let grad_tol = settings.grad_tol.unwrap_or(1e-8 * n as f64);
    let sigma = 0.5 / (n as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);

    let mut best: Option<(Vec<UnitPoint>, Trace)> = None;
    for restart in 0..settings.restarts.max(1) {
        let start = if restart == 0 {
            initial.points.clone()
        } else {
            jitter(&initial.points, &mut rng, sigma)
        };
        let (pts, trace) = descend(start, settings, sign, grad_tol, restart)?;
        let better = match &best {
            None => true,
            Some((_, t)) => {
                let cur = trace.energies.last().copied().unwrap_or(f64::INFINITY);
                let old = t.energies.last().copied().unwrap_or(f64::INFINITY);
                sign * cur < sign * old
            }
        };
        if better {
            best = Some((pts, trace));
        }
    }
    let (pts, trace) = best.expect("at least one restart ran");
    let mut out = Configuration::new(pts, Family::MinimalEnergy).with_param("n", n as i64);
    out.seed = Some(settings.seed);
    Ok((out, trace))
}

fn descend(
    mut pts: Vec<UnitPoint>,
    settings: &OptimizerSettings,
    sign: f64,
    grad_tol: f64,
    restart: usize,
) -> Result<(Vec<UnitPoint>, Trace)> {
    let family = Family::MinimalEnergy;
    let as_config = |p: &[UnitPoint]| Configuration::new(p.to_vec(), family);
    let mut energy = discrete_energy(&as_config(&pts), settings.kernel)?;
    let mut energies = vec![energy];
    let mut step = settings.initial_step;
    let mut converged = false;
    let mut grad_norm = f64::INFINITY;
    let mut iterations = 0;

    for iter in 0..settings.max_iters {
        iterations = iter;
        let g = energy_gradient(&as_config(&pts), settings.kernel)?;
        grad_norm = grad_inf_norm(&g);
        if grad_norm < grad_tol {
            converged = true;
            break;
        }
        let g_sq: f64 = g.iter().map(|v| v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sum();
        // Armijo backtracking on the signed objective.
        let mut t = step;
        let mut accepted = false;
        for _ in 0..60 {
            let trial = step_points(&pts, &g, sign, t);
            let e = discrete_energy(&as_config(&trial), settings.kernel)?;
            if sign * e <= sign * energy - settings.sufficient_decrease * t * g_sq {
                pts = trial;
                energy = e;
                energies.push(e);
                // Let the step grow back after successes.
                step = (t * 2.0).min(settings.initial_step.max(1.0));
                accepted = true;
                break;
            }
            t *= settings.shrink;
        }
        if !accepted {
            // No further descent possible at floating-point resolution.
            break;
        }
    }
    Ok((
        pts,
        Trace {
            energies,
            iterations,
            converged,
            grad_norm,
            best_restart: restart,
        },
    ))
}
