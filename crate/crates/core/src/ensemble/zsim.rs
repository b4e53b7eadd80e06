//! Monte Carlo simulation of the angle-gap diffusion, under the plain (star)
//! law or reweighted to the conditioned (c) law.

use super::ucurve::step_z;
use crate::green::{alpha0, tilde_g_u};
use crate::rng::PathRng;
use crate::{Error, Result};
use rayon::prelude::*;

/// Sampling law for the gap diffusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZLaw {
    /// Unconditioned diffusion (no killing).
    Star,
    /// Conditioned law realized as star-law samples with importance weights
    /// `e^{-alpha0 t} G_u(z0) / G_u(Z_t)`.
    C,
}

#[derive(Debug, Clone, Copy)]
pub struct ZSample {
    pub z1: f64,
    pub z2: f64,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct ZSimReport {
    pub samples: Vec<ZSample>,
    /// Paths on which at least one reflecting substep fired.
    pub reflected_paths: u64,
}

/// Simulates `n_paths` of the gap diffusion from `z0` to `t_end` with Euler
/// step `dt`; deterministic in `(seed, path index)` regardless of thread
/// count.
pub fn simulate_z(
    kappa: f64,
    z0: (f64, f64),
    t_end: f64,
    dt: f64,
    n_paths: u64,
    law: ZLaw,
    seed: u64,
) -> Result<ZSimReport> {
    let pi = std::f64::consts::PI;
    if !(z0.0 > 0.0 && z0.0 < pi && z0.1 > 0.0 && z0.1 < pi) {
        return Err(Error::InvalidConfig("start must lie in (0, pi)^2".into()));
    }
    if !(t_end > 0.0 && dt > 0.0) {
        return Err(Error::InvalidConfig("t_end and dt must be positive".into()));
    }
    let n_steps = (t_end / dt).round().max(1.0) as usize;
    let h = t_end / n_steps as f64;
    let g0 = if law == ZLaw::C { tilde_g_u(kappa, z0.0, z0.1)? } else { 1.0 };
    let results: Vec<(ZSample, bool)> = (0..n_paths)
        .into_par_iter()
        .map(|p| {
            let mut rng = PathRng::new(seed, p);
            let mut z = z0;
            let mut reflected = false;
            for _ in 0..n_steps {
                let noise = (rng.gaussian(), rng.gaussian());
                let (zn, r) = step_z(kappa, z, h, noise);
                reflected |= r;
                z = zn;
            }
            let weight = match law {
                ZLaw::Star => 1.0,
                ZLaw::C => {
                    (-alpha0(kappa) * t_end).exp() * g0
                        / tilde_g_u(kappa, z.0, z.1).unwrap_or(f64::INFINITY)
                }
            };
            (ZSample { z1: z.0, z2: z.1, weight }, reflected)
        })
        .collect();
    let reflected_paths = results.iter().filter(|(_, r)| *r).count() as u64;
    Ok(ZSimReport { samples: results.into_iter().map(|(s, _)| s).collect(), reflected_paths })
}

/// Runs one path and visits the state at each checkpoint time (used by the
/// survival experiment). Checkpoints must be increasing multiples of `dt`.
pub fn run_path_with_checkpoints<F: FnMut(usize, (f64, f64))>(
    kappa: f64,
    z0: (f64, f64),
    checkpoints: &[f64],
    dt: f64,
    seed: u64,
    path: u64,
    mut visit: F,
) -> bool {
    let mut rng = PathRng::new(seed, path);
    let mut z = z0;
    let mut t = 0.0;
    let mut reflected = false;
    for (ci, &tc) in checkpoints.iter().enumerate() {
        let n = ((tc - t) / dt).round().max(0.0) as usize;
        let h = if n > 0 { (tc - t) / n as f64 } else { 0.0 };
        for _ in 0..n {
            let noise = (rng.gaussian(), rng.gaussian());
            let (zn, r) = step_z(kappa, z, h, noise);
            reflected |= r;
            z = zn;
        }
        t = tc;
        visit(ci, z);
    }
    reflected
}
