//! Driving-function samplers: chordal SLE, radial SLE with force points, and
//! the disk chord between two boundary points realized as a radial
//! SLE_kappa(kappa-6, 0, 0) with passive arc-endpoint force points.

use crate::loewner::{blowup_cutoff, covering, radial, DrivingFunction, RadialTrace, TimeGrid};
use crate::numerics::trig::{cot2, wrap_pi};
use crate::rng::PathRng;
use crate::{Error, Result};

/// Base sampler configuration.
#[derive(Debug, Clone, Copy)]
pub struct SleConfig {
    pub kappa: f64,
    pub seed: u64,
    /// Capacity step.
    pub dt: f64,
    /// Maximum capacity time.
    pub horizon: f64,
}

impl SleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa >= 0.0 && self.kappa <= 8.0) {
            return Err(Error::InvalidConfig(format!("kappa must be in [0, 8], got {}", self.kappa)));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidConfig("dt must be positive".into()));
        }
        if !(self.horizon >= 0.0) || !self.horizon.is_finite() {
            return Err(Error::InvalidConfig("horizon must be nonnegative".into()));
        }
        Ok(())
    }
}

/// A marked boundary point with its force weight.
#[derive(Debug, Clone, Copy)]
pub struct ForcePoint {
    /// Boundary argument (covering coordinate).
    pub v: f64,
    pub rho: f64,
}

/// Radial sampler configuration with force points.
#[derive(Debug, Clone)]
pub struct RadialRhoConfig {
    pub base: SleConfig,
    /// Start argument of the curve.
    pub w0: f64,
    pub forces: Vec<ForcePoint>,
}

impl RadialRhoConfig {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        for f in &self.forces {
            if wrap_pi(f.v - self.w0).abs() < 1e-12 {
                return Err(Error::InvalidConfig("force point coincides with start".into()));
            }
        }
        Ok(())
    }
}

/// Why a radial sample stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Horizon,
    /// Index of the force point whose covering coordinate collided with the
    /// driver (the curve separated the origin from that point).
    Separation(usize),
    /// Adaptive substepping exhausted near a drift singularity.
    DriftOverflow,
}

/// Driver of a radial SLE_kappa(rho) sample together with the force-point
/// covering paths and the stop report.
#[derive(Debug, Clone)]
pub struct RadialRhoSample {
    pub driver: DrivingFunction,
    /// Final covering coordinates of the force points (continuous lifts).
    pub force_paths: Vec<Vec<f64>>,
    pub stop: StopReason,
}

/// Chordal SLE driving function `sqrt(kappa) B(t)` sampled on a uniform grid,
/// fully determined by `(seed, path_index)`.
pub fn sample_chordal_driver(cfg: &SleConfig, path_index: u64) -> Result<DrivingFunction> {
    cfg.validate()?;
    let grid = TimeGrid::uniform(cfg.dt, cfg.horizon)?;
    let mut rng = PathRng::new(cfg.seed, path_index);
    let scale = (cfg.kappa * cfg.dt).sqrt();
    let mut values = Vec::with_capacity(grid.len());
    let mut w = 0.0;
    values.push(w);
    for i in 1..grid.len() {
        let step = grid.step(i);
        // Non-uniform tail steps keep variance kappa * dt exact.
        let s = if (step - cfg.dt).abs() < 1e-15 { scale } else { (cfg.kappa * step).sqrt() };
        w += s * rng.gaussian();
        values.push(w);
    }
    DrivingFunction::new(grid, values)
}

/// Euler-Maruyama sample of the radial SLE_kappa(rho) driver
/// `dw = sqrt(kappa) dB + sum_j rho_j/2 cot2(w - g~_t(v_j)) dt`
/// coupled with the covering flow of the force points. Stops at the horizon
/// or at the first force-point separation, whichever comes first.
pub fn sample_radial_rho_driver(cfg: &RadialRhoConfig, path_index: u64) -> Result<RadialRhoSample> {
    cfg.validate()?;
    let mut rng = PathRng::new(cfg.base.seed, path_index);
    sample_radial_rho_driver_with(cfg, &mut rng, None)
}

/// Same as [`sample_radial_rho_driver`] but with caller-controlled randomness
/// and an optional per-step spatial refinement rule (used by the cut-point
/// pipeline to refine capacity steps near the observation point).
pub fn sample_radial_rho_driver_with(
    cfg: &RadialRhoConfig,
    rng: &mut PathRng,
    step_control: Option<&dyn Fn(f64, &[f64]) -> f64>,
) -> Result<RadialRhoSample> {
    cfg.validate()?;
    let kappa = cfg.base.kappa;
    let mut t = 0.0;
    let mut w = cfg.w0;
    let mut forces: Vec<f64> = cfg.forces.iter().map(|f| f.v).collect();
    // Keep continuous lifts with the driver: shift each force point by 2 pi
    // so it lies within (w0, w0 + 2 pi).
    for u in &mut forces {
        while *u <= cfg.w0 {
            *u += std::f64::consts::TAU;
        }
        while *u > cfg.w0 + std::f64::consts::TAU {
            *u -= std::f64::consts::TAU;
        }
    }
    let mut times = vec![0.0];
    let mut values = vec![w];
    let mut force_paths: Vec<Vec<f64>> = forces.iter().map(|&u| vec![u]).collect();
    let mut stop = StopReason::Horizon;

    'outer: while t < cfg.base.horizon - 1e-15 {
        let mut dt = cfg.base.dt.min(cfg.base.horizon - t);
        if let Some(ctrl) = step_control {
            dt = dt.min(ctrl(t, &values)).max(1e-12);
        }
        // Adaptive substepping: halve dt while the drift would dominate the
        // Gaussian step, up to 20 times, then stop with a reason.
        let mut halvings = 0;
        loop {
            let drift: f64 = cfg
                .forces
                .iter()
                .zip(&forces)
                .map(|(f, &u)| 0.5 * f.rho * cot2(w - u))
                .sum();
            if drift.abs() * dt <= 0.1 * (kappa * dt).sqrt() || kappa == 0.0 {
                break;
            }
            if halvings >= 20 {
                stop = StopReason::DriftOverflow;
                break 'outer;
            }
            dt *= 0.5;
            halvings += 1;
        }
        let drift: f64 = cfg
            .forces
            .iter()
            .zip(&forces)
            .map(|(f, &u)| 0.5 * f.rho * cot2(w - u))
            .sum();
        let w_new = w + (kappa * dt).sqrt() * rng.gaussian() + drift * dt;
        if !w_new.is_finite() {
            stop = StopReason::DriftOverflow;
            break;
        }
        // Force points ride passively on the covering flow.
        let cutoff = blowup_cutoff(dt);
        for (j, u) in forces.iter_mut().enumerate() {
            let nu = covering::step_point(*u, w, w_new, dt);
            if !nu.is_finite() || wrap_pi(nu - w_new).abs() < cutoff {
                stop = StopReason::Separation(j);
                break 'outer;
            }
            *u = nu;
        }
        t += dt;
        w = w_new;
        times.push(t);
        values.push(w);
        for (path, &u) in force_paths.iter_mut().zip(forces.iter()) {
            path.push(u);
        }
    }
    let grid = TimeGrid::new(times)?;
    let driver = DrivingFunction::new(grid, values)?;
    Ok(RadialRhoSample { driver, force_paths, stop })
}

/// Disk chord sampler: a chordal SLE_kappa in the disk from `e^{i a1}` to
/// `e^{i a2}`, radially parametrized, realized as a radial
/// SLE_kappa(kappa - 6, 0, 0) started at `a1` with force points `a2` and the
/// two arc endpoints, stopped at the given capacity horizon or at the first
/// separation event.
pub fn sample_disk_chord(
    kappa: f64,
    a1: f64,
    a2: f64,
    arc_endpoints: (f64, f64),
    base: &SleConfig,
    path_index: u64,
) -> Result<(RadialTrace, StopReason)> {
    let mut rng = PathRng::new(base.seed, path_index);
    sample_disk_chord_with(kappa, a1, a2, arc_endpoints, base, &mut rng, None)
}

/// [`sample_disk_chord`] with caller-controlled randomness and step control.
pub fn sample_disk_chord_with(
    kappa: f64,
    a1: f64,
    a2: f64,
    arc_endpoints: (f64, f64),
    base: &SleConfig,
    rng: &mut PathRng,
    step_control: Option<&dyn Fn(f64, &[f64]) -> f64>,
) -> Result<(RadialTrace, StopReason)> {
    if wrap_pi(a1 - a2).abs() < 1e-12 {
        return Err(Error::InvalidConfig("chord endpoints coincide".into()));
    }
    let cfg = RadialRhoConfig {
        base: SleConfig { kappa, ..*base },
        w0: a1,
        forces: vec![
            ForcePoint { v: a2, rho: kappa - 6.0 },
            ForcePoint { v: arc_endpoints.0, rho: 0.0 },
            ForcePoint { v: arc_endpoints.1, rho: 0.0 },
        ],
    };
    let sample = sample_radial_rho_driver_with(&cfg, rng, step_control)?;
    let trace = radial::trace(&sample.driver)?;
    Ok((trace, sample.stop))
}
