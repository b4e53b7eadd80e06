//! Exact two-curve state evaluation from a pair of driver paths.
//!
//! The state functions on the time region are path functionals; since the
//! region is a lower set, the state at `(t1, t2)` can be computed along the
//! staircase `(0,0) -> (t1,0) -> (t1,t2)`. The first leg is the plain
//! covering flow of curve 1 (its own tip data stay trivial). On the second
//! leg curve 2 grows through elementary covering slit maps in the joint
//! frame; every passive quantity rides along by jet composition, and the
//! moving tip's value and derivative jet are refreshed after each step by
//! composing its own inverse solo maps with the full joint stack. This keeps
//! the tip's derivative hierarchy exact without evolving higher-derivative
//! ODEs.

use super::state::EnsembleState;
use super::COLLISION_CUTOFF;
use crate::numerics::jets::{CoverSlit, Jet3, C64};
use crate::rng::PathRng;
use crate::{Error, Result};

/// A pair of independent Brownian driver paths on a common uniform step.
#[derive(Debug, Clone)]
pub struct TwoCurvePaths {
    pub kappa: f64,
    pub w1: f64,
    pub v1: f64,
    pub w2: f64,
    pub v2: f64,
    pub dt: f64,
    /// Driver increments of curve 1 (`sqrt(kappa) dB`), one per step.
    pub incr1: Vec<f64>,
    pub incr2: Vec<f64>,
}

impl TwoCurvePaths {
    /// Samples both drivers from streams keyed by `(seed, 2*path + j)`.
    pub fn sample(
        kappa: f64,
        angles: (f64, f64, f64, f64),
        dt: f64,
        horizon: f64,
        seed: u64,
        path: u64,
    ) -> Result<Self> {
        if !(kappa > 0.0) || !(dt > 0.0) || !(horizon > 0.0) {
            return Err(Error::InvalidConfig("kappa, dt, horizon must be positive".into()));
        }
        let n = (horizon / dt).round() as usize;
        let scale = (kappa * dt).sqrt();
        let mut r1 = PathRng::new(seed, 2 * path);
        let mut r2 = PathRng::new(seed, 2 * path + 1);
        Ok(TwoCurvePaths {
            kappa,
            w1: angles.0,
            v1: angles.1,
            w2: angles.2,
            v2: angles.3,
            dt,
            incr1: (0..n).map(|_| scale * r1.gaussian()).collect(),
            incr2: (0..n).map(|_| scale * r2.gaussian()).collect(),
        })
    }

    /// First step index at which the driver has moved `window` away from its
    /// start (a crosscut-type stopping time measurable from this curve only),
    /// capped at the path length.
    pub fn stop_index(&self, j: u8, window: f64) -> usize {
        let incr = if j == 1 { &self.incr1 } else { &self.incr2 };
        let mut sum = 0.0;
        for (i, d) in incr.iter().enumerate() {
            sum += d;
            if sum.abs() >= window {
                return i + 1;
            }
        }
        incr.len()
    }

    fn driver_value(&self, j: u8, i: usize) -> f64 {
        let (start, incr) = if j == 1 { (self.w1, &self.incr1) } else { (self.w2, &self.incr2) };
        start + incr[..i].iter().sum::<f64>()
    }
}

/// Result of a two-curve evaluation.
#[derive(Debug, Clone)]
pub struct TwoCurveRun {
    pub state: EnsembleState,
    /// True if a collision froze the run before the requested times.
    pub collided: bool,
    /// Largest imaginary part seen on a refreshed tip (discretization gauge).
    pub tip_im_max: f64,
}

fn schwarzian(jet: &Jet3) -> f64 {
    let d1 = jet.f[1].re;
    let d2 = jet.f[2].re;
    let d3 = jet.f[3].re;
    d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1)
}

fn gaps_ok(w1: f64, v1: f64, w2: f64, v2: f64) -> bool {
    let tau = std::f64::consts::TAU;
    w1 - v1 > COLLISION_CUTOFF
        && v1 - w2 > COLLISION_CUTOFF
        && w2 - v2 > COLLISION_CUTOFF
        && v2 - (w1 - tau) > COLLISION_CUTOFF
}

/// Evaluates the ensemble state at `(n1*dt, n2*dt)` for the given paths.
pub fn ensemble_at(paths: &TwoCurvePaths, n1: usize, n2: usize) -> Result<TwoCurveRun> {
    if n1 > paths.incr1.len() || n2 > paths.incr2.len() {
        return Err(Error::InvalidConfig("requested times beyond the sampled paths".into()));
    }
    let dt = paths.dt;
    let mut collided = false;
    let mut tip_im_max = 0.0_f64;

    // Leg 1: grow curve 1 alone. Passive jets in curve 1's own frame.
    let mut f1_maps: Vec<CoverSlit> = Vec::with_capacity(n1);
    let mut w2_jet = Jet3::var(C64::new(paths.w2, 0.0));
    let mut v1_jet = Jet3::var(C64::new(paths.v1, 0.0));
    let mut v2_jet = Jet3::var(C64::new(paths.v2, 0.0));
    let mut reached1 = 0;
    for i in 0..n1 {
        let center = paths.driver_value(1, i + 1);
        if !gaps_ok(center, v1_jet.f[0].re, w2_jet.f[0].re, v2_jet.f[0].re) {
            collided = true;
            break;
        }
        let m = CoverSlit::new(center, dt);
        w2_jet = m.forward_jet(&w2_jet);
        v1_jet = m.forward_jet(&v1_jet);
        v2_jet = m.forward_jet(&v2_jet);
        if !(w2_jet.is_finite() && v1_jet.is_finite() && v2_jet.is_finite()) {
            return Err(Error::NonFinite("two-curve leg 1 jet"));
        }
        f1_maps.push(m);
        reached1 = i + 1;
    }
    let t1 = reached1 as f64 * dt;
    let w1_val = paths.driver_value(1, reached1);

    // Tip 1 becomes passive with a trivial jet in the (t1, 0) frame.
    let mut w1_jet = Jet3::var(C64::new(w1_val, 0.0));
    let mut m_cap = t1;
    let mut log_i = 0.0;

    // Leg 2: grow curve 2; solo maps in its own coordinates, image maps in
    // the joint frame.
    let mut f2_maps: Vec<CoverSlit> = Vec::with_capacity(n2);
    let mut e_maps: Vec<CoverSlit> = Vec::with_capacity(n2);
    let mut tip2 = w2_jet;
    let mut ws2 = schwarzian(&tip2);
    let mut reached2 = 0;
    if !collided {
        for i in 0..n2 {
            let w21 = tip2.f[1].re;
            if w21 <= 0.0 || !w21.is_finite() {
                return Err(Error::Numerical("tip derivative degenerated".into()));
            }
            let dw = paths.incr2[i];
            let cap = w21 * w21 * dt;
            let e_center = tip2.f[0].re + w21 * dw;
            if !gaps_ok(w1_jet.f[0].re, v1_jet.f[0].re, e_center, v2_jet.f[0].re) {
                collided = true;
                break;
            }
            let e = CoverSlit::new(e_center, cap);
            w1_jet = e.forward_jet(&w1_jet);
            v1_jet = e.forward_jet(&v1_jet);
            v2_jet = e.forward_jet(&v2_jet);
            f2_maps.push(CoverSlit::new(paths.driver_value(2, i + 1), dt));
            e_maps.push(e);
            // Refresh the moving tip by full composition:
            // own inverse solo maps (newest first), then the joint stack.
            let mut jet = Jet3::var(C64::new(paths.driver_value(2, i + 1), 0.0));
            for m in f2_maps.iter().rev() {
                jet = m.inverse_jet(&jet);
            }
            for m in &f1_maps {
                jet = m.forward_jet(&jet);
            }
            for m in &e_maps {
                jet = m.forward_jet(&jet);
            }
            if !jet.is_finite() {
                return Err(Error::NonFinite("two-curve tip refresh"));
            }
            tip_im_max = tip_im_max.max(jet.f[0].im.abs());
            let ws2_new = schwarzian(&jet);
            log_i += 0.5 * (ws2 + ws2_new) * dt;
            ws2 = ws2_new;
            tip2 = jet;
            m_cap += cap;
            reached2 = i + 1;
        }
    }
    let t2 = reached2 as f64 * dt;

    let state = EnsembleState {
        t1,
        t2,
        w1: w1_jet.f[0].re,
        w2: tip2.f[0].re,
        v1: v1_jet.f[0].re,
        v2: v2_jet.f[0].re,
        w11: w1_jet.f[1].re,
        w21: tip2.f[1].re,
        v11: v1_jet.f[1].re,
        v21: v2_jet.f[1].re,
        m_cap,
        log_i,
        ws1: schwarzian(&w1_jet),
        ws2,
        in_region: true,
    };
    Ok(TwoCurveRun { state, collided, tip_im_max })
}
