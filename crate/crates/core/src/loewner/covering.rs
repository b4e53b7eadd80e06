//! Covering radial Loewner flow on the real line: d/dt u = cot((u - w(t))/2).
//!
//! Tracked points are boundary arguments; `exp(i u)` intertwines this flow
//! with the radial flow on the circle. Blow-up is declared when the distance
//! to the driver (mod 2 pi) falls below the slit-width cutoff.

use super::{blowup_cutoff, BlowUp, CoveringState, DrivingFunction};
use crate::numerics::trig::{cot2, wrap_pi};
use crate::{Error, Result};

/// Evolves real covering coordinates `v0` under the covering flow.
pub fn evolve(driver: &DrivingFunction, v0: &[f64]) -> Result<CoveringState> {
    let w0 = driver.values[0];
    for &v in v0 {
        if !v.is_finite() {
            return Err(Error::NonFinite("covering start point"));
        }
        if wrap_pi(v - w0).abs() < 1e-14 {
            return Err(Error::InvalidConfig(
                "covering start point coincides with driver mod 2 pi".into(),
            ));
        }
    }
    let ts = driver.grid.times();
    let mut paths = Vec::with_capacity(v0.len());
    let mut blowups = Vec::with_capacity(v0.len());
    for &v in v0 {
        let mut u = v;
        let mut path = vec![u];
        let mut blowup = None;
        'steps: for i in 1..ts.len() {
            let dt = ts[i] - ts[i - 1];
            let cutoff = blowup_cutoff(dt);
            let nsub = 4;
            let h = dt / nsub as f64;
            for s in 0..nsub {
                let t0 = ts[i - 1] + s as f64 * h;
                let wa = driver.value_at(t0);
                if wrap_pi(u - wa).abs() < cutoff {
                    blowup = Some(BlowUp { step: i, time: t0 });
                    break 'steps;
                }
                let wm = driver.value_at(t0 + 0.5 * h);
                let wb = driver.value_at(t0 + h);
                let k1 = cot2(u - wa);
                let k2 = cot2(u + 0.5 * h * k1 - wm);
                let k3 = cot2(u + 0.5 * h * k2 - wm);
                let k4 = cot2(u + h * k3 - wb);
                u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                if !u.is_finite() {
                    blowup = Some(BlowUp { step: i, time: t0 });
                    break 'steps;
                }
            }
            if wrap_pi(u - driver.value_at(ts[i])).abs() < cutoff {
                blowup = Some(BlowUp { step: i, time: ts[i] });
                break;
            }
            path.push(u);
        }
        paths.push(path);
        blowups.push(blowup);
    }
    Ok(CoveringState { paths, blowups })
}

/// Single-point, single-step advance used by samplers that couple the driver
/// SDE with passively evolved force points. RK4 with the driver linear on
/// `[0, dt]` from `w_a` to `w_b`.
pub fn step_point(u: f64, w_a: f64, w_b: f64, dt: f64) -> f64 {
    let wm = 0.5 * (w_a + w_b);
    let k1 = cot2(u - w_a);
    let k2 = cot2(u + 0.5 * dt * k1 - wm);
    let k3 = cot2(u + 0.5 * dt * k2 - wm);
    let k4 = cot2(u + dt * k3 - w_b);
    u + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn antipodal_point_is_stationary() {
        // cot((pi)/2... cot2(pi) = cot(pi/2) = 0, so the antipode of a constant
        // driver does not move.
        let d = DrivingFunction::constant(0.7, 1e-3, 1.0).unwrap();
        let st = evolve(&d, &[0.7 + std::f64::consts::PI]).unwrap();
        assert!(st.blowups[0].is_none());
        for u in &st.paths[0] {
            assert_abs_diff_eq!(*u, 0.7 + std::f64::consts::PI, epsilon = 1e-12);
        }
    }

    #[test]
    fn blowup_time_vanishes_near_driver() {
        // A linear driver chasing the point at speed 100 outruns the repulsion
        // (equilibrium gap 2/100), so the point is caught; the catch time
        // shrinks to zero with the initial gap.
        let grid = crate::loewner::TimeGrid::uniform(1e-4, 0.05).unwrap();
        let vals: Vec<f64> = grid.times().iter().map(|t| 100.0 * t).collect();
        let d = DrivingFunction::new(grid, vals).unwrap();
        let mut last = f64::INFINITY;
        for &eps in &[0.5, 0.2, 0.08] {
            let st = evolve(&d, &[eps]).unwrap();
            let b = st.blowups[0].expect("chased point must blow up");
            assert!(b.time < last, "eps={eps}: {} !< {last}", b.time);
            last = b.time;
        }
        assert!(last < 0.002);
    }
}
