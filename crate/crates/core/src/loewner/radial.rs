//! Radial Loewner equation in the unit disk: forward evolution and traces.
//!
//! Forward flow: dg/dt = g (e^{iw} + g) / (e^{iw} - g), g_0 = id. Traces are
//! computed in covering coordinates by backward composition of elementary
//! covering slit maps and mapped to the disk at the end.

use super::{blowup_cutoff, BlowUp, DrivingFunction, PointFlow, RadialTrace};
use crate::numerics::jets::CoverSlit;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

fn rhs(g: Complex64, w: f64) -> Complex64 {
    let e = Complex64::from_polar(1.0, w);
    g * (e + g) / (e - g)
}

/// Evolves points of the closed disk under the radial flow. `g_t(0) = 0` is
/// preserved exactly.
pub fn evolve(driver: &DrivingFunction, points: &[Complex64]) -> Result<Vec<PointFlow>> {
    let w0 = driver.values[0];
    for z in points {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidConfig(format!("point {z} outside the closed disk")));
        }
        if (z - Complex64::from_polar(1.0, w0)).norm() < 1e-14 {
            return Err(Error::InvalidConfig("start point coincides with driver".into()));
        }
    }
    let ts = driver.grid.times();
    Ok(points
        .iter()
        .map(|&z0| {
            if z0.norm() == 0.0 {
                // Fixed point of the flow.
                return PointFlow { values: vec![Complex64::new(0.0, 0.0); ts.len()], blowup: None };
            }
            let mut g = z0;
            let mut values = vec![g];
            let mut blowup = None;
            'steps: for i in 1..ts.len() {
                let dt = ts[i] - ts[i - 1];
                let cutoff = blowup_cutoff(dt);
                let nsub = 4;
                let h = dt / nsub as f64;
                for s in 0..nsub {
                    let t0 = ts[i - 1] + s as f64 * h;
                    let wa = driver.value_at(t0);
                    let wm = driver.value_at(t0 + 0.5 * h);
                    let wb = driver.value_at(t0 + h);
                    if (g - Complex64::from_polar(1.0, wa)).norm() < cutoff {
                        blowup = Some(BlowUp { step: i, time: t0 });
                        break 'steps;
                    }
                    let k1 = rhs(g, wa);
                    let k2 = rhs(g + 0.5 * h * k1, wm);
                    let k3 = rhs(g + 0.5 * h * k2, wm);
                    let k4 = rhs(g + h * k3, wb);
                    g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                    if !g.re.is_finite() || !g.im.is_finite() {
                        blowup = Some(BlowUp { step: i, time: t0 });
                        break 'steps;
                    }
                }
                if (g - Complex64::from_polar(1.0, driver.value_at(ts[i]))).norm() < cutoff {
                    blowup = Some(BlowUp { step: i, time: ts[i] });
                    break;
                }
                values.push(g);
            }
            PointFlow { values, blowup }
        })
        .collect())
}

/// Joint evolution of `(g_t(z), d/dz g_t(z))` for test oracles; the derivative
/// at 0 must track `e^t` exactly.
pub fn evolve_with_deriv(
    driver: &DrivingFunction,
    z0: Complex64,
) -> Result<(Complex64, Complex64)> {
    let ts = driver.grid.times();
    let mut g = z0;
    let mut dg = Complex64::new(1.0, 0.0);
    for i in 1..ts.len() {
        let dt = ts[i] - ts[i - 1];
        let nsub = 4;
        let h = dt / nsub as f64;
        for s in 0..nsub {
            let t0 = ts[i - 1] + s as f64 * h;
            let f = |g: Complex64, dg: Complex64, w: f64| {
                let e = Complex64::from_polar(1.0, w);
                let v = (e + g) / (e - g);
                let dv = 2.0 * e / ((e - g) * (e - g));
                (g * v, dg * (v + g * dv))
            };
            let wa = driver.value_at(t0);
            let wm = driver.value_at(t0 + 0.5 * h);
            let wb = driver.value_at(t0 + h);
            let (k1, l1) = f(g, dg, wa);
            let (k2, l2) = f(g + 0.5 * h * k1, dg + 0.5 * h * l1, wm);
            let (k3, l3) = f(g + 0.5 * h * k2, dg + 0.5 * h * l2, wm);
            let (k4, l4) = f(g + h * k3, dg + h * l3, wb);
            g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            dg += h / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
        }
    }
    Ok((g, dg))
}

/// Elementary covering slit decomposition of the radial hull.
pub fn slit_maps(driver: &DrivingFunction) -> Vec<CoverSlit> {
    let ts = driver.grid.times();
    (1..ts.len())
        .filter_map(|i| {
            let cap = ts[i] - ts[i - 1];
            if cap > 0.0 {
                Some(CoverSlit::new(driver.values[i], cap))
            } else {
                None
            }
        })
        .collect()
}

/// Radial Loewner trace: tip positions at every grid time, in the closed disk.
pub fn trace(driver: &DrivingFunction) -> Result<RadialTrace> {
    let maps = slit_maps(driver);
    let n = maps.len();
    let start = Complex64::from_polar(1.0, driver.values[0]);
    let mut points = vec![start; n + 1];
    let computed: Vec<(usize, Complex64)> = (1..=n)
        .into_par_iter()
        .map(|i| {
            let mut u = maps[i - 1].tip();
            for j in (0..i - 1).rev() {
                u = maps[j].inverse(u);
            }
            (i, u)
        })
        .collect();
    for (i, u) in computed {
        // Covering coordinate -> disk; clamp to the closed disk.
        let z = Complex64::new(0.0, 1.0) * u;
        let p = z.exp();
        points[i] = if p.norm() > 1.0 { p / p.norm() } else { p };
    }
    Ok(RadialTrace { points, grid: driver.grid.clone(), driver: driver.clone() })
}
