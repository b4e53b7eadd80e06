//! Product martingale observables of the ensemble and their ratio.
//!
//! With both force values equal to `kappa - 4`, the mark-derivative exponent
//! `rho (rho + 4 - kappa) / (4 kappa)` vanishes identically; it is kept in the
//! formula for clarity.

use super::EnsembleState;
use crate::green::{alpha0, tilde_g, BoundaryConfig};
use crate::numerics::trig::sin2;
use crate::{Error, Result};

/// Boundary scaling exponent `b = (6 - kappa) / (2 kappa)`.
pub fn b_exponent(kappa: f64) -> f64 {
    (6.0 - kappa) / (2.0 * kappa)
}

/// Central charge `c = (3 kappa - 8)(6 - kappa) / (2 kappa)`.
pub fn c_charge(kappa: f64) -> f64 {
    (3.0 * kappa - 8.0) * (6.0 - kappa) / (2.0 * kappa)
}

fn log_sin2_checked(x: f64, what: &'static str) -> Result<f64> {
    let s = sin2(x).abs();
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::Numerical(format!("degenerate factor |sin2| in {what} (gap {x})")));
    }
    Ok(s.ln())
}

/// Shared factors `e^{(b/6) excess} (W11 W21)^b I^{-c/6}` in log form.
fn log_common(state: &EnsembleState, kappa: f64) -> Result<f64> {
    let b = b_exponent(kappa);
    let c = c_charge(kappa);
    if state.w11 <= 0.0 || state.w21 <= 0.0 {
        return Err(Error::Numerical("tip derivative not positive".into()));
    }
    Ok(b / 6.0 * state.excess_cap() + b * (state.w11.ln() + state.w21.ln()) - c / 6.0 * state.log_i)
}

/// Star-coupling martingale (force values `kappa - 4` at both marks).
pub fn mart_mstar(state: &EnsembleState, kappa: f64) -> Result<f64> {
    if !state.in_region {
        return Err(Error::InvalidConfig("state left the time region".into()));
    }
    let rho = kappa - 4.0;
    let rho_sum = 2.0 * rho;
    let mut log_m = (rho_sum + 2.0) * (rho_sum + 6.0) / (8.0 * kappa) * state.m_cap;
    log_m += log_common(state, kappa)?;
    log_m += 2.0 / kappa * log_sin2_checked(state.w1 - state.w2, "mstar W1-W2")?;
    log_m += rho * rho / (2.0 * kappa) * log_sin2_checked(state.v1 - state.v2, "mstar V1-V2")?;
    let dexp = rho * (rho + 4.0 - kappa) / (4.0 * kappa);
    if state.v11 <= 0.0 || state.v21 <= 0.0 {
        return Err(Error::Numerical("mark derivative not positive".into()));
    }
    log_m += dexp * (state.v11.ln() + state.v21.ln());
    for (w, name) in [(state.w1, "mstar W1-V"), (state.w2, "mstar W2-V")] {
        for v in [state.v1, state.v2] {
            log_m += rho / kappa * log_sin2_checked(w - v, name)?;
        }
    }
    if !log_m.is_finite() {
        return Err(Error::NonFinite("mart_mstar"));
    }
    Ok(log_m.exp())
}

/// Chordal-coupling martingale.
pub fn mart_mc(state: &EnsembleState, kappa: f64) -> Result<f64> {
    if !state.in_region {
        return Err(Error::InvalidConfig("state left the time region".into()));
    }
    let mut log_m = (kappa - 6.0) * (kappa - 2.0) / (8.0 * kappa) * state.m_cap;
    log_m += log_common(state, kappa)?;
    log_m += (kappa - 6.0) / kappa * log_sin2_checked(state.w1 - state.w2, "mc W1-W2")?;
    if !log_m.is_finite() {
        return Err(Error::NonFinite("mart_mc"));
    }
    Ok(log_m.exp())
}

/// Radon-Nikodym ratio of the two couplings:
/// `M_c / M_* = e^{-alpha0 m_cap} / tilde_g(W1, V1, W2, V2)`.
pub fn rn_deriv(state: &EnsembleState, kappa: f64) -> Result<f64> {
    if !state.in_region {
        return Err(Error::InvalidConfig("state left the time region".into()));
    }
    let cfg = BoundaryConfig::new(state.w1, state.v1, state.w2, state.v2)?;
    Ok((-alpha0(kappa) * state.m_cap).exp() / tilde_g(kappa, &cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::state::{init_ensemble, step_direction};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    #[test]
    fn kappa_six_kills_b_and_c() {
        assert_eq!(b_exponent(6.0), 0.0);
        assert_eq!(c_charge(6.0), 0.0);
    }

    #[test]
    fn initial_mstar_at_kappa_six_is_sine_product() {
        let s = init_ensemble(1.5 * PI, PI, 0.5 * PI, 0.0).unwrap();
        let m = mart_mstar(&s, 6.0).unwrap();
        // |sin2(w1-w2)|^{1/3} * prod |sin2(wj-vs)|^{1/3} * |sin2(v1-v2)|^{1/3}
        let expect = sin2(PI).abs().powf(1.0 / 3.0)
            * sin2(PI).abs().powf(1.0 / 3.0)
            * (sin2(0.5 * PI).abs().powi(4)).powf(1.0 / 3.0);
        assert_relative_eq!(m, expect, max_relative = 1e-12);
    }

    #[test]
    fn initial_mc_values() {
        // At t = 0 all derivative and capacity factors are 1, so
        // M_c = |sin2(w1-w2)|^{(kappa-6)/kappa}; at kappa = 6 this is 1.
        let s = init_ensemble(1.5 * PI, PI, 0.5 * PI, 0.0).unwrap();
        assert_relative_eq!(mart_mc(&s, 6.0).unwrap(), 1.0, max_relative = 1e-14);
        let m5 = mart_mc(&s, 5.0).unwrap();
        assert_relative_eq!(m5, sin2(PI).abs().powf(-1.0 / 5.0), max_relative = 1e-12);
        assert_abs_diff_eq!(m5, 1.0, epsilon = 1e-12); // sin(pi/2) = 1
    }

    #[test]
    fn initial_rn_is_inverse_green_factor() {
        let s = init_ensemble(1.5 * PI, PI, 0.5 * PI, 0.0).unwrap();
        let r = rn_deriv(&s, 6.0).unwrap();
        assert_relative_eq!(r, 2f64.powf(2.0 / 3.0), max_relative = 1e-12);
        assert_relative_eq!(r, 1.587, max_relative = 1e-3);
    }

    #[test]
    fn rotation_invariance_of_initial_mstar() {
        let s = init_ensemble(1.5 * PI, PI, 0.5 * PI, 0.0).unwrap();
        let r = init_ensemble(1.5 * PI + 0.8, PI + 0.8, 0.5 * PI + 0.8, 0.8).unwrap();
        assert_relative_eq!(
            mart_mstar(&s, 5.5).unwrap(),
            mart_mstar(&r, 5.5).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn ratio_identity_along_simulated_states() {
        // M_c / M_* = rn_deriv must hold to 1e-8 on every reachable state;
        // the derivative, excess-capacity, and log-integral factors cancel
        // algebraically, so this checks the two exponent packs against the
        // closed-form Green factor.
        for &kappa in &[5.0, 6.0, 7.2] {
            let mut s = init_ensemble(1.4 * PI, 0.9 * PI, 0.45 * PI, -0.1).unwrap();
            let mut rng = crate::rng::PathRng::new(17, 0);
            let dt: f64 = 2e-4;
            for step in 0..1500 {
                let j = if step % 2 == 0 { 1 } else { 2 };
                let dw = (kappa * dt).sqrt() * rng.gaussian();
                let next = step_direction(&s, j, dt, dw).unwrap();
                if !next.in_region {
                    break;
                }
                s = next;
                if step % 100 == 0 {
                    let ratio = mart_mc(&s, kappa).unwrap() / mart_mstar(&s, kappa).unwrap();
                    let rn = rn_deriv(&s, kappa).unwrap();
                    assert_relative_eq!(ratio, rn, max_relative = 1e-8);
                }
            }
        }
    }
}
