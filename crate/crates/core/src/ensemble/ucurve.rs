//! Evolution along the diagonal time curve: joint capacity equals clock time
//! and the mark gap is held at pi.
//!
//! On this curve the tip drifts reduce to the closed angle-gap dynamics, so
//! no higher tip derivatives are needed; the per-direction speeds enter only
//! through the products `q_j = (W_{j,1})^2 u_j'` which are known in closed
//! form from the gaps.

use crate::numerics::trig::{cot2, tan2};
use crate::{Error, Result};

/// State on the time curve: angle gaps, mark lifts, and the clock.
#[derive(Debug, Clone, Copy)]
pub struct UState {
    pub z1: f64,
    pub z2: f64,
    /// Mark lifts with `v1 - v2` projected back to pi after every step.
    pub v1: f64,
    pub v2: f64,
    /// Clock time = joint capacity.
    pub t: f64,
    pub alive: bool,
    /// Magnitude of the last mark-gap projection (diagnostic).
    pub last_projection: f64,
}

impl UState {
    /// Starts from gaps `z0` with marks at `(pi, 0)`.
    pub fn new(z0: (f64, f64)) -> Result<Self> {
        let pi = std::f64::consts::PI;
        if !(z0.0 > 0.0 && z0.0 < pi && z0.1 > 0.0 && z0.1 < pi) {
            return Err(Error::InvalidConfig(format!("gaps must lie in (0, pi), got {z0:?}")));
        }
        Ok(UState { z1: z0.0, z2: z0.1, v1: pi, v2: 0.0, t: 0.0, alive: true, last_projection: 0.0 })
    }

    /// Tip lifts implied by the gaps.
    pub fn w1(&self) -> f64 {
        self.v1 + self.z1
    }

    pub fn w2(&self) -> f64 {
        self.v2 + self.z2
    }

    /// Per-direction capacity speeds `q_j = (W_{j,1})^2 u_j'`; they sum to 1
    /// exactly, which is the clock identity d(m_cap) = dt.
    pub fn speeds(&self) -> (f64, f64) {
        let s1 = self.z1.sin();
        let s2 = self.z2.sin();
        (s1 / (s1 + s2), s2 / (s1 + s2))
    }
}

/// One Euler-Maruyama step of the gap diffusion
/// `dZ_j = sqrt(kappa q_j) dB_j + (kappa - 2) cos(Z_j) / (sin Z_1 + sin Z_2) dt`
/// with reflection at the walls. Returns the new gaps and whether a
/// reflection was applied.
pub fn step_z(kappa: f64, z: (f64, f64), dt: f64, noise: (f64, f64)) -> ((f64, f64), bool) {
    let pi = std::f64::consts::PI;
    let s1 = z.0.sin();
    let s2 = z.1.sin();
    let denom = s1 + s2;
    let drift = (kappa - 2.0) / denom;
    let mut z1 = z.0 + (kappa * s1 / denom * dt).sqrt() * noise.0 + drift * z.0.cos() * dt;
    let mut z2 = z.1 + (kappa * s2 / denom * dt).sqrt() * noise.1 + drift * z.1.cos() * dt;
    let mut reflected = false;
    for v in [&mut z1, &mut z2] {
        if *v <= 0.0 {
            *v = -*v;
            reflected = true;
        }
        if *v >= pi {
            *v = 2.0 * pi - *v;
            reflected = true;
        }
        // Guard against double-overshoot at tiny dt.
        *v = v.clamp(1e-12, pi - 1e-12);
    }
    ((z1, z2), reflected)
}

/// Advances the state by `dt` along the time curve: gap diffusion step plus
/// the mark flow and the pi-projection of the mark gap.
pub fn advance_u(state: &UState, kappa: f64, dt: f64, noise: (f64, f64)) -> Result<UState> {
    if !state.alive {
        return Err(Error::InvalidConfig("time-curve state is dead".into()));
    }
    if dt <= 0.0 {
        return Err(Error::InvalidConfig("dt must be positive".into()));
    }
    let mut s = *state;
    let (q1, q2) = s.speeds();
    // Mark flow: own tip pulls with cot2(Z_j), the other tip pushes with
    // tan2(Z_k) (its gap to this mark is Z_k +- pi).
    let dv1 = (-cot2(s.z1) * q1 + tan2(s.z2) * q2) * dt;
    let dv2 = (-cot2(s.z2) * q2 + tan2(s.z1) * q1) * dt;
    let ((z1, z2), _) = step_z(kappa, (s.z1, s.z2), dt, noise);
    s.z1 = z1;
    s.z2 = z2;
    s.v1 += dv1;
    s.v2 += dv2;
    // Project the mark gap back to pi, splitting the residual equally.
    let residual = (s.v1 - s.v2) - std::f64::consts::PI;
    s.v1 -= 0.5 * residual;
    s.v2 += 0.5 * residual;
    s.last_projection = residual.abs();
    s.t += dt;
    if !(s.z1.is_finite() && s.z2.is_finite()) {
        s.alive = false;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn speed_sum_rule_is_exact() {
        let s = UState::new((0.7, 2.1)).unwrap();
        let (q1, q2) = s.speeds();
        assert_abs_diff_eq!(q1 + q2, 1.0, epsilon = 1e-12);
        // Symmetric point splits evenly.
        let sym = UState::new((PI / 2.0, PI / 2.0)).unwrap();
        let (a, b) = sym.speeds();
        assert_abs_diff_eq!(a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn drift_vanishes_at_right_angles() {
        // cos(pi/2) = 0: the zero-noise step leaves the symmetric point put.
        let ((z1, z2), refl) = step_z(6.0, (PI / 2.0, PI / 2.0), 1e-3, (0.0, 0.0));
        assert!(!refl);
        assert_abs_diff_eq!(z1, PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z2, PI / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn diffusion_coefficient_at_symmetric_point() {
        // One pure-noise step: amplitude sqrt(kappa/2) per component.
        let kappa = 6.0;
        let dt = 1e-6;
        let ((z1, _), _) = step_z(kappa, (PI / 2.0, PI / 2.0), dt, (1.0, 0.0));
        assert_abs_diff_eq!(z1 - PI / 2.0, (kappa / 2.0 * dt).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn clock_and_mark_gap_invariants() {
        // Deterministic zero-noise run: m_cap tracks t exactly by the sum
        // rule, and the projection residual stays tiny.
        let mut s = UState::new((1.0, 2.2)).unwrap();
        let dt = 1e-4;
        for _ in 0..5000 {
            s = advance_u(&s, 6.0, dt, (0.0, 0.0)).unwrap();
            assert!(s.last_projection < 1e-4);
            assert_abs_diff_eq!(s.v1 - s.v2, PI, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(s.t, 0.5, epsilon = 1e-12);
        // Gap identity: w1 - v1 = z1 by construction.
        assert_abs_diff_eq!(s.w1() - s.v1, s.z1, epsilon = 1e-15);
    }

    #[test]
    fn noisy_projection_stays_bounded() {
        let mut s = UState::new((PI / 2.0, PI / 2.0)).unwrap();
        let mut rng = crate::rng::PathRng::new(9, 0);
        let dt = 2e-4;
        for _ in 0..5000 {
            s = advance_u(&s, 6.0, dt, (rng.gaussian(), rng.gaussian())).unwrap();
            assert!(s.last_projection < 1e-4, "projection {}", s.last_projection);
        }
        assert!(s.alive);
    }
}
