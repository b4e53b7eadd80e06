//! Closed-form cut-point exponents and the boundary-arc Green's function on
//! the unit disk, plus the leading-order probability prediction.

use crate::numerics::trig::sin2;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Cut-point exponent `alpha_0 = 3 kappa / 8 - 1`.
pub fn alpha0(kappa: f64) -> f64 {
    3.0 * kappa / 8.0 - 1.0
}

/// Convergence-rate exponent `beta_0 = 1 - 8 / (5 kappa)`.
pub fn beta0(kappa: f64) -> f64 {
    1.0 - 8.0 / (5.0 * kappa)
}

/// Ordered boundary configuration `w1 > v1 > w2 > v2 > w1 - 2 pi` of curve
/// endpoints `e^{i w_j}` and arc endpoints `e^{i v_j}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryConfig {
    pub w1: f64,
    pub v1: f64,
    pub w2: f64,
    pub v2: f64,
}

impl BoundaryConfig {
    pub fn new(w1: f64, v1: f64, w2: f64, v2: f64) -> Result<Self> {
        let cfg = BoundaryConfig { w1, v1, w2, v2 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let BoundaryConfig { w1, v1, w2, v2 } = *self;
        if ![w1, v1, w2, v2].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("boundary configuration"));
        }
        if !(w1 > v1 && v1 > w2 && w2 > v2 && v2 > w1 - std::f64::consts::TAU) {
            return Err(Error::InvalidConfig(format!(
                "angles must satisfy w1 > v1 > w2 > v2 > w1 - 2pi, got \
                 ({w1}, {v1}, {w2}, {v2})"
            )));
        }
        Ok(())
    }

    /// Rotation of every angle by `c`.
    pub fn rotated(&self, c: f64) -> BoundaryConfig {
        BoundaryConfig { w1: self.w1 + c, v1: self.v1 + c, w2: self.w2 + c, v2: self.v2 + c }
    }
}

/// Boundary Green's factor: the product of half-angle sine factors with
/// exponents `8/kappa - 1`, `(kappa-4)^2 / (2 kappa)`, and `1 - 4/kappa`.
pub fn tilde_g(kappa: f64, cfg: &BoundaryConfig) -> Result<f64> {
    cfg.validate()?;
    let e_ww = 8.0 / kappa - 1.0;
    let e_vv = (kappa - 4.0) * (kappa - 4.0) / (2.0 * kappa);
    let e_wv = 1.0 - 4.0 / kappa;
    let mut log_g = 0.0;
    let mut factor = |x: f64, e: f64| -> Result<()> {
        let s = sin2(x).abs();
        if s < 1e-14 {
            return Err(Error::Numerical(format!(
                "coinciding angles in boundary configuration (gap {x})"
            )));
        }
        log_g += e * s.ln();
        Ok(())
    };
    factor(cfg.w1 - cfg.w2, e_ww)?;
    factor(cfg.v1 - cfg.v2, e_vv)?;
    for w in [cfg.w1, cfg.w2] {
        for v in [cfg.v1, cfg.v2] {
            factor(w - v, e_wv)?;
        }
    }
    Ok(log_g.exp())
}

/// Symmetric-gap form used along the time curve:
/// `tilde_g_u(z1, z2) = tilde_g(pi + z1, pi, z2, 0)`.
pub fn tilde_g_u(kappa: f64, z1: f64, z2: f64) -> Result<f64> {
    let pi = std::f64::consts::PI;
    tilde_g(kappa, &BoundaryConfig { w1: pi + z1, v1: pi, w2: z2, v2: 0.0 })
}

/// Green's function for an interior point of the disk:
/// `|f'(z0)|^{alpha_0} * tilde_g` with `f` the disk automorphism sending `z0`
/// to the origin.
pub fn green_disk(kappa: f64, cfg: &BoundaryConfig, z0: Complex64) -> Result<f64> {
    if z0.norm() >= 1.0 {
        return Err(Error::InvalidConfig(format!("interior point required, |z0| = {}", z0.norm())));
    }
    let deriv = 1.0 / (1.0 - z0.norm_sqr());
    // Boundary images under f(z) = (z - z0) / (1 - conj(z0) z).
    let moebius = |theta: f64| -> f64 {
        let z = Complex64::from_polar(1.0, theta);
        ((z - z0) / (Complex64::new(1.0, 0.0) - z0.conj() * z)).arg()
    };
    let w1 = moebius(cfg.w1);
    let mut v1 = moebius(cfg.v1);
    let mut w2 = moebius(cfg.w2);
    let mut v2 = moebius(cfg.v2);
    // Restore the ordering convention by unwrapping downward from w1.
    let tau = std::f64::consts::TAU;
    for x in [&mut v1, &mut w2, &mut v2] {
        while *x >= w1 {
            *x -= tau;
        }
    }
    while v1 < w1 - tau {
        v1 += tau;
    }
    for x in [&mut w2, &mut v2] {
        while *x >= v1 {
            *x -= tau;
        }
    }
    while w2 < w1 - tau {
        w2 += tau;
    }
    while v2 >= w2 {
        v2 -= tau;
    }
    while v2 < w1 - tau {
        v2 += tau;
    }
    let image = BoundaryConfig { w1, v1, w2, v2 };
    Ok(deriv.powf(alpha0(kappa)) * tilde_g(kappa, &image)?)
}

/// Leading-order cut-point probability prediction with its relative error
/// band exponent.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Prediction {
    pub value: f64,
    /// Multiplicative band: value * (1 +- band) with band = (r/R)^{beta_0}.
    pub band: f64,
}

/// `C0 * G_D * r^{alpha_0}` with the `(r/R)^{beta_0}` band reported.
pub fn predicted_prob(
    kappa: f64,
    cfg: &BoundaryConfig,
    z0: Complex64,
    r: f64,
    c0: f64,
) -> Result<Prediction> {
    let big_r = 1.0 - z0.norm();
    if !(r > 0.0 && r < big_r) {
        return Err(Error::InvalidConfig(format!("need 0 < r < dist(z0, boundary) = {big_r}")));
    }
    let gd = green_disk(kappa, cfg, z0)?;
    Ok(Prediction { value: c0 * gd * r.powf(alpha0(kappa)), band: (r / big_r).powf(beta0(kappa)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn symmetric_cfg() -> BoundaryConfig {
        BoundaryConfig::new(1.5 * std::f64::consts::PI, std::f64::consts::PI, 0.5 * std::f64::consts::PI, 0.0)
            .unwrap()
    }

    #[test]
    fn exponents() {
        assert_abs_diff_eq!(alpha0(6.0), 1.25, epsilon = 1e-15);
        assert_abs_diff_eq!(beta0(6.0), 11.0 / 15.0, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha0(4.0), 0.5, epsilon = 1e-15);
        // alpha0 = 2 - (3 - 3 kappa / 8), continuous and increasing on (4, 8).
        let mut prev = alpha0(4.0);
        for i in 1..=40 {
            let k = 4.0 + 0.1 * i as f64;
            let a = alpha0(k);
            assert_abs_diff_eq!(a, 2.0 - (3.0 - 3.0 * k / 8.0), epsilon = 1e-15);
            assert!(a > prev);
            prev = a;
        }
    }

    #[test]
    fn symmetric_value_at_kappa_six() {
        // Four mixed factors (sqrt2/2)^{1/3} each and trivial outer factors.
        let g = tilde_g(6.0, &symmetric_cfg()).unwrap();
        assert_relative_eq!(g, 2f64.powf(-2.0 / 3.0), max_relative = 1e-12);
        assert_relative_eq!(g, 0.62996, max_relative = 1e-4);
        let gu = tilde_g_u(6.0, 0.5 * std::f64::consts::PI, 0.5 * std::f64::consts::PI).unwrap();
        assert_relative_eq!(g, gu, max_relative = 1e-12);
    }

    #[test]
    fn rotation_and_swap_symmetry() {
        let cfg = BoundaryConfig::new(2.9, 1.8, 0.4, -1.1).unwrap();
        let g = tilde_g(5.3, &cfg).unwrap();
        let rot = tilde_g(5.3, &cfg.rotated(0.77)).unwrap();
        assert_relative_eq!(g, rot, max_relative = 1e-12);
        // Swap (w1,v1) <-> (w2,v2), relabeled so the ordering holds again.
        let relabeled =
            BoundaryConfig::new(cfg.w2, cfg.v2, cfg.w1 - std::f64::consts::TAU, cfg.v1 - std::f64::consts::TAU)
                .unwrap();
        let gs = tilde_g(5.3, &relabeled).unwrap();
        assert_relative_eq!(g, gs, max_relative = 1e-12);
        // u-form symmetry in (z1, z2).
        let a = tilde_g_u(5.3, 0.9, 1.7).unwrap();
        let b = tilde_g_u(5.3, 1.7, 0.9).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn limiting_behaviour() {
        // w meets v: factor exponent 1 - 4/kappa > 0 for kappa > 4, so G -> 0.
        let kappa = 6.0;
        let mut prev = f64::INFINITY;
        for &eps in &[0.1, 0.01, 0.001] {
            let cfg = BoundaryConfig::new(std::f64::consts::PI + eps, std::f64::consts::PI, 1.0, 0.0).unwrap();
            let g = tilde_g(kappa, &cfg).unwrap();
            assert!(g < prev);
            prev = g;
        }
        assert!(prev < 0.1);
        // w1 -> w2 also gives 0 since 8/kappa - 1 > 0 for kappa < 8.
        let mut prev = f64::INFINITY;
        for &eps in &[0.2, 0.02, 0.002] {
            let cfg = BoundaryConfig::new(2.0 + eps, 2.0 + 0.5 * eps, 2.0, 0.0).unwrap();
            let g = tilde_g(kappa, &cfg).unwrap();
            assert!(g < prev);
            prev = g;
        }
        // z1 -> 0 kills the u-form.
        assert!(tilde_g_u(6.0, 1e-6, 1.5).unwrap() < 1e-2);
        // Coinciding angles are an error.
        assert!(tilde_g(6.0, &BoundaryConfig { w1: 1.0, v1: 1.0, w2: 0.5, v2: 0.0 }).is_err());
    }

    #[test]
    fn green_disk_center_and_derivative_factor() {
        let cfg = symmetric_cfg();
        let g0 = green_disk(6.0, &cfg, Complex64::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(g0, tilde_g(6.0, &cfg).unwrap(), max_relative = 1e-12);
        // |f'(0.5)| = 1 / (1 - 0.25) = 4/3 enters to the alpha0 power; check
        // against an explicit recomputation.
        let z0 = Complex64::new(0.5, 0.0);
        let g = green_disk(6.0, &cfg, z0).unwrap();
        assert!(g.is_finite() && g > 0.0);
        assert!(green_disk(6.0, &cfg, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn green_disk_moebius_self_consistency() {
        // Mapping the configuration by the automorphism that kills z0 and
        // recomputing at the origin must reproduce the value exactly:
        // G(cfg, z0) = |f'(z0)|^{alpha0} G(f(cfg), 0).
        let kappa = 5.5;
        let cfg = BoundaryConfig::new(2.9, 1.8, 0.4, -1.1).unwrap();
        let z0 = Complex64::new(0.3, -0.25);
        let g = green_disk(kappa, &cfg, z0).unwrap();
        let f = |theta: f64| -> f64 {
            let z = Complex64::from_polar(1.0, theta);
            ((z - z0) / (Complex64::new(1.0, 0.0) - z0.conj() * z)).arg()
        };
        let tau = std::f64::consts::TAU;
        let mut angles = [f(cfg.w1), f(cfg.v1), f(cfg.w2), f(cfg.v2)];
        for i in 1..4 {
            while angles[i] >= angles[i - 1] {
                angles[i] -= tau;
            }
        }
        let image = BoundaryConfig::new(angles[0], angles[1], angles[2], angles[3]).unwrap();
        let deriv = 1.0 / (1.0 - z0.norm_sqr());
        let expect = deriv.powf(alpha0(kappa))
            * green_disk(kappa, &image, Complex64::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(g, expect, max_relative = 1e-10);
    }

    #[test]
    fn prediction_power_law() {
        let cfg = symmetric_cfg();
        let p1 = predicted_prob(6.0, &cfg, Complex64::new(0.0, 0.0), 0.05, 1.0).unwrap();
        assert_relative_eq!(p1.value, 2f64.powf(-2.0 / 3.0) * 0.05f64.powf(1.25), max_relative = 1e-12);
        assert_relative_eq!(p1.value, 0.0149, max_relative = 1e-3);
        let p2 = predicted_prob(6.0, &cfg, Complex64::new(0.0, 0.0), 0.1, 1.0).unwrap();
        assert_relative_eq!(p2.value / p1.value, 2f64.powf(1.25), max_relative = 1e-12);
        assert!(predicted_prob(6.0, &cfg, Complex64::new(0.0, 0.0), 1.5, 1.0).is_err());
    }
}
