//! Densities of the angle-gap pair `(Z_1, Z_2)` on `(0, pi)^2`, obtained from
//! the disk densities through `X = cos((z1+z2)/2)`, `Y = sin((z1-z2)/2)`, and
//! the reweighted (killed) variants with their normalizing constant.

use super::model::DensityModel;
use super::p_inf;
use crate::green::{alpha0, tilde_g_u};
use crate::numerics::quad::{adaptive_quad_1d, adaptive_quad_2d};
use crate::numerics::trig::{cos2, sin2};
use crate::Result;

/// Coordinate change `(z1, z2) -> (x, y)`.
pub fn z_to_xy(z1: f64, z2: f64) -> (f64, f64) {
    (cos2(z1 + z2), sin2(z1 - z2))
}

/// Jacobian factor `(sin z1 + sin z2) / 4` of the coordinate change.
pub fn zjacobian(z1: f64, z2: f64) -> f64 {
    0.25 * (z1.sin() + z2.sin())
}

/// Transition density of the angle pair under the unconditioned (star) law.
pub fn pz_t(model: &DensityModel, t: f64, z: (f64, f64), zs: (f64, f64), tol: f64) -> Result<f64> {
    let from = z_to_xy(z.0, z.1);
    let to = z_to_xy(zs.0, zs.1);
    Ok(model.p_t(t, from, to, tol)?.value * zjacobian(zs.0, zs.1))
}

/// Invariant density of the angle pair.
pub fn pz_inf(kappa: f64, zs: (f64, f64)) -> f64 {
    let (x, y) = z_to_xy(zs.0, zs.1);
    p_inf(kappa, x, y) * zjacobian(zs.0, zs.1)
}

/// Transition density under the conditioned (c) law:
/// `e^{-alpha0 t} p^Z_t(z, z*) G_u(z) / G_u(z*)`.
pub fn tilde_pz_t(
    model: &DensityModel,
    t: f64,
    z: (f64, f64),
    zs: (f64, f64),
    tol: f64,
) -> Result<f64> {
    let base = pz_t(model, t, z, zs, tol)?;
    let g_from = tilde_g_u(model.kappa, z.0, z.1)?;
    let g_to = tilde_g_u(model.kappa, zs.0, zs.1)?;
    Ok((-alpha0(model.kappa) * t).exp() * base * g_from / g_to)
}

/// Normalizing constant `calZ = int p^Z_inf / G_u` over `(0, pi)^2`, by
/// adaptive quadrature of the density ratio itself.
pub fn cal_z(kappa: f64) -> f64 {
    let pi = std::f64::consts::PI;
    adaptive_quad_2d(
        |z1, z2| {
            let g = tilde_g_u(kappa, z1, z2).unwrap_or(f64::INFINITY);
            if !g.is_finite() || g == 0.0 {
                0.0
            } else {
                pz_inf(kappa, (z1, z2)) / g
            }
        },
        0.0,
        pi,
        0.0,
        pi,
        1e-10,
    )
}

/// Closed-form shape of the integrand of `cal_z` up to a constant:
/// `cos2(z1 - z2)^{2 - 8/kappa} sin2(z1 + z2)`.
pub fn cal_z_shape(kappa: f64, z1: f64, z2: f64) -> f64 {
    cos2(z1 - z2).abs().powf(2.0 - 8.0 / kappa) * sin2(z1 + z2)
}

/// Quasi-invariant density `tilde p^Z_inf = (p^Z_inf / G_u) / calZ`.
pub fn tilde_pz_inf(kappa: f64, zs: (f64, f64), cal_z_value: f64) -> Result<f64> {
    let g = tilde_g_u(kappa, zs.0, zs.1)?;
    Ok(pz_inf(kappa, zs) / g / cal_z_value)
}

/// One-dimensional reduction of the `cal_z` integral in rotated coordinates,
/// used as an independent cross-check of the adaptive 2-D quadrature.
pub fn cal_z_by_reduction(kappa: f64) -> f64 {
    // With a = (z1+z2)/2, b = (z1-z2)/2 the integrand is const *
    // cos(b)^{2-8/kappa} sin(a), over 0<a<pi, |b| < min(a, pi-a); the
    // constant is (2/pi)(2 - 4/kappa) 4^{-4/kappa} and d z1 d z2 = 2 da db.
    let c = 2.0 / std::f64::consts::PI * (2.0 - 4.0 / kappa) * 4f64.powf(-4.0 / kappa);
    let e = 2.0 - 8.0 / kappa;
    2.0 * c
        * adaptive_quad_1d(
            |a: f64| {
                let lim = a.min(std::f64::consts::PI - a);
                a.sin() * adaptive_quad_1d(|b: f64| b.cos().powf(e), -lim, lim, 1e-11)
            },
            0.0,
            std::f64::consts::PI,
            1e-10,
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn coordinate_change_is_disk_valued() {
        for &(z1, z2) in &[(0.3, 2.8), (1.5, 1.5), (0.01, 3.1), (2.0, 0.5)] {
            let (x, y) = z_to_xy(z1, z2);
            assert!(x * x + y * y < 1.0);
            // 1 - x^2 - y^2 = sin z1 sin z2
            assert_abs_diff_eq!(1.0 - x * x - y * y, z1.sin() * z2.sin(), epsilon = 1e-12);
        }
    }

    #[test]
    fn pz_inf_mass_is_one() {
        // The Jacobian turns the z-square integral into the unit-mass disk
        // integral; verify by direct adaptive quadrature in z.
        let pi = std::f64::consts::PI;
        for &kappa in &[5.0, 6.5] {
            let mass = adaptive_quad_2d(|a, b| pz_inf(kappa, (a, b)), 0.0, pi, 0.0, pi, 1e-9);
            assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn pz_symmetry_under_swap() {
        let model = DensityModel::new(6.0, 12).unwrap();
        let a = pz_t(&model, 0.8, (1.0, 2.0), (0.7, 2.2), 1e-8).unwrap();
        let b = pz_t(&model, 0.8, (2.0, 1.0), (2.2, 0.7), 1e-8).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-10);
    }

    #[test]
    fn cal_z_matches_reduction_and_shape() {
        for &kappa in &[5.0, 6.0, 7.0] {
            let z2d = cal_z(kappa);
            let z1d = cal_z_by_reduction(kappa);
            assert_relative_eq!(z2d, z1d, max_relative = 1e-6);
            // Shape cross-check: integrand / closed-form shape is constant.
            let f = |z1: f64, z2: f64| {
                pz_inf(kappa, (z1, z2)) / tilde_g_u(kappa, z1, z2).unwrap()
            };
            let c0 = f(1.0, 1.3) / cal_z_shape(kappa, 1.0, 1.3);
            for &(z1, z2) in &[(0.4, 2.0), (2.5, 2.9), (1.5, 1.5), (0.2, 0.3)] {
                let c = f(z1, z2) / cal_z_shape(kappa, z1, z2);
                assert_relative_eq!(c, c0, max_relative = 1e-9);
            }
            // And the constant matches (2/pi)(2-4/kappa) 4^{-4/kappa}.
            let expect = 2.0 / std::f64::consts::PI * (2.0 - 4.0 / kappa) * 4f64.powf(-4.0 / kappa);
            assert_relative_eq!(c0, expect, max_relative = 1e-9);
        }
    }

    #[test]
    fn tilde_pz_inf_normalized() {
        let kappa = 6.0;
        let z = cal_z(kappa);
        let pi = std::f64::consts::PI;
        let mass = adaptive_quad_2d(
            |a, b| tilde_pz_inf(kappa, (a, b), z).unwrap_or(0.0),
            0.0,
            pi,
            0.0,
            pi,
            1e-9,
        );
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-6);
    }
}
