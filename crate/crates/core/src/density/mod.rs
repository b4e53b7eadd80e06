//! Spectral objects for the angle-gap diffusion on the unit disk: Jacobi
//! polynomial basis, eigenvalues, the invariant weight, transition densities,
//! and derived densities in the angle coordinates.

pub mod basis;
pub mod model;
pub mod operator;
pub mod zdensity;

pub use basis::{basis_value, h_norm, lambda_n, sup_norm, BasisIndex};
pub use model::{DensityModel, DiskQuadrature, PtValue};
pub use zdensity::{cal_z, pz_inf, tilde_pz_inf, z_to_xy, zjacobian};

/// Invariant weight `Psi(x, y) = (1 - x^2 - y^2)^{1 - 4/kappa}` on the disk.
pub fn psi(kappa: f64, x: f64, y: f64) -> f64 {
    let s = 1.0 - x * x - y * y;
    if s <= 0.0 {
        0.0
    } else {
        s.powf(1.0 - 4.0 / kappa)
    }
}

/// Stationary density `p_inf(x, y) = (2 - 4/kappa) Psi(x, y) / pi`.
pub fn p_inf(kappa: f64, x: f64, y: f64) -> f64 {
    (2.0 - 4.0 / kappa) / std::f64::consts::PI * psi(kappa, x, y)
}

/// Jacobi polynomial value (three-term recurrence).
pub fn jacobi(j: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    assert!(alpha > -1.0 && beta > -1.0, "Jacobi indices must exceed -1");
    crate::numerics::quad::jacobi_poly(j, alpha, beta, x)
}
