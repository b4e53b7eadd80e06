//! Shared numerical kernels: half-angle trigonometry, complex jets through
//! slit maps, log-gamma, Gauss-Jacobi quadrature, and small statistics helpers.

pub mod gamma;
pub mod jets;
pub mod quad;
pub mod stats;
pub mod trig;
