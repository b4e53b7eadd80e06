//! Finite-difference application of the diffusion generator
//! `L = kappa/8 (1-x^2) d_xx + kappa/8 (1-y^2) d_yy - kappa/4 xy d_xy
//!     - ((kappa-2)/2 + kappa/8)(x d_x + y d_y)`,
//! used as a test-side oracle for the eigenrelation and self-adjointness.

/// Fourth-order central first derivative.
fn d1<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Fourth-order central second derivative.
fn d2<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

/// Applies the generator to a scalar field at `(x, y)` with stencil width `h`.
pub fn apply_l_fd<F: Fn(f64, f64) -> f64 + Copy>(kappa: f64, f: F, x: f64, y: f64, h: f64) -> f64 {
    let fxx = d2(|u| f(u, y), x, h);
    let fyy = d2(|v| f(x, v), y, h);
    let fx = d1(|u| f(u, y), x, h);
    let fy = d1(|v| f(x, v), y, h);
    // Mixed derivative: outer fourth-order d/dx applied to the fourth-order d/dy.
    let fxy = d1(|u| d1(|v| f(u, v), y, h), x, h);
    let drift = 0.5 * (kappa - 2.0) + kappa / 8.0;
    kappa / 8.0 * (1.0 - x * x) * fxx + kappa / 8.0 * (1.0 - y * y) * fyy
        - kappa / 4.0 * x * y * fxy
        - drift * (x * fx + y * fy)
}
