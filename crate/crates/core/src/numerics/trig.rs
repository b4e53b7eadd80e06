//! Half-angle trigonometric helpers.
//!
//! `cot2(x)` denotes `cot(x/2)` and similarly for the other functions; these
//! show up throughout the covering radial Loewner equations and the ensemble
//! drift terms.

/// cot(x/2)
#[inline]
pub fn cot2(x: f64) -> f64 {
    let h = 0.5 * x;
    h.cos() / h.sin()
}

/// d/dx cot(x/2) = -csc^2(x/2)/2
#[inline]
pub fn cot2_d1(x: f64) -> f64 {
    let s = (0.5 * x).sin();
    -0.5 / (s * s)
}

/// d^2/dx^2 cot(x/2) = csc^2(x/2) cot(x/2) / 2
#[inline]
pub fn cot2_d2(x: f64) -> f64 {
    let h = 0.5 * x;
    let s = h.sin();
    0.5 * h.cos() / (s * s * s)
}

/// d^3/dx^3 cot(x/2) = -csc^2(x/2) [cot^2(x/2) + csc^2(x/2)/2] / 2
#[inline]
pub fn cot2_d3(x: f64) -> f64 {
    let h = 0.5 * x;
    let s = h.sin();
    let csc2 = 1.0 / (s * s);
    let cot = h.cos() / s;
    -0.5 * csc2 * (cot * cot + 0.5 * csc2)
}

/// sin(x/2)
#[inline]
pub fn sin2(x: f64) -> f64 {
    (0.5 * x).sin()
}

/// cos(x/2)
#[inline]
pub fn cos2(x: f64) -> f64 {
    (0.5 * x).cos()
}

/// tan(x/2)
#[inline]
pub fn tan2(x: f64) -> f64 {
    (0.5 * x).tan()
}

/// Wraps `x` into `[0, 2*pi)`.
#[inline]
pub fn wrap_2pi(x: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut y = x % tau;
    if y < 0.0 {
        y += tau;
    }
    y
}

/// Signed distance of `x` to the nearest multiple of `2*pi`, in `(-pi, pi]`.
#[inline]
pub fn wrap_pi(x: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut y = x % tau;
    if y > std::f64::consts::PI {
        y -= tau;
    } else if y <= -std::f64::consts::PI {
        y += tau;
    }
    y
}
