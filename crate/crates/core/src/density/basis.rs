//! Eigenbasis of the disk diffusion generator: polar Jacobi polynomials with
//! their normalization and sup-norm constants.

use crate::numerics::gamma::ln_gamma;
use crate::{Error, Result};

/// Eigenvalue `lambda_s = -(kappa/8) s (s + 4 - 8/kappa)`.
pub fn lambda_n(kappa: f64, s: usize) -> f64 {
    let s = s as f64;
    -kappa / 8.0 * s * (s + 4.0 - 8.0 / kappa)
}

/// Index of one basis function: degree `n`, Jacobi order `j`, and the
/// cosine/sine branch `i` (2 requires `n - 2j >= 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BasisIndex {
    pub n: usize,
    pub j: usize,
    pub i: u8,
}

impl BasisIndex {
    /// Angular order `m = n - 2j`.
    pub fn m(&self) -> usize {
        self.n - 2 * self.j
    }
}

/// All basis indices up to degree `n_max`, in deterministic order.
pub fn enumerate(n_max: usize) -> Vec<BasisIndex> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for j in 0..=n / 2 {
            out.push(BasisIndex { n, j, i: 1 });
        }
        if n >= 1 {
            for j in 0..=(n - 1) / 2 {
                out.push(BasisIndex { n, j, i: 2 });
            }
        }
    }
    out
}

/// Normalization constant
/// `h_{n,j} = sqrt((1 + [n != 2j]) / pi * j! (n + 2 - 4/kappa)
///            Gamma(n - j + 2 - 4/kappa) / (Gamma(j + 2 - 4/kappa) (n-j)!))`.
pub fn h_norm(kappa: f64, n: usize, j: usize) -> Result<f64> {
    if 2 * j > n {
        return Err(Error::InvalidConfig(format!("need 2j <= n, got n={n}, j={j}")));
    }
    let a = 2.0 - 4.0 / kappa;
    let (nf, jf) = (n as f64, j as f64);
    let pref = if n == 2 * j { 1.0 } else { 2.0 };
    let log = ln_gamma(jf + 1.0) + (nf + a).ln() + ln_gamma(nf - jf + a)
        - ln_gamma(jf + a)
        - ln_gamma(nf - jf + 1.0);
    Ok((pref / std::f64::consts::PI * log.exp()).sqrt())
}

/// Basis function value at `(x, y)`:
/// `h_{n,j} P_j^{(1-4/kappa, n-2j)}(2r^2 - 1) * Re/Im((x + i y)^{n-2j})`,
/// polynomial in `(x, y)` and exact at the origin.
pub fn basis_value(kappa: f64, idx: BasisIndex, x: f64, y: f64) -> f64 {
    let alpha = 1.0 - 4.0 / kappa;
    let m = idx.m();
    let r2 = x * x + y * y;
    let p = crate::numerics::quad::jacobi_poly(idx.j, alpha, m as f64, 2.0 * r2 - 1.0);
    // r^m cos(m theta) and r^m sin(m theta) as Re/Im of (x + iy)^m.
    let (mut re, mut im) = (1.0, 0.0);
    for _ in 0..m {
        let nre = re * x - im * y;
        im = re * y + im * x;
        re = nre;
    }
    let ang = if idx.i == 1 { re } else { im };
    let h = h_norm(kappa, idx.n, idx.j).expect("valid index");
    h * p * ang
}

/// Sup norm over the closed disk:
/// `h_{n,j} max(Gamma(2 - 4/kappa + j) / (j! Gamma(2 - 4/kappa)),
///              Gamma(n - j + 1) / (j! Gamma(n - 2j + 1)))`.
pub fn sup_norm(kappa: f64, n: usize, j: usize) -> Result<f64> {
    let a = 1.0 - 4.0 / kappa;
    let (nf, jf) = (n as f64, j as f64);
    let h = h_norm(kappa, n, j)?;
    let t1 = (ln_gamma(a + 1.0 + jf) - ln_gamma(jf + 1.0) - ln_gamma(a + 1.0)).exp();
    let t2 = (ln_gamma(nf - jf + 1.0) - ln_gamma(jf + 1.0) - ln_gamma(nf - 2.0 * jf + 1.0)).exp();
    Ok(h * t1.max(t2))
}
