//! Quadrature rules: Gauss-Jacobi nodes/weights (Newton iteration on the
//! recurrence) and adaptive tensor Gauss-Legendre integration on rectangles.

use super::gamma::ln_gamma;

/// Value of the Jacobi polynomial P_n^{(a,b)} at x, by the three-term recurrence.
pub fn jacobi_poly(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
    for j in 2..=n {
        let j = j as f64;
        let c1 = 2.0 * j * (j + a + b) * (2.0 * j + a + b - 2.0);
        let c2 = (2.0 * j + a + b - 1.0) * (a * a - b * b);
        let c3 = (2.0 * j + a + b - 1.0) * (2.0 * j + a + b) * (2.0 * j + a + b - 2.0);
        let c4 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * (2.0 * j + a + b);
        let next = ((c2 + c3 * x) * p - c4 * p_prev) / c1;
        p_prev = p;
        p = next;
    }
    p
}

/// Derivative of P_n^{(a,b)} at x.
pub fn jacobi_poly_deriv(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    0.5 * (n as f64 + a + b + 1.0) * jacobi_poly(n - 1, a + 1.0, b + 1.0, x)
}

/// Gauss-Jacobi rule with weight (1-x)^a (1+x)^b on [-1, 1].
/// Returns `(nodes, weights)` with nodes in descending order.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1 && a > -1.0 && b > -1.0);
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Initial guesses follow the classic gaujac ladder.
        let mut z: f64 = if i == 0 {
            let an = a / nf;
            let bn = b / nf;
            let r1 = (1.0 + a) * (2.78 / (4.0 + nf * nf) + 0.768 * an / nf);
            let r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
            1.0 - r1 / r2
        } else if i == 1 {
            let r1 = (4.1 + a) / ((1.0 + a) * (1.0 + 0.156 * a));
            let r2 = 1.0 + 0.06 * (nf - 8.0) * (1.0 + 0.12 * a) / nf;
            let r3 = 1.0 + 0.012 * b * (1.0 + 0.25 * a.abs()) / nf;
            nodes[0] - (1.0 - nodes[0]) * r1 * r2 * r3
        } else if i == 2 {
            let r1 = (1.67 + 0.28 * a) / (1.0 + 0.37 * a);
            let r2 = 1.0 + 0.22 * (nf - 8.0) / nf;
            let r3 = 1.0 + 8.0 * b / ((6.28 + b) * nf * nf);
            nodes[1] - (nodes[0] - nodes[1]) * r1 * r2 * r3
        } else if i == n - 2 {
            let r1 = (1.0 + 0.235 * b) / (0.766 + 0.119 * b);
            let r2 = 1.0 / (1.0 + 0.639 * (nf - 4.0) / (1.0 + 0.71 * (nf - 4.0)));
            let r3 = 1.0 / (1.0 + 20.0 * a / ((7.5 + a) * nf * nf));
            nodes[i - 1] + (nodes[i - 1] - nodes[i - 2]) * r1 * r2 * r3
        } else if i == n - 1 {
            let r1 = (1.0 + 0.37 * b) / (1.67 + 0.28 * b);
            let r2 = 1.0 / (1.0 + 0.22 * (nf - 8.0) / nf);
            let r3 = 1.0 / (1.0 + 8.0 * a / ((6.28 + a) * nf * nf));
            nodes[i - 1] + (nodes[i - 1] - nodes[i - 2]) * r1 * r2 * r3
        } else {
            3.0 * nodes[i - 1] - 3.0 * nodes[i - 2] + nodes[i - 3]
        };
        // Newton iteration on P_n.
        for _ in 0..100 {
            let p = jacobi_poly(n, a, b, z);
            let dp = jacobi_poly_deriv(n, a, b, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = z;
        let dp = jacobi_poly_deriv(n, a, b, z);
        let logc = (a + b + 1.0) * 2f64.ln() + ln_gamma(nf + a + 1.0) + ln_gamma(nf + b + 1.0)
            - ln_gamma(nf + 1.0)
            - ln_gamma(nf + a + b + 1.0);
        weights[i] = logc.exp() / ((1.0 - z * z) * dp * dp);
    }
    (nodes, weights)
}

const GL7_X: [f64; 7] = [
    -0.9491079123427585,
    -0.7415311855993945,
    -0.4058451513773972,
    0.0,
    0.4058451513773972,
    0.7415311855993945,
    0.9491079123427585,
];
const GL7_W: [f64; 7] = [
    0.1294849661688697,
    0.2797053914892766,
    0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892766,
    0.1294849661688697,
];

fn gl7_cell_2d(f: &mut dyn FnMut(f64, f64) -> f64, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let hx = 0.5 * (x1 - x0);
    let hy = 0.5 * (y1 - y0);
    let cx = 0.5 * (x0 + x1);
    let cy = 0.5 * (y0 + y1);
    let mut acc = 0.0;
    for i in 0..7 {
        let x = cx + hx * GL7_X[i];
        let mut row = 0.0;
        for j in 0..7 {
            row += GL7_W[j] * f(x, cy + hy * GL7_X[j]);
        }
        acc += GL7_W[i] * row;
    }
    acc * hx * hy
}

fn adapt_2d(
    f: &mut dyn FnMut(f64, f64) -> f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let coarse = gl7_cell_2d(f, x0, x1, y0, y1);
    let mx = 0.5 * (x0 + x1);
    let my = 0.5 * (y0 + y1);
    let fine = gl7_cell_2d(f, x0, mx, y0, my)
        + gl7_cell_2d(f, mx, x1, y0, my)
        + gl7_cell_2d(f, x0, mx, my, y1)
        + gl7_cell_2d(f, mx, x1, my, y1);
    if (coarse - fine).abs() <= tol || depth == 0 {
        return fine;
    }
    let t = tol / 4.0;
    adapt_2d(f, x0, mx, y0, my, t, depth - 1)
        + adapt_2d(f, mx, x1, y0, my, t, depth - 1)
        + adapt_2d(f, x0, mx, my, y1, t, depth - 1)
        + adapt_2d(f, mx, x1, my, y1, t, depth - 1)
}

/// Adaptive tensor Gauss-Legendre integration of `f` over `[x0,x1] x [y0,y1]`
/// to absolute tolerance `tol`.
pub fn adaptive_quad_2d<F: FnMut(f64, f64) -> f64>(
    mut f: F,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    tol: f64,
) -> f64 {
    adapt_2d(&mut f, x0, x1, y0, y1, tol, 14)
}

fn gl7_cell_1d(f: &mut dyn FnMut(f64) -> f64, x0: f64, x1: f64) -> f64 {
    let h = 0.5 * (x1 - x0);
    let c = 0.5 * (x0 + x1);
    let mut acc = 0.0;
    for i in 0..7 {
        acc += GL7_W[i] * f(c + h * GL7_X[i]);
    }
    acc * h
}

fn adapt_1d(f: &mut dyn FnMut(f64) -> f64, x0: f64, x1: f64, tol: f64, depth: usize) -> f64 {
    let coarse = gl7_cell_1d(f, x0, x1);
    let m = 0.5 * (x0 + x1);
    let fine = gl7_cell_1d(f, x0, m) + gl7_cell_1d(f, m, x1);
    if (coarse - fine).abs() <= tol || depth == 0 {
        return fine;
    }
    adapt_1d(f, x0, m, tol / 2.0, depth - 1) + adapt_1d(f, m, x1, tol / 2.0, depth - 1)
}

/// Adaptive Gauss-Legendre integration of `f` over `[x0, x1]`.
pub fn adaptive_quad_1d<F: FnMut(f64) -> f64>(mut f: F, x0: f64, x1: f64, tol: f64) -> f64 {
    adapt_1d(&mut f, x0, x1, tol, 40)
}
