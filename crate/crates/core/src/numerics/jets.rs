//! Complex 3-jets (value plus three derivatives) propagated through the
//! elementary slit maps used by the discrete Loewner zippers.
//!
//! The covering radial slit map with constant driver `c` and capacity `d` has
//! the closed form `u -> c + 2*arccos(exp(-d/2) * cos((u-c)/2))`; its inverse
//! replaces `exp(-d/2)` by `exp(d/2)`. Both are evaluated on the closed upper
//! half-plane in covering coordinates with an arccos branch chosen so the
//! image stays in the closed upper half-plane.

use num_complex::Complex64;

pub type C64 = Complex64;

const TAU: f64 = std::f64::consts::TAU;

/// arccos branch mapping the closed lower half-plane (plus the reals) into
/// the half-strip { Re in [0, pi], Im >= 0 }.
///
/// Uses `-i Log(zeta)` with `zeta = v ± i sqrt(1-v^2)` chosen so `|zeta| <= 1`;
/// the two candidates multiply to 1, so the choice is always available.
pub fn arccos_uhp(v: C64) -> C64 {
    let sq = (C64::new(1.0, 0.0) - v * v).sqrt();
    let cand = v + C64::new(0.0, 1.0) * sq;
    let zeta = if cand.norm_sqr() > 1.0 { v - C64::new(0.0, 1.0) * sq } else { cand };
    let (r, theta) = zeta.to_polar();
    C64::new(theta, -r.ln())
}

/// Value and first three derivatives of a map at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub f: [C64; 4],
}

impl Jet3 {
    /// Identity jet at `z`: value `z`, derivative 1.
    pub fn var(z: C64) -> Self {
        Jet3 { f: [z, C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)] }
    }

    pub fn value(&self) -> C64 {
        self.f[0]
    }

    pub fn d1(&self) -> C64 {
        self.f[1]
    }

    /// Chain rule to third order: outer derivatives `a = [A(v), A'(v), A''(v), A'''(v)]`
    /// evaluated at `v = self.value()`, composed with this inner jet.
    pub fn compose_outer(&self, a: [C64; 4]) -> Jet3 {
        let f1 = self.f[1];
        let f2 = self.f[2];
        let f3 = self.f[3];
        Jet3 {
            f: [
                a[0],
                a[1] * f1,
                a[1] * f2 + a[2] * f1 * f1,
                a[1] * f3 + 3.0 * a[2] * f1 * f2 + a[3] * f1 * f1 * f1,
            ],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.f.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// Elementary covering radial slit map: the hull grown by running the radial
/// Loewner flow with constant driver `center` for capacity `cap`.
#[derive(Debug, Clone, Copy)]
pub struct CoverSlit {
    pub center: f64,
    pub cap: f64,
}

impl CoverSlit {
    pub fn new(center: f64, cap: f64) -> Self {
        CoverSlit { center, cap }
    }

    /// Tip of the slit in covering coordinates (image of `center` under the
    /// inverse map): `center + 2i*arccosh(exp(cap/2))`.
    pub fn tip(&self) -> C64 {
        let rho = (0.5 * self.cap).exp();
        C64::new(self.center, 2.0 * (rho + (rho * rho - 1.0).sqrt()).ln())
    }

    fn apply(&self, u: C64, rho: f64) -> C64 {
        // Shift Re(u - center) into [0, 2pi); the branch cut then sits on the slit.
        let d = u - C64::new(self.center, 0.0);
        let k = (d.re / TAU).floor();
        let dd = d - C64::new(k * TAU, 0.0);
        let v = rho * (0.5 * dd).cos();
        C64::new(self.center + k * TAU, 0.0) + 2.0 * arccos_uhp(v)
    }

    fn apply_jet(&self, u: &Jet3, rho: f64) -> Jet3 {
        let d = u.value() - C64::new(self.center, 0.0);
        let k = (d.re / TAU).floor();
        let dd = d - C64::new(k * TAU, 0.0);
        let half = 0.5 * dd;
        let (s, co) = (half.sin(), half.cos());
        // Inner jet of v(u) = rho*cos((u-c)/2) composed with the incoming jet.
        let v_derivs = [
            rho * co,
            -0.5 * rho * s,
            -0.25 * rho * co,
            0.125 * rho * s,
        ];
        let vjet = u.compose_outer(v_derivs);
        // Outer jet of A(v) = arccos_uhp(v); sin(A) has the branch baked in.
        let a0 = arccos_uhp(vjet.value());
        let sa = a0.sin();
        let sa3 = sa * sa * sa;
        let v = vjet.value();
        let a = [
            a0,
            -1.0 / sa,
            -v / sa3,
            -1.0 / sa3 - 3.0 * v * v / (sa3 * sa * sa),
        ];
        let ajet = vjet.compose_outer(a);
        Jet3 {
            f: [
                C64::new(self.center + k * TAU, 0.0) + 2.0 * ajet.f[0],
                2.0 * ajet.f[1],
                2.0 * ajet.f[2],
                2.0 * ajet.f[3],
            ],
        }
    }

    /// Forward map (removes the slit hull).
    pub fn forward(&self, u: C64) -> C64 {
        self.apply(u, (-0.5 * self.cap).exp())
    }

    /// Inverse map (welds the slit back in).
    pub fn inverse(&self, w: C64) -> C64 {
        self.apply(w, (0.5 * self.cap).exp())
    }

    pub fn forward_jet(&self, u: &Jet3) -> Jet3 {
        self.apply_jet(u, (-0.5 * self.cap).exp())
    }

    pub fn inverse_jet(&self, w: &Jet3) -> Jet3 {
        self.apply_jet(w, (0.5 * self.cap).exp())
    }
}

/// Elementary chordal slit map: vertical slit of half-plane capacity `cap`
/// rooted at `center` (slit height `2*sqrt(cap)`, hcap2 = cap).
#[derive(Debug, Clone, Copy)]
pub struct HalfSlit {
    pub center: f64,
    pub cap: f64,
}

impl HalfSlit {
    pub fn new(center: f64, cap: f64) -> Self {
        HalfSlit { center, cap }
    }

    pub fn tip(&self) -> C64 {
        C64::new(self.center, 2.0 * self.cap.sqrt())
    }

    /// Forward map `z -> c + sqrt((z-c)^2 + 4 cap)`, branch asymptotic to `z`.
    pub fn forward(&self, z: C64) -> C64 {
        let u = z - C64::new(self.center, 0.0);
        if u.norm_sqr() == 0.0 {
            return C64::new(self.center, 2.0 * self.cap.sqrt());
        }
        let w = u * (C64::new(1.0, 0.0) + 4.0 * self.cap / (u * u)).sqrt();
        // Principal sqrt can flip the sign for points below the slit tip; force Im >= 0.
        let w = if w.im < 0.0 { -w } else { w };
        C64::new(self.center, 0.0) + w
    }

    /// Inverse map `w -> c + sqrt((w-c)^2 - 4 cap)` with the factored branch
    /// `sqrt(w-c-2s) * sqrt(w-c+2s)`, `s = sqrt(cap)`; maps the upper
    /// half-plane minus nothing onto the half-plane minus the slit.
    pub fn inverse(&self, w: C64) -> C64 {
        let u = w - C64::new(self.center, 0.0);
        let s = 2.0 * self.cap.sqrt();
        let a = (u - C64::new(s, 0.0)).sqrt();
        let b = (u + C64::new(s, 0.0)).sqrt();
        C64::new(self.center, 0.0) + a * b
    }
}
