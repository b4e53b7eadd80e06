//! Truncated eigenbasis model evaluating the transition density with a
//! certified tail bound, plus the disk quadrature carrying the invariant
//! weight.

use super::basis::{self, BasisIndex};
use super::psi;
use crate::numerics::quad::gauss_jacobi;
use crate::{Error, Result};
use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU64, Ordering};

/// One precomputed basis entry.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct BasisEntry {
    pub idx: BasisIndex,
    pub lambda: f64,
    pub h: f64,
    pub sup: f64,
}

/// Transition-density evaluation with its certified truncation tail bound.
#[derive(Debug, Clone, Copy)]
pub struct PtValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// Immutable truncated eigenbasis for a fixed `kappa`.
#[derive(Debug)]
pub struct DensityModel {
    pub kappa: f64,
    pub n_max: usize,
    pub entries: Vec<BasisEntry>,
    clamp_events: AtomicU64,
}

impl DensityModel {
    pub fn new(kappa: f64, n_max: usize) -> Result<Self> {
        if !(kappa > 4.0 && kappa < 8.0) {
            return Err(Error::InvalidConfig(format!("kappa must be in (4, 8), got {kappa}")));
        }
        if n_max < 1 {
            return Err(Error::InvalidConfig("truncation degree must be >= 1".into()));
        }
        let mut entries = Vec::new();
        for idx in basis::enumerate(n_max) {
            entries.push(BasisEntry {
                idx,
                lambda: basis::lambda_n(kappa, idx.n),
                h: basis::h_norm(kappa, idx.n, idx.j)?,
                sup: basis::sup_norm(kappa, idx.n, idx.j)?,
            });
        }
        Ok(DensityModel { kappa, n_max, entries, clamp_events: AtomicU64::new(0) })
    }

    /// Smallest truncation degree whose tail bound at time `t_min` meets
    /// `tol`, starting from the default degree 40.
    pub fn with_tolerance(kappa: f64, t_min: f64, tol: f64) -> Result<Self> {
        let mut n = 40;
        loop {
            let model = DensityModel::new(kappa, n)?;
            if model.tail_bound(t_min) <= tol {
                return Ok(model);
            }
            if n >= 400 {
                return Err(Error::Truncation(format!(
                    "tail bound {} still above {tol} at degree {n}",
                    model.tail_bound(t_min)
                )));
            }
            n += 20;
        }
    }

    /// Number of times a negative truncated sum was clamped to zero.
    pub fn clamp_events(&self) -> u64 {
        self.clamp_events.load(Ordering::Relaxed)
    }

    /// Sup-norm tail bound for the series truncated after degree `n_max`:
    /// `sum_{n > n_max} e^{lambda_n t} sum_s ||v_{n,s}||_inf^2` (the weight
    /// factor at the target point is applied by the caller).
    pub fn tail_bound(&self, t: f64) -> f64 {
        let mut total = 0.0;
        for n in self.n_max + 1.. {
            let lam = basis::lambda_n(self.kappa, n);
            let decay = (lam * t).exp();
            if !decay.is_finite() || decay == 0.0 {
                break;
            }
            let mut level = 0.0;
            for j in 0..=n / 2 {
                let s = basis::sup_norm(self.kappa, n, j).unwrap_or(f64::INFINITY);
                let count = if n == 2 * j { 1.0 } else { 2.0 };
                level += count * s * s;
            }
            total += decay * level;
            if decay * level < 1e-18 * total.max(1e-300) || n > self.n_max + 400 {
                break;
            }
        }
        total
    }

    /// Basis vector evaluated at one point, in entry order.
    pub fn basis_at(&self, x: f64, y: f64) -> Vec<f64> {
        self.entries.iter().map(|e| basis::basis_value(self.kappa, e.idx, x, y)).collect()
    }

    /// Transition density `p_t((x, y), (x*, y*))` with its tail bound; errors
    /// when the bound exceeds `tol` (the truncation degree is then too small
    /// for this `t`).
    pub fn p_t(&self, t: f64, from: (f64, f64), to: (f64, f64), tol: f64) -> Result<PtValue> {
        if t <= 0.0 {
            return Err(Error::InvalidConfig("p_t requires t > 0".into()));
        }
        let w = psi(self.kappa, to.0, to.1);
        let tail = self.tail_bound(t) * w;
        if tail > tol {
            return Err(Error::Truncation(format!(
                "tail bound {tail:.3e} exceeds tolerance {tol:.3e} at t = {t}; increase the degree"
            )));
        }
        let mut sum = 0.0;
        for e in &self.entries {
            let a = basis::basis_value(self.kappa, e.idx, from.0, from.1);
            let b = basis::basis_value(self.kappa, e.idx, to.0, to.1);
            sum += a * b * (e.lambda * t).exp();
        }
        let value = w * sum;
        if value < 0.0 {
            self.clamp_events.fetch_add(1, Ordering::Relaxed);
            return Ok(PtValue { value: 0.0, tail_bound: tail });
        }
        Ok(PtValue { value, tail_bound: tail })
    }

    /// Raw (unclamped) truncated sum, for diagnostics.
    pub fn p_t_unclamped(&self, t: f64, from: (f64, f64), to: (f64, f64)) -> f64 {
        let w = psi(self.kappa, to.0, to.1);
        let mut sum = 0.0;
        for e in &self.entries {
            let a = basis::basis_value(self.kappa, e.idx, from.0, from.1);
            let b = basis::basis_value(self.kappa, e.idx, to.0, to.1);
            sum += a * b * (e.lambda * t).exp();
        }
        w * sum
    }

    /// Writes the coefficient table as versioned CSV keyed by `(kappa, N)`.
    pub fn save_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "cutgreen-density-model,1")?;
        writeln!(out, "kappa,{},n_max,{}", self.kappa, self.n_max)?;
        writeln!(out, "n,j,i,lambda,h,sup")?;
        for e in &self.entries {
            writeln!(out, "{},{},{},{},{},{}", e.idx.n, e.idx.j, e.idx.i, e.lambda, e.h, e.sup)?;
        }
        Ok(())
    }

    /// Loads a coefficient table written by [`save_csv`] and validates it
    /// against a freshly built model.
    pub fn load_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty model file".into()))??;
        if header.trim() != "cutgreen-density-model,1" {
            return Err(Error::Parse(format!("unknown model file header: {header}")));
        }
        let keyline = lines.next().ok_or_else(|| Error::Parse("missing key line".into()))??;
        let parts: Vec<&str> = keyline.trim().split(',').collect();
        if parts.len() != 4 || parts[0] != "kappa" || parts[2] != "n_max" {
            return Err(Error::Parse(format!("bad key line: {keyline}")));
        }
        let kappa: f64 = parts[1].parse().map_err(|_| Error::Parse("bad kappa".into()))?;
        let n_max: usize = parts[3].parse().map_err(|_| Error::Parse("bad n_max".into()))?;
        let model = DensityModel::new(kappa, n_max)?;
        let _ = lines.next(); // column header
        for (e, line) in model.entries.iter().zip(lines) {
            let line = line?;
            let cols: Vec<&str> = line.trim().split(',').collect();
            if cols.len() != 6 {
                return Err(Error::Parse(format!("bad model row: {line}")));
            }
            let h: f64 = cols[4].parse().map_err(|_| Error::Parse("bad h".into()))?;
            if (h - e.h).abs() > 1e-10 * e.h.abs().max(1.0) {
                return Err(Error::Parse("model file inconsistent with rebuilt table".into()));
            }
        }
        Ok(model)
    }
}

/// Quadrature nodes on the unit disk carrying the measure `Psi dx dy`:
/// Gauss-Jacobi in the radial variable (absorbing the weight's boundary
/// singularity exactly) and uniform trapezoid in the angle.
#[derive(Debug, Clone)]
pub struct DiskQuadrature {
    pub kappa: f64,
    /// (x, y, weight) with the weight including Psi and the area element.
    pub nodes: Vec<(f64, f64, f64)>,
}

impl DiskQuadrature {
    pub fn new(kappa: f64, n_radial: usize, n_angular: usize) -> Self {
        let alpha = 1.0 - 4.0 / kappa;
        let (us, ws) = gauss_jacobi(n_radial, alpha, 0.0);
        let c = 0.25 * 0.5f64.powf(alpha) * std::f64::consts::TAU / n_angular as f64;
        let mut nodes = Vec::with_capacity(n_radial * n_angular);
        for (&u, &wu) in us.iter().zip(&ws) {
            let r = (0.5 * (1.0 + u)).sqrt();
            for k in 0..n_angular {
                let th = std::f64::consts::TAU * k as f64 / n_angular as f64;
                nodes.push((r * th.cos(), r * th.sin(), c * wu));
            }
        }
        DiskQuadrature { kappa, nodes }
    }

    /// Default resolution used by the verification suites.
    pub fn default_for(kappa: f64) -> Self {
        DiskQuadrature::new(kappa, 64, 128)
    }

    /// Integral of `f * Psi` over the disk.
    pub fn integrate<F: FnMut(f64, f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().map(|&(x, y, w)| w * f(x, y)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{basis_value, p_inf};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn quadrature_total_psi_mass() {
        // integral of Psi over the disk is pi / (2 - 4/kappa), so p_inf has
        // unit mass.
        for &kappa in &[5.0, 6.0, 7.0] {
            let q = DiskQuadrature::new(kappa, 48, 96);
            let total = q.integrate(|_, _| 1.0);
            assert_relative_eq!(
                total,
                std::f64::consts::PI / (2.0 - 4.0 / kappa),
                max_relative = 1e-12
            );
            let mass = q.integrate(|x, y| p_inf(kappa, x, y) / super::psi(kappa, x, y));
            assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn orthonormality_small_degrees() {
        let kappa = 6.0;
        let model = DensityModel::new(kappa, 6).unwrap();
        let q = DiskQuadrature::default_for(kappa);
        let table: Vec<Vec<f64>> = model
            .entries
            .iter()
            .map(|e| q.nodes.iter().map(|&(x, y, _)| basis_value(kappa, e.idx, x, y)).collect())
            .collect();
        for (a, ta) in table.iter().enumerate() {
            for (b, tb) in table.iter().enumerate().skip(a) {
                let dot: f64 =
                    q.nodes.iter().zip(ta.iter().zip(tb)).map(|(&(_, _, w), (&fa, &fb))| w * fa * fb).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(dot, expect, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn pt_mass_and_tail_certificate() {
        let model = DensityModel::new(6.0, 20).unwrap();
        let q = DiskQuadrature::default_for(6.0);
        // Mass of p_t(from, .) integrates Psi(.) times the series.
        let from = (0.2, -0.3);
        let mass = q.integrate(|x, y| model.p_t(0.5, from, (x, y), 1e-6).unwrap().value / super::psi(6.0, x, y));
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-6);
        // Too-small t must be rejected.
        assert!(model.p_t(1e-4, from, (0.0, 0.0), 1e-6).is_err());
    }

    #[test]
    fn model_cache_round_trip() {
        let model = DensityModel::new(5.5, 8).unwrap();
        let mut buf = Vec::new();
        model.save_csv(&mut buf).unwrap();
        let loaded = DensityModel::load_csv(std::io::BufReader::new(buf.as_slice())).unwrap();
        assert_eq!(loaded.n_max, 8);
        assert_eq!(loaded.entries.len(), model.entries.len());
    }
}
