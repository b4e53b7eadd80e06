//! Numerical capacity re-extraction from sampled traces ("unzipping").
//!
//! Each trace point is pushed through the already-fitted elementary maps; a
//! new slit is fitted through its image and the capacities accumulate. The
//! reported error bound compares against the half-resolution estimate.

use crate::numerics::jets::{CoverSlit, HalfSlit};
use crate::{Error, Result};
use num_complex::Complex64;

/// Half-plane capacity (hcap2) of the hull generated by a polyline in the
/// closed upper half-plane starting on the real line.
/// Returns `(capacity, error_bound)`.
pub fn hcap2_of_points(points: &[Complex64]) -> Result<(f64, f64)> {
    let full = unzip_chordal(points)?;
    if points.len() < 3 {
        return Ok((full, 0.0));
    }
    let coarse: Vec<Complex64> = points.iter().copied().step_by(2).collect();
    let half = unzip_chordal(&coarse)?;
    Ok((full, (full - half).abs()))
}

fn unzip_chordal(points: &[Complex64]) -> Result<f64> {
    if points.is_empty() {
        return Ok(0.0);
    }
    if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
        return Err(Error::NonFinite("trace point"));
    }
    let mut maps: Vec<HalfSlit> = Vec::new();
    let mut total = 0.0;
    for &p in points {
        let mut q = p;
        for m in &maps {
            q = m.forward(q);
        }
        let h = q.im.max(0.0);
        let cap = h * h / 4.0;
        if cap > 0.0 {
            maps.push(HalfSlit::new(q.re, cap));
            total += cap;
        }
    }
    Ok(total)
}

/// Disk capacity (dcap) of the hull generated by a polyline in the closed
/// unit disk starting on the circle. Returns `(capacity, error_bound)`.
pub fn dcap_of_points(points: &[Complex64]) -> Result<(f64, f64)> {
    let full = unzip_radial(points)?;
    if points.len() < 3 {
        return Ok((full, 0.0));
    }
    let coarse: Vec<Complex64> = points.iter().copied().step_by(2).collect();
    let half = unzip_radial(&coarse)?;
    Ok((full, (full - half).abs()))
}

fn unzip_radial(points: &[Complex64]) -> Result<f64> {
    if points.is_empty() {
        return Ok(0.0);
    }
    let mut maps: Vec<CoverSlit> = Vec::new();
    let mut total = 0.0;
    for &p in points {
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(Error::NonFinite("trace point"));
        }
        if p.norm() < 1e-9 {
            return Err(Error::Numerical("trace point at the disk center".into()));
        }
        // Covering coordinate: u = arg(p) - i ln|p|, Im u >= 0 inside the disk.
        let mut q = Complex64::new(p.arg(), -p.norm().ln().min(0.0));
        for m in &maps {
            q = m.forward(q);
        }
        let im = q.im.max(0.0);
        // Slit with tip height im: cap = 2 ln cosh(im/2).
        let cap = 2.0 * (0.5 * im).cosh().ln();
        if cap > 0.0 {
            maps.push(CoverSlit::new(q.re, cap));
            total += cap;
        }
    }
    Ok(total)
}
