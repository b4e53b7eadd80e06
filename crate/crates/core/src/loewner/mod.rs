//! Chordal and radial Loewner solvers: forward map evolution from a sampled
//! driving function, trace computation by backward slit-map composition, the
//! covering radial flow, and numerical capacity re-extraction.

pub mod capacity;
pub mod chordal;
pub mod covering;
pub mod radial;

use crate::{Error, Result};
use num_complex::Complex64;

/// Swallowing cutoff: a point is declared swallowed once its distance to the
/// driving value drops below `4 sqrt(dt)`, the width scale of one slit step.
pub fn blowup_cutoff(dt: f64) -> f64 {
    4.0 * dt.sqrt()
}

/// Monotone sequence of capacity times starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    t: Vec<f64>,
}

impl TimeGrid {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if t.is_empty() || t[0] != 0.0 {
            return Err(Error::InvalidConfig("time grid must start at 0".into()));
        }
        if t.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("time grid"));
        }
        if t.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig("time grid must be strictly increasing".into()));
        }
        Ok(TimeGrid { t })
    }

    /// Uniform grid with step `dt` covering `[0, horizon]`.
    pub fn uniform(dt: f64, horizon: f64) -> Result<Self> {
        if dt <= 0.0 || horizon < 0.0 || !dt.is_finite() || !horizon.is_finite() {
            return Err(Error::InvalidConfig("uniform grid needs dt > 0, horizon >= 0".into()));
        }
        let n = (horizon / dt).round() as usize;
        let mut t: Vec<f64> = (0..=n).map(|i| i as f64 * dt).collect();
        if let Some(last) = t.last_mut() {
            if (*last - horizon).abs() < 1e-12 * dt {
                *last = horizon;
            }
        }
        TimeGrid::new(t)
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        *self.t.last().unwrap()
    }

    /// Capacity increment of step `i` (from `t[i-1]` to `t[i]`).
    pub fn step(&self, i: usize) -> f64 {
        self.t[i] - self.t[i - 1]
    }
}

/// Sampled driving function on a time grid, interpreted as piecewise linear.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivingFunction {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
}

impl DrivingFunction {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidConfig("driver length must match grid".into()));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("driving function"));
        }
        Ok(DrivingFunction { grid, values })
    }

    /// Constant driver `w` on a uniform grid.
    pub fn constant(w: f64, dt: f64, horizon: f64) -> Result<Self> {
        let grid = TimeGrid::uniform(dt, horizon)?;
        let n = grid.len();
        DrivingFunction::new(grid, vec![w; n])
    }

    /// Piecewise-linear interpolated value at capacity time `t`.
    pub fn value_at(&self, t: f64) -> f64 {
        let ts = self.grid.times();
        match ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => self.values[i],
            Err(0) => self.values[0],
            Err(i) if i >= ts.len() => *self.values.last().unwrap(),
            Err(i) => {
                let frac = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
                self.values[i - 1] + frac * (self.values[i] - self.values[i - 1])
            }
        }
    }
}

/// Blow-up record for one evolved point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowUp {
    /// Grid index at which the point was declared swallowed.
    pub step: usize,
    /// Capacity time of the blow-up.
    pub time: f64,
}

/// Evolution of a single point under a Loewner flow: map values at grid times
/// until blow-up.
#[derive(Debug, Clone)]
pub struct PointFlow {
    pub values: Vec<Complex64>,
    pub blowup: Option<BlowUp>,
}

impl PointFlow {
    pub fn last(&self) -> Complex64 {
        *self.values.last().unwrap()
    }
}

/// Covering-coordinate evolution of tracked boundary arguments.
#[derive(Debug, Clone)]
pub struct CoveringState {
    /// One real-valued path per tracked point, cut at blow-up.
    pub paths: Vec<Vec<f64>>,
    pub blowups: Vec<Option<BlowUp>>,
}

/// Trace of a chordal Loewner curve in the closed upper half-plane.
#[derive(Debug, Clone)]
pub struct ChordalTrace {
    pub points: Vec<Complex64>,
    pub grid: TimeGrid,
    pub driver: DrivingFunction,
}

/// Trace of a radial Loewner curve in the closed unit disk.
#[derive(Debug, Clone)]
pub struct RadialTrace {
    pub points: Vec<Complex64>,
    pub grid: TimeGrid,
    pub driver: DrivingFunction,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(TimeGrid::new(vec![0.0, 0.1, 0.2]).is_ok());
        assert!(TimeGrid::new(vec![0.1, 0.2]).is_err());
        assert!(TimeGrid::new(vec![0.0, 0.2, 0.2]).is_err());
        assert!(TimeGrid::new(vec![0.0, f64::NAN]).is_err());
    }

    #[test]
    fn driver_interpolation() {
        let grid = TimeGrid::new(vec![0.0, 1.0, 2.0]).unwrap();
        let d = DrivingFunction::new(grid, vec![0.0, 2.0, 0.0]).unwrap();
        assert_eq!(d.value_at(0.5), 1.0);
        assert_eq!(d.value_at(1.5), 1.0);
        assert_eq!(d.value_at(5.0), 0.0);
    }
}
