//! Numerical toolkit for chordal/radial Loewner chains, SLE sampling, the
//! two-curve ensemble with its martingale observables, the spectral transition
//! density of the associated angle diffusion, and Monte Carlo estimation of
//! cut-point probabilities for a chordal curve attached to two boundary arcs.

pub mod cli;
pub mod cutpoints;
pub mod density;
pub mod ensemble;
pub mod green;
pub mod io;
pub mod loewner;
pub mod mc;
pub mod numerics;
pub mod rng;
pub mod samplers;

pub use loewner::{ChordalTrace, DrivingFunction, RadialTrace, TimeGrid};

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("truncation degree too small: {0}")]
    Truncation(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
