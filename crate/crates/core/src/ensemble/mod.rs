//! Two-curve ensemble: the joint state of two radial Loewner curves grown
//! toward the origin, its direction-wise evolution ODEs, the product
//! martingale observables, the diagonal time curve, and the angle-gap
//! diffusion.

pub mod martingales;
pub mod state;
pub mod twocurve;
pub mod ucurve;
pub mod zsim;

pub use martingales::{mart_mc, mart_mstar, rn_deriv};
pub use state::EnsembleState;
pub use twocurve::{TwoCurvePaths, TwoCurveRun};
pub use ucurve::UState;
pub use zsim::{simulate_z, ZLaw, ZSample, ZSimReport};

/// Angular collision cutoff (radians, covering coordinates) below which the
/// joint configuration is declared degenerate and the state frozen.
pub const COLLISION_CUTOFF: f64 = 1e-3;
