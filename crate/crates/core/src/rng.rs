//! Reproducible random streams.
//!
//! Every sampled path owns a ChaCha stream keyed by `(seed, path_index)`, so
//! results do not depend on scheduling or worker count. Gaussians come from a
//! Box-Muller transform on the raw stream, keeping the byte-level output
//! independent of distribution-crate versions.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One reproducible stream of random variates.
pub struct PathRng {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl PathRng {
    /// Stream keyed by `(seed, path_index)`.
    pub fn new(seed: u64, path_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(path_index);
        PathRng { rng, spare: None }
    }

    /// Uniform in (0, 1].
    pub fn uniform(&mut self) -> f64 {
        // 53 random bits; add 1 ulp so ln() below never sees zero.
        let u = (self.rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
        u + 1.0 / 9007199254740992.0
    }

    /// Standard normal variate (Box-Muller, with the spare cached).
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}
