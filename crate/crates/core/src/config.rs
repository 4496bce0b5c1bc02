//! Sampling and tolerance configuration shared by the numeric verifiers.
//! Every report embeds the configuration it ran under, so results are
//! self-describing.

use serde::Serialize;

use crate::numerics::FD_STEP;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    /// Seed for the ChaCha8 sampling stream.
    pub seed: u64,
    /// Target number of accepted samples per check.
    pub samples: usize,
    /// How far inside open domain boundaries sampled points must stay.
    /// Boundaries are numerically hostile: the catalog's inverses and
    /// square roots lose digits there faster than any fixed tolerance.
    pub margin: f64,
    /// Tolerance for transition round trips `T_ij ∘ T_ji = id`.
    pub transition_tol: f64,
    /// Tolerance for chart round trips `φ⁻¹(φ(P)) = P`.
    pub chart_roundtrip_tol: f64,
    /// Transition Jacobian determinants must stay above this in absolute
    /// value (the non-vanishing-Jacobian requirement).
    pub det_floor: f64,
    /// Smoothness proxy: the `h` and `h/2` finite-difference Jacobians must
    /// agree to this relative tolerance.
    pub fd_tol: f64,
    /// Relative step for central differences.
    pub fd_step: f64,
    /// Below this many accepted overlap samples a chart pair is reported as
    /// thin overlap (a warning, not a failure).
    pub min_overlap: usize,
    /// When set, overlap samples must have every coordinate at least this
    /// large in absolute value. Used to probe where a compatibility failure
    /// lives (e.g. re-checking a flagged atlas away from a bad point).
    pub coord_floor: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 1000,
            margin: 0.1,
            transition_tol: 1e-9,
            chart_roundtrip_tol: 1e-10,
            det_floor: 1e-8,
            fd_tol: 1e-4,
            fd_step: FD_STEP,
            min_overlap: 200,
            coord_floor: None,
        }
    }
}

impl VerifyConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_coord_floor(mut self, floor: f64) -> Self {
        self.coord_floor = Some(floor);
        self
    }

    /// Overlap sample quota below which a pair counts as thin.
    pub fn thin_threshold(&self) -> usize {
        self.min_overlap.min(self.samples)
    }
}
