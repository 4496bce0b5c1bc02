//! Charts, atlases, transition functions, and sampled numeric verification
//! of chart compatibility and atlas equivalence over a builtin manifold zoo.
//!
//! Differentiability is certified only as far as sampling can see it: the
//! verifier reports "no violation found at these samples and tolerances",
//! never a proof of smoothness.

mod chart;
mod manifold;
mod smooth_map;
mod verify;
pub mod zoo;

pub use chart::Chart;
pub use manifold::{JacobianEstimate, JacobianMode, ManifoldSpec, Transition};
pub use smooth_map::{check_smooth_map, coord_expression, ManifoldMap, SmoothMapReport};
pub use verify::{
    atlases_equivalent, check_compatibility, verify_atlas, AtlasReport, CompatViolation,
    CompatibilityReport, EquivalenceReport, ViolationKind,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("manifold `{manifold}` has no chart `{chart}`; available: {available}")]
    UnknownChart {
        manifold: String,
        chart: String,
        available: String,
    },
    #[error("unknown builtin manifold `{name}`; available: {available}")]
    UnknownBuiltin { name: String, available: String },
    #[error("{0}")]
    Dimension(String),
    #[error("matrix with determinant {det:.3e} is not in the general linear group")]
    SingularMatrix { det: f64 },
    #[error("chart `{chart}` of `{manifold}` carries no closed-form differentials")]
    MissingDifferentials { manifold: String, chart: String },
    #[error("{0}")]
    EmptyDomain(String),
}
