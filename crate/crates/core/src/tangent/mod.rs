//! Tangent vectors as chart-tagged component arrays, the contravariant
//! change-of-basis law, derivation checks (Leibniz, chain rule), tangent
//! bundle charts, and vector fields with the Lie derivative of functions.

mod bundle;
mod field;
mod scalar;
mod vector;

pub use bundle::{bundle_chart, tangent_bundle};
pub use field::{
    check_field_consistency, field_eval, lie_derivative, FieldConsistencyReport, VectorField,
};
pub use scalar::ScalarField;
pub use vector::{
    apply, change_chart, check_chain_rule, check_leibniz, DerivationCheck, TangentVector,
};

use thiserror::Error;

use crate::atlas::AtlasError;

#[derive(Debug, Error)]
pub enum TangentError {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error("point is not in the domain of chart `{chart}`")]
    PointNotInChart { chart: String },
    #[error("expected {expected} components, got {got}")]
    ComponentsLength { expected: usize, got: usize },
    #[error("vectors must share the manifold, point, and chart")]
    Mismatch,
    #[error("finite-difference stencil left the chart domain")]
    StencilFailure,
    #[error("no chart with field components covers the point")]
    Uncovered,
    #[error("vector field has no components in chart `{chart}`")]
    MissingComponents { chart: String },
}
