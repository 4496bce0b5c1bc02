//! A workbench for executable point-set topology and differential geometry:
//! exact decision procedures on finite topological spaces, a verified
//! catalog of Euclidean homeomorphisms, chart/atlas compatibility checking
//! over a builtin manifold zoo, and tangent-space calculus with numerically
//! checked transformation laws.

pub mod atlas;
pub mod config;
pub mod euclid;
pub mod numerics;
pub mod sample;
pub mod tangent;
pub mod topology;

pub use config::VerifyConfig;

/// A map given on coordinate or ambient arrays.
pub type PointFn = std::sync::Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
/// A real-valued function on coordinate or ambient arrays.
pub type ScalarFn = std::sync::Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
