//! Exact decision procedures on finite topological spaces.
//!
//! Points are indexed by position in a label list and subsets are encoded as
//! `u64` bitmasks, so spaces are capped at 64 points. Every operation here is
//! exact: axioms are checked by exhaustive scans, not sampling.

mod cover;
mod enumerate;
mod map;
mod space;

pub use cover::{minimal_subcover, refines};
pub use enumerate::{count_topologies, enumerate_topologies, MAX_ENUMERATION_POINTS};
pub use map::{find_homeomorphism, induced_pullback, induced_pushforward, FiniteMap};
pub use space::{
    generate_from_base, generate_from_subbase, product_topology, verify_topology, AxiomViolation,
    FiniteSpace, TopologyAxiom, TopologyReport,
};

use thiserror::Error;

/// A subset of the points of a [`FiniteSpace`], one bit per point.
pub type Subset = u64;

/// Hard cap on the number of points so subsets fit in one machine word.
pub const MAX_POINTS: usize = 64;

/// Cap on the target size of [`induced_pushforward`], which scans all 2^n
/// candidate subsets of the target.
pub const MAX_PUSHFORWARD_POINTS: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("too many points: {given} exceeds the capacity of {limit}")]
    Capacity { given: usize, limit: usize },
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("subset uses bits outside the point set")]
    SubsetOutOfRange,
    #[error("the family is not a base; witness subset is not a union of members")]
    NotABase { witness: Subset },
    #[error("{0}")]
    Domain(String),
    #[error("point sets of size {0} exceed the exhaustive search limit of {1}")]
    SearchLimit(usize, usize),
    #[error("map image has wrong length or points at an invalid target index")]
    InvalidMap,
}
