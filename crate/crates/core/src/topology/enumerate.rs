//! Exhaustive enumeration of all (labeled) topologies on small point sets.
//!
//! Candidates are the `2^(2^n - 2)` families containing `∅` and `X`,
//! scanned in increasing order of the selection index, so results are
//! deterministic and independent of any parallel partitioning.

use super::{FiniteSpace, Subset, TopologyError};

/// Enumeration is capped where the candidate count (`2^14` at n = 4) stays
/// an interactive-scale exact search.
pub const MAX_ENUMERATION_POINTS: usize = 4;

fn candidate_spaces(n: usize) -> Result<impl Iterator<Item = FiniteSpace>, TopologyError> {
    if n > MAX_ENUMERATION_POINTS {
        return Err(TopologyError::Capacity {
            given: n,
            limit: MAX_ENUMERATION_POINTS,
        });
    }
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let full: Subset = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    // Nonempty proper subsets; the empty and full sets are always included.
    let proper: Vec<Subset> = (1..full).collect();
    let picks: u64 = 1 << proper.len();
    Ok((0..picks).map(move |pick| {
        let mut family = vec![0, full];
        family.extend(
            proper
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, &m)| m),
        );
        FiniteSpace::new(labels.clone(), family).expect("candidate within capacity")
    }))
}

/// Number of topologies on a set of `n` labeled points (`n ≤ 4`).
pub fn count_topologies(n: usize) -> Result<u64, TopologyError> {
    Ok(candidate_spaces(n)?
        .filter(|s| s.verify().is_topology)
        .count() as u64)
}

/// All topologies on `n` labeled points, in deterministic candidate order.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteSpace>, TopologyError> {
    Ok(candidate_spaces(n)?
        .filter(|s| s.verify().is_topology)
        .collect())
}
