//! Covers, refinement, and exact minimum subcover search.

use itertools::Itertools;

use super::{FiniteSpace, Subset, TopologyError};

/// Whether every member of `fine` is contained in some member of `coarse`.
pub fn refines(fine: &[Subset], coarse: &[Subset]) -> bool {
    fine.iter()
        .all(|&v| coarse.iter().any(|&u| v & !u == 0))
}

/// Returns a subcover of `cover` for `target` of minimum cardinality.
///
/// Every cover member must be open and the cover must actually cover
/// `target`. The search scans subfamilies in increasing size, trying
/// index combinations in lexicographic order, so ties break toward the
/// earliest members of the family. Exponential in the worst case; meant
/// for desk-scale families.
pub fn minimal_subcover(
    space: &FiniteSpace,
    cover: &[Subset],
    target: Subset,
) -> Result<Vec<Subset>, TopologyError> {
    let target = target & space.full();
    for &u in cover {
        if !space.is_open(u) {
            return Err(TopologyError::Domain(format!(
                "cover member {} is not an open set",
                space.format_subset(u)
            )));
        }
    }
    let union = cover.iter().fold(0, |acc, &u| acc | u);
    if target & !union != 0 {
        return Err(TopologyError::Domain(format!(
            "cover misses {}",
            space.format_subset(target & !union)
        )));
    }
    for size in 0..=cover.len() {
        for combo in (0..cover.len()).combinations(size) {
            let covered = combo.iter().fold(0, |acc, &i| acc | cover[i]);
            if target & !covered == 0 {
                return Ok(combo.into_iter().map(|i| cover[i]).collect());
            }
        }
    }
    unreachable!("the full cover always covers the target");
}
