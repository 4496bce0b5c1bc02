//! The finite-space type, topology-axiom verification, and the set-level
//! operators (interior, closure, boundary, separation, connectedness,
//! Hausdorff, relative and product topologies, base/subbase generation).

use std::collections::BTreeSet;
use std::fmt;

use super::{Subset, TopologyError, MAX_POINTS};

/// A finite point set together with a family of subsets proposed as the open
/// sets. Construction does not require the family to be a topology; run
/// [`FiniteSpace::verify`] (or [`verify_topology`]) to check the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    /// Sorted and deduplicated.
    opens: Vec<Subset>,
}

/// Which topology axiom a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum TopologyAxiom {
    /// `∅` and the full point set must be members.
    ContainsEmptyAndFull,
    /// Closed under unions. For a finite family, closure under pairwise
    /// unions is equivalent to closure under arbitrary unions.
    UnionClosure,
    /// Closed under (pairwise, hence finite) intersections.
    IntersectionClosure,
}

/// One failed axiom with a concrete witness.
///
/// For the union/intersection axioms the witnesses are `[a, b, a∪b]`
/// (resp. `[a, b, a∩b]`) where the combined set is missing from the family;
/// for the membership axiom the witness is the missing set itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: TopologyAxiom,
    pub witnesses: Vec<Subset>,
}

/// Outcome of checking the three topology axioms. At most one violation is
/// reported per axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyReport {
    pub is_topology: bool,
    pub violations: Vec<AxiomViolation>,
}

/// Checks whether `family` is a topology on `points`.
pub fn verify_topology<S: AsRef<str>>(
    points: &[S],
    family: &[Subset],
) -> Result<TopologyReport, TopologyError> {
    let space = FiniteSpace::new(
        points.iter().map(|p| p.as_ref().to_owned()).collect(),
        family.to_vec(),
    )?;
    Ok(space.verify())
}

impl FiniteSpace {
    /// Builds a space from labels and subset masks. The family is sorted and
    /// deduplicated; it is *not* required to satisfy the topology axioms.
    pub fn new(points: Vec<String>, opens: Vec<Subset>) -> Result<Self, TopologyError> {
        if points.len() > MAX_POINTS {
            return Err(TopologyError::Capacity {
                given: points.len(),
                limit: MAX_POINTS,
            });
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(TopologyError::DuplicateLabel(p.clone()));
            }
        }
        let full = full_mask(points.len());
        if opens.iter().any(|&m| m & !full != 0) {
            return Err(TopologyError::SubsetOutOfRange);
        }
        let mut opens = opens;
        opens.sort_unstable();
        opens.dedup();
        Ok(Self { points, opens })
    }

    /// Space with the trivial (minimal) topology `{∅, X}`.
    pub fn trivial(points: Vec<String>) -> Result<Self, TopologyError> {
        let full = full_mask(points.len());
        Self::new(points, vec![0, full])
    }

    /// Space with the discrete (maximal) topology: all `2^n` subsets.
    pub fn discrete(points: Vec<String>) -> Result<Self, TopologyError> {
        if points.len() > 20 {
            return Err(TopologyError::Capacity {
                given: points.len(),
                limit: 20,
            });
        }
        let full = full_mask(points.len());
        Self::new(points, (0..=full).collect())
    }

    /// The two-point space `{1, 2}` whose only nontrivial open set is `{1}`.
    pub fn sierpinski() -> Self {
        Self::new(vec!["1".into(), "2".into()], vec![0b00, 0b01, 0b11]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    /// Mask with one bit per point.
    pub fn full(&self) -> Subset {
        full_mask(self.points.len())
    }

    pub fn complement(&self, a: Subset) -> Subset {
        !a & self.full()
    }

    pub fn point_index(&self, label: &str) -> Result<usize, TopologyError> {
        self.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| TopologyError::UnknownLabel(label.to_owned()))
    }

    /// Converts a list of labels into a subset mask.
    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset, TopologyError> {
        let mut m = 0;
        for l in labels {
            m |= 1 << self.point_index(l.as_ref())?;
        }
        Ok(m)
    }

    /// Labels of the points in `a`, in point order.
    pub fn labels_of(&self, a: Subset) -> Vec<&str> {
        (0..self.points.len())
            .filter(|i| a >> i & 1 == 1)
            .map(|i| self.points[i].as_str())
            .collect()
    }

    /// Renders a subset as `{a,b}` using the point labels.
    pub fn format_subset(&self, a: Subset) -> String {
        format!("{{{}}}", self.labels_of(a).join(","))
    }

    pub fn is_open(&self, a: Subset) -> bool {
        self.opens.binary_search(&a).is_ok()
    }

    pub fn is_closed(&self, a: Subset) -> bool {
        self.is_open(self.complement(a))
    }

    /// Checks the three axioms, reporting at most one witness per axiom.
    pub fn verify(&self) -> TopologyReport {
        let mut violations = Vec::new();
        let full = self.full();
        let mut missing = Vec::new();
        if !self.is_open(0) {
            missing.push(0);
        }
        if !self.is_open(full) {
            missing.push(full);
        }
        if !missing.is_empty() {
            violations.push(AxiomViolation {
                axiom: TopologyAxiom::ContainsEmptyAndFull,
                witnesses: missing,
            });
        }
        'unions: for (k, &a) in self.opens.iter().enumerate() {
            for &b in &self.opens[k + 1..] {
                let u = a | b;
                if !self.is_open(u) {
                    violations.push(AxiomViolation {
                        axiom: TopologyAxiom::UnionClosure,
                        witnesses: vec![a, b, u],
                    });
                    break 'unions;
                }
            }
        }
        'meets: for (k, &a) in self.opens.iter().enumerate() {
            for &b in &self.opens[k + 1..] {
                let m = a & b;
                if !self.is_open(m) {
                    violations.push(AxiomViolation {
                        axiom: TopologyAxiom::IntersectionClosure,
                        witnesses: vec![a, b, m],
                    });
                    break 'meets;
                }
            }
        }
        TopologyReport {
            is_topology: violations.is_empty(),
            violations,
        }
    }

    /// Union of all open sets contained in `a`; the largest open set inside.
    pub fn interior(&self, a: Subset) -> Subset {
        let a = a & self.full();
        self.opens
            .iter()
            .filter(|&&w| w & !a == 0)
            .fold(0, |acc, &w| acc | w)
    }

    /// Intersection of all closed sets containing `a`; the smallest closed
    /// set around it. Computed as the complement of `interior(complement a)`.
    pub fn closure(&self, a: Subset) -> Subset {
        self.complement(self.interior(self.complement(a & self.full())))
    }

    /// `closure(a) \ interior(a)`.
    pub fn boundary(&self, a: Subset) -> Subset {
        self.closure(a) & !self.interior(a)
    }

    /// Whether `a` is dense in `b`, i.e. `closure(a) = b`. Requires `a ⊆ b`.
    pub fn is_dense(&self, a: Subset, b: Subset) -> Result<bool, TopologyError> {
        let (a, b) = (a & self.full(), b & self.full());
        if a & !b != 0 {
            return Err(TopologyError::Domain(format!(
                "{} is not a subset of {}",
                self.format_subset(a),
                self.format_subset(b)
            )));
        }
        Ok(self.closure(a) == b)
    }

    /// Whether `v` contains an open set containing the point with index `x`.
    pub fn is_neighborhood(&self, v: Subset, x: usize) -> bool {
        let v = v & self.full();
        let bit = 1u64 << x;
        self.opens.iter().any(|&w| w & bit != 0 && w & !v == 0)
    }

    /// Whether `closure(a) ∩ b` and `a ∩ closure(b)` are both empty.
    pub fn are_separated(&self, a: Subset, b: Subset) -> bool {
        self.closure(a) & b == 0 && a & self.closure(b) == 0
    }

    /// Connectedness of the whole space: no proper nonempty clopen subset.
    pub fn is_connected(&self) -> bool {
        let full = self.full();
        !self
            .opens
            .iter()
            .any(|&w| w != 0 && w != full && self.is_open(self.complement(w)))
    }

    /// Connectedness of `a` in its relative topology.
    pub fn is_connected_subset(&self, a: Subset) -> bool {
        self.relative(a).is_connected()
    }

    /// First pair of distinct points (in point order) that cannot be put in
    /// disjoint open sets, or `None` when the space is Hausdorff.
    pub fn hausdorff_violation(&self) -> Option<(usize, usize)> {
        let n = self.points.len();
        for x in 0..n {
            for y in x + 1..n {
                let (bx, by) = (1u64 << x, 1u64 << y);
                let separated = self.opens.iter().any(|&u| {
                    u & bx != 0
                        && self
                            .opens
                            .iter()
                            .any(|&v| v & by != 0 && u & v == 0)
                });
                if !separated {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_hausdorff(&self) -> bool {
        self.hausdorff_violation().is_none()
    }

    /// Every finite space is compact: an open cover contains only finitely
    /// many distinct sets, so it is its own finite subcover. The interesting
    /// computation is [`minimal_subcover`](super::minimal_subcover).
    pub fn is_compact(&self) -> bool {
        true
    }

    /// The relative topology `{a ∩ V}` on the points of `a`, re-indexed.
    pub fn relative(&self, a: Subset) -> FiniteSpace {
        let a = a & self.full();
        let kept: Vec<usize> = (0..self.points.len()).filter(|i| a >> i & 1 == 1).collect();
        let points = kept.iter().map(|&i| self.points[i].clone()).collect();
        let opens = self
            .opens
            .iter()
            .map(|&w| compress(w & a, &kept))
            .collect();
        FiniteSpace::new(points, opens).expect("relative topology stays within capacity")
    }
}

impl fmt::Display for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens.iter().map(|&w| self.format_subset(w)).collect();
        write!(f, "({{{}}}, {{{}}})", self.points.join(","), opens.join(", "))
    }
}

fn full_mask(n: usize) -> Subset {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// Re-indexes the bits of `w` (a subset of the kept positions) to 0..kept.len().
fn compress(w: Subset, kept: &[usize]) -> Subset {
    kept.iter()
        .enumerate()
        .filter(|(_, &old)| w >> old & 1 == 1)
        .fold(0, |acc, (new, _)| acc | 1 << new)
}

/// All distinct unions of the `generators`, plus the empty set, computed by a
/// worklist fixpoint. The result size is the actual number of opens, so the
/// cost is output-sensitive rather than `2^|generators|`.
fn union_closure(generators: &[Subset]) -> Vec<Subset> {
    let mut known: BTreeSet<Subset> = BTreeSet::new();
    known.insert(0);
    let mut work: Vec<Subset> = vec![0];
    while let Some(w) = work.pop() {
        for &g in generators {
            let u = w | g;
            if known.insert(u) {
                work.push(u);
            }
        }
    }
    known.into_iter().collect()
}

/// Generates the topology whose opens are all unions of finite intersections
/// of `family` members. The empty intersection is the full set, so the result
/// is a topology even for an empty family.
pub fn generate_from_subbase<S: AsRef<str>>(
    points: &[S],
    family: &[Subset],
) -> Result<FiniteSpace, TopologyError> {
    let labels: Vec<String> = points.iter().map(|p| p.as_ref().to_owned()).collect();
    // Validate labels/masks through the constructor first.
    FiniteSpace::new(labels.clone(), family.to_vec())?;
    let full = full_mask(labels.len());
    // Minimal generated neighborhood of each point: the intersection of all
    // subbase members containing it (the empty intersection is X). Every open
    // of the generated topology is a union of these.
    let minimal: Vec<Subset> = (0..labels.len())
        .map(|i| {
            family
                .iter()
                .filter(|&&s| s >> i & 1 == 1)
                .fold(full, |acc, &s| acc & s)
        })
        .collect();
    let space = FiniteSpace::new(labels, union_closure(&minimal))?;
    debug_assert!(space.verify().is_topology);
    Ok(space)
}

/// Computes all unions of `family` members (plus `∅`) and succeeds iff the
/// result is a topology, i.e. iff `family` really is a base. On failure the
/// error carries the witness set (an intersection, or a missing member) that
/// is not a union of family members.
pub fn generate_from_base<S: AsRef<str>>(
    points: &[S],
    family: &[Subset],
) -> Result<FiniteSpace, TopologyError> {
    let labels: Vec<String> = points.iter().map(|p| p.as_ref().to_owned()).collect();
    FiniteSpace::new(labels.clone(), family.to_vec())?;
    let space = FiniteSpace::new(labels, union_closure(family))?;
    let report = space.verify();
    match report.violations.first() {
        None => Ok(space),
        Some(v) => Err(TopologyError::NotABase {
            witness: *v.witnesses.last().expect("violation carries a witness"),
        }),
    }
}

impl FiniteSpace {
    /// Whether every nonempty open set is a union of members of `family`.
    /// Every member must itself be open.
    pub fn is_base_of(&self, family: &[Subset]) -> Result<bool, TopologyError> {
        for &b in family {
            if !self.is_open(b) {
                return Err(TopologyError::Domain(format!(
                    "base candidate {} is not an open set",
                    self.format_subset(b)
                )));
            }
        }
        Ok(self.opens.iter().all(|&w| {
            w == 0
                || family
                    .iter()
                    .filter(|&&b| b & !w == 0)
                    .fold(0, |acc, &b| acc | b)
                    == w
        }))
    }
}

/// The product space on ordered pairs, generated from the base of all
/// products `U × V` of opens. Pair `(i, j)` gets bit index `i·|s2| + j` and
/// the label `(p,q)`.
pub fn product_topology(
    s1: &FiniteSpace,
    s2: &FiniteSpace,
) -> Result<FiniteSpace, TopologyError> {
    let (n1, n2) = (s1.len(), s2.len());
    if n1.saturating_mul(n2) > MAX_POINTS {
        return Err(TopologyError::Capacity {
            given: n1 * n2,
            limit: MAX_POINTS,
        });
    }
    let mut points = Vec::with_capacity(n1 * n2);
    for p in s1.points() {
        for q in s2.points() {
            points.push(format!("({p},{q})"));
        }
    }
    let mut base = Vec::with_capacity(s1.opens.len() * s2.opens.len());
    for &u in &s1.opens {
        for &v in &s2.opens {
            let mut m = 0u64;
            for i in 0..n1 {
                if u >> i & 1 == 1 {
                    m |= v << (i * n2);
                }
            }
            base.push(m);
        }
    }
    // Products of opens form a base whenever the factors are topologies.
    generate_from_base(&points, &base)
}
