//! Maps between finite spaces: continuity, open/closed maps, homeomorphisms,
//! exhaustive homeomorphism search, and induced (push/pull) topologies.

use itertools::Itertools;

use super::{FiniteSpace, Subset, TopologyError, MAX_PUSHFORWARD_POINTS};

/// Cap for the factorial homeomorphism search.
pub const MAX_SEARCH_POINTS: usize = 8;

/// A total function between the point sets of two finite spaces.
/// `image[i]` is the target index of the image of source point `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMap {
    source: FiniteSpace,
    target: FiniteSpace,
    image: Vec<usize>,
}

impl FiniteMap {
    pub fn new(
        source: FiniteSpace,
        target: FiniteSpace,
        image: Vec<usize>,
    ) -> Result<Self, TopologyError> {
        if image.len() != source.len() || image.iter().any(|&t| t >= target.len()) {
            return Err(TopologyError::InvalidMap);
        }
        Ok(Self {
            source,
            target,
            image,
        })
    }

    /// Builds a map from `label -> label` pairs; every source point must be
    /// assigned exactly once.
    pub fn from_label_pairs(
        source: FiniteSpace,
        target: FiniteSpace,
        pairs: &[(String, String)],
    ) -> Result<Self, TopologyError> {
        let mut image = vec![usize::MAX; source.len()];
        for (from, to) in pairs {
            let i = source.point_index(from)?;
            let j = target.point_index(to)?;
            if image[i] != usize::MAX {
                return Err(TopologyError::Domain(format!(
                    "point `{from}` assigned twice"
                )));
            }
            image[i] = j;
        }
        if let Some(i) = image.iter().position(|&t| t == usize::MAX) {
            return Err(TopologyError::Domain(format!(
                "point `{}` has no assignment",
                source.points()[i]
            )));
        }
        Self::new(source, target, image)
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        Self {
            source: space.clone(),
            target: space.clone(),
            image: (0..space.len()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `f⁻¹(w)` as a source subset.
    pub fn preimage(&self, w: Subset) -> Subset {
        self.image
            .iter()
            .enumerate()
            .filter(|(_, &t)| w >> t & 1 == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// `f(a)` as a target subset.
    pub fn image_of(&self, a: Subset) -> Subset {
        self.image
            .iter()
            .enumerate()
            .filter(|(i, _)| a >> i & 1 == 1)
            .fold(0, |acc, (_, &t)| acc | 1 << t)
    }

    /// Global continuity: the preimage of every open set is open.
    pub fn is_continuous(&self) -> bool {
        self.target
            .opens()
            .iter()
            .all(|&w| self.source.is_open(self.preimage(w)))
    }

    /// The image of every open set is open.
    pub fn is_open_map(&self) -> bool {
        self.source
            .opens()
            .iter()
            .all(|&u| self.target.is_open(self.image_of(u)))
    }

    /// The image of every closed set is closed.
    pub fn is_closed_map(&self) -> bool {
        self.source.opens().iter().all(|&u| {
            let closed = self.source.complement(u);
            self.target.is_closed(self.image_of(closed))
        })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut hit = vec![false; self.target.len()];
        for &t in &self.image {
            if hit[t] {
                return false;
            }
            hit[t] = true;
        }
        true
    }

    /// The inverse map, when this map is bijective.
    pub fn inverse(&self) -> Option<FiniteMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut image = vec![0; self.source.len()];
        for (i, &t) in self.image.iter().enumerate() {
            image[t] = i;
        }
        Some(FiniteMap {
            source: self.target.clone(),
            target: self.source.clone(),
            image,
        })
    }

    /// Bijective, continuous, and with a continuous inverse.
    pub fn is_homeomorphism(&self) -> bool {
        match self.inverse() {
            Some(inv) => self.is_continuous() && inv.is_continuous(),
            None => false,
        }
    }

    /// `g ∘ self`, defined when `self.target == g.source` as spaces.
    pub fn compose(&self, g: &FiniteMap) -> Result<FiniteMap, TopologyError> {
        if self.target != g.source {
            return Err(TopologyError::Domain(
                "composition requires matching middle space".into(),
            ));
        }
        let image = self.image.iter().map(|&t| g.image[t]).collect();
        FiniteMap::new(self.source.clone(), g.target.clone(), image)
    }
}

/// Exhaustively searches for a homeomorphism between two spaces, trying
/// bijections in lexicographic order of the target permutation and returning
/// the first hit. Spaces with different open-set counts are rejected without
/// search. Limited to 8 points per space.
pub fn find_homeomorphism(
    s1: &FiniteSpace,
    s2: &FiniteSpace,
) -> Result<Option<FiniteMap>, TopologyError> {
    let n = s1.len().max(s2.len());
    if n > MAX_SEARCH_POINTS {
        return Err(TopologyError::SearchLimit(n, MAX_SEARCH_POINTS));
    }
    if s1.len() != s2.len() || s1.opens().len() != s2.opens().len() {
        return Ok(None);
    }
    for perm in (0..s2.len()).permutations(s2.len()) {
        let m = FiniteMap::new(s1.clone(), s2.clone(), perm)?;
        if m.is_homeomorphism() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// The finest topology on `target_points` making `f` continuous:
/// `{w : f⁻¹(w) open in source}`. Scans all subsets of the target, so the
/// target is capped at 20 points.
pub fn induced_pushforward<S: AsRef<str>>(
    f: &[usize],
    source: &FiniteSpace,
    target_points: &[S],
) -> Result<FiniteSpace, TopologyError> {
    let t = target_points.len();
    if t > MAX_PUSHFORWARD_POINTS {
        return Err(TopologyError::Capacity {
            given: t,
            limit: MAX_PUSHFORWARD_POINTS,
        });
    }
    if f.len() != source.len() || f.iter().any(|&j| j >= t) {
        return Err(TopologyError::InvalidMap);
    }
    let full: Subset = if t == 0 { 0 } else { u64::MAX >> (64 - t) };
    let opens = (0..=full)
        .filter(|w| {
            let pre = f
                .iter()
                .enumerate()
                .filter(|(_, &j)| w >> j & 1 == 1)
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            source.is_open(pre)
        })
        .collect();
    let labels: Vec<String> = target_points.iter().map(|p| p.as_ref().to_owned()).collect();
    let space = FiniteSpace::new(labels, opens)?;
    debug_assert!(space.verify().is_topology);
    Ok(space)
}

/// The coarsest topology on `source_points` making `f` continuous:
/// `{f⁻¹(V) : V open in target}`.
pub fn induced_pullback<S: AsRef<str>>(
    f: &[usize],
    source_points: &[S],
    target: &FiniteSpace,
) -> Result<FiniteSpace, TopologyError> {
    if f.len() != source_points.len() || f.iter().any(|&j| j >= target.len()) {
        return Err(TopologyError::InvalidMap);
    }
    let opens = target
        .opens()
        .iter()
        .map(|&v| {
            f.iter()
                .enumerate()
                .filter(|(_, &j)| v >> j & 1 == 1)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let labels: Vec<String> = source_points.iter().map(|p| p.as_ref().to_owned()).collect();
    let space = FiniteSpace::new(labels, opens)?;
    debug_assert!(space.verify().is_topology);
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn maps_from_discrete_sources_are_continuous() {
        let d = FiniteSpace::discrete(labels(&["a", "b", "c"])).unwrap();
        let s = FiniteSpace::sierpinski();
        for img in [[0, 0, 1], [1, 1, 1], [0, 1, 0]] {
            let m = FiniteMap::new(d.clone(), s.clone(), img.to_vec()).unwrap();
            assert!(m.is_continuous());
        }
    }

    #[test]
    fn maps_into_trivial_targets_are_continuous() {
        let s = FiniteSpace::sierpinski();
        let t = FiniteSpace::trivial(labels(&["p", "q"])).unwrap();
        for img in [[0, 0], [0, 1], [1, 0]] {
            let m = FiniteMap::new(s.clone(), t.clone(), img.to_vec()).unwrap();
            assert!(m.is_continuous());
        }
    }

    #[test]
    fn identity_continuity_detects_topology_refinement() {
        // id: (X, τ₂) → (X, τ₁) is continuous iff τ₁ ⊆ τ₂.
        let sierpinski = FiniteSpace::sierpinski();
        let trivial =
            FiniteSpace::new(labels(&["1", "2"]), vec![0b00, 0b11]).unwrap();
        let fine_to_coarse =
            FiniteMap::new(sierpinski.clone(), trivial.clone(), vec![0, 1]).unwrap();
        assert!(fine_to_coarse.is_continuous());
        let coarse_to_fine = FiniteMap::new(trivial, sierpinski, vec![0, 1]).unwrap();
        assert!(!coarse_to_fine.is_continuous());
    }

    #[test]
    fn continuity_iff_closed_preimages() {
        let spaces = [
            FiniteSpace::sierpinski(),
            FiniteSpace::discrete(labels(&["1", "2"])).unwrap(),
            FiniteSpace::trivial(labels(&["1", "2"])).unwrap(),
        ];
        for src in &spaces {
            for dst in &spaces {
                for img in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                    let m = FiniteMap::new(src.clone(), dst.clone(), img.to_vec()).unwrap();
                    let closed_version = dst.opens().iter().all(|&w| {
                        let closed = dst.complement(w);
                        m.source().is_closed(m.preimage(closed))
                    });
                    assert_eq!(m.is_continuous(), closed_version);
                }
            }
        }
    }

    #[test]
    fn bijection_equivalences_exhaustive_on_three_points() {
        // For bijective f: continuous ⇔ f⁻¹ open ⇔ f⁻¹ closed.
        let spaces: Vec<FiniteSpace> = crate::topology::enumerate_topologies(3).unwrap();
        for s1 in &spaces {
            for s2 in &spaces {
                for perm in (0..3).permutations(3) {
                    let m = FiniteMap::new(s1.clone(), s2.clone(), perm).unwrap();
                    let inv = m.inverse().unwrap();
                    assert_eq!(m.is_continuous(), inv.is_open_map());
                    assert_eq!(m.is_continuous(), inv.is_closed_map());
                    assert_eq!(m.is_open_map(), inv.is_continuous());
                }
            }
        }
    }

    #[test]
    fn homeomorphism_search_finds_witness() {
        let a = FiniteSpace::sierpinski();
        // Sierpinski with the roles of the points swapped: open point is `b`.
        let b = FiniteSpace::new(labels(&["a", "b"]), vec![0b00, 0b10, 0b11]).unwrap();
        let found = find_homeomorphism(&a, &b).unwrap().unwrap();
        assert_eq!(found.image(), &[1, 0]);
        assert!(found.is_homeomorphism());
    }

    #[test]
    fn homeomorphism_search_rejects_on_open_count() {
        let a = FiniteSpace::sierpinski();
        let b = FiniteSpace::trivial(labels(&["1", "2"])).unwrap();
        assert!(find_homeomorphism(&a, &b).unwrap().is_none());
    }

    #[test]
    fn homeomorphism_search_identity_on_identical_spaces() {
        let a = FiniteSpace::sierpinski();
        let found = find_homeomorphism(&a, &a).unwrap().unwrap();
        assert_eq!(found.image(), &[0, 1]);
    }

    #[test]
    fn homeomorphism_search_size_limit() {
        let points: Vec<String> = (0..9).map(|i| i.to_string()).collect();
        let a = FiniteSpace::trivial(points).unwrap();
        assert!(matches!(
            find_homeomorphism(&a, &a),
            Err(TopologyError::SearchLimit(9, 8))
        ));
    }

    #[test]
    fn pushforward_of_identity_recovers_topology() {
        let s = FiniteSpace::sierpinski();
        let t = induced_pushforward(&[0, 1], &s, s.points()).unwrap();
        assert_eq!(t.opens(), s.opens());
    }

    #[test]
    fn pushforward_along_constant_map_is_trivial() {
        let s = FiniteSpace::sierpinski();
        let t = induced_pushforward(&[0, 0], &s, &["p"]).unwrap();
        assert_eq!(t.opens(), &[0b0, 0b1]);
    }

    #[test]
    fn pullback_along_inclusion_is_relative_topology() {
        let s = FiniteSpace::new(
            labels(&["1", "2", "3"]),
            vec![0b000, 0b001, 0b110, 0b111],
        )
        .unwrap();
        let incl = [0usize, 1];
        let pulled = induced_pullback(&incl, &["1", "2"], &s).unwrap();
        let relative = s.relative(0b011);
        assert_eq!(pulled.opens(), relative.opens());
    }

    #[test]
    fn induced_maps_are_continuous() {
        let s = FiniteSpace::sierpinski();
        let f = [0usize, 0];
        let push = induced_pushforward(&f, &s, &["p"]).unwrap();
        let m = FiniteMap::new(s.clone(), push, f.to_vec()).unwrap();
        assert!(m.is_continuous());

        let g = [1usize, 0, 1];
        let pull = induced_pullback(&g, &["x", "y", "z"], &s).unwrap();
        let m = FiniteMap::new(pull, s, g.to_vec()).unwrap();
        assert!(m.is_continuous());
    }

    #[test]
    fn projections_from_products_are_continuous() {
        let s = FiniteSpace::sierpinski();
        let p = crate::topology::product_topology(&s, &s).unwrap();
        let n2 = s.len();
        let p1: Vec<usize> = (0..p.len()).map(|k| k / n2).collect();
        let p2: Vec<usize> = (0..p.len()).map(|k| k % n2).collect();
        assert!(FiniteMap::new(p.clone(), s.clone(), p1).unwrap().is_continuous());
        assert!(FiniteMap::new(p, s, p2).unwrap().is_continuous());
    }
}
