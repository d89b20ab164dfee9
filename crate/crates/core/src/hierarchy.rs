//! Candidate hierarchy: every non-member whose IS-neighborhood has size
//! `1..=k` is stored in exactly one list, keyed by that IS-neighborhood.
//!
//! The stored list for key `S` holds the vertices whose IS-neighborhood is
//! exactly `S`. The logical candidate set of `S` is the union of the stored
//! lists of all nonempty subsets of `S`.

use std::fmt;

use indexmap::IndexSet;
use rustc_hash::{FxBuildHasher, FxHashMap};
use smallvec::SmallVec;

use crate::graph::VertexId;

pub(crate) type FxIndexSet<T> = IndexSet<T, FxBuildHasher>;

/// Sorted set of independent-set vertices used as a hierarchy key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct KeySet(SmallVec<[VertexId; 2]>);

impl KeySet {
    pub fn new(ids: impl IntoIterator<Item = VertexId>) -> Self {
        let mut v: SmallVec<[VertexId; 2]> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        KeySet(v)
    }

    pub fn single(v: VertexId) -> Self {
        KeySet(smallvec::smallvec![v])
    }

    pub fn pair(a: VertexId, b: VertexId) -> Self {
        Self::new([a, b])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &KeySet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    /// All nonempty subsets, smallest first.
    pub fn nonempty_subsets(&self) -> Vec<KeySet> {
        let n = self.0.len();
        let mut out: Vec<KeySet> = (1u32..(1 << n))
            .map(|mask| {
                KeySet(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect();
        out.sort_by_key(|k| k.len());
        out
    }
}

impl fmt::Debug for KeySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

#[derive(Debug, Clone)]
pub struct CandidateHierarchy {
    max_level: usize,
    /// `levels[j - 1]` maps a key of size `j` to its stored list.
    levels: Vec<FxHashMap<KeySet, FxIndexSet<VertexId>>>,
    position: FxHashMap<VertexId, KeySet>,
}

impl CandidateHierarchy {
    pub fn new(max_level: usize) -> Self {
        Self {
            max_level,
            levels: vec![FxHashMap::default(); max_level],
            position: FxHashMap::default(),
        }
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    /// Current key of `u`, if stored.
    pub fn key_of(&self, u: VertexId) -> Option<&KeySet> {
        self.position.get(&u)
    }

    /// Stored list for `key` (vertices whose IS-neighborhood is exactly `key`).
    pub fn list(&self, key: &KeySet) -> Option<&FxIndexSet<VertexId>> {
        if key.is_empty() || key.len() > self.max_level {
            return None;
        }
        self.levels[key.len() - 1].get(key)
    }

    pub fn list_len(&self, key: &KeySet) -> usize {
        self.list(key).map_or(0, |l| l.len())
    }

    /// Iterates over stored `(key, list)` pairs at `level`.
    pub fn level(&self, level: usize) -> impl Iterator<Item = (&KeySet, &FxIndexSet<VertexId>)> {
        self.levels
            .get(level.wrapping_sub(1))
            .into_iter()
            .flat_map(|m| m.iter())
    }

    /// Number of stored vertices.
    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    /// Membership in the logical candidate set of `key`.
    pub fn in_logical(&self, u: VertexId, key: &KeySet) -> bool {
        self.position.get(&u).is_some_and(|k| k.is_subset_of(key))
    }

    /// Logical candidate set of `key`: union of the stored lists of all its
    /// nonempty subsets.
    pub fn logical_candidates(&self, key: &KeySet) -> Vec<VertexId> {
        key.nonempty_subsets()
            .iter()
            .filter_map(|s| self.list(s))
            .flat_map(|l| l.iter().copied())
            .collect()
    }

    /// Moves `u` to `new_key` (`None` evicts it). Returns true when `u` was
    /// newly added to some logical candidate set, i.e. it was unstored
    /// before or its old key is not a subset of the new one.
    pub fn relocate(&mut self, u: VertexId, new_key: Option<KeySet>) -> bool {
        let new_key = new_key.filter(|k| !k.is_empty() && k.len() <= self.max_level);
        if self.position.get(&u) == new_key.as_ref() {
            return false;
        }
        let old = self.position.remove(&u);
        if let Some(old) = &old {
            let level = &mut self.levels[old.len() - 1];
            let list = level.get_mut(old).expect("position index out of sync");
            let removed = list.swap_remove(&u);
            debug_assert!(removed, "position index out of sync");
            if list.is_empty() {
                level.remove(old);
            }
        }
        match new_key {
            Some(new) => {
                let entered = old.as_ref().is_none_or(|o| !o.is_subset_of(&new));
                self.levels[new.len() - 1]
                    .entry(new.clone())
                    .or_default()
                    .insert(u);
                self.position.insert(u, new);
                entered
            }
            None => false,
        }
    }

    /// Largest stored list per level, for memory reporting.
    pub fn peak_list_sizes(&self) -> Vec<usize> {
        self.levels
            .iter()
            .map(|m| m.values().map(|l| l.len()).max().unwrap_or(0))
            .collect()
    }

    /// Snapshot as sorted `(key, sorted members)` pairs; used by audits.
    pub fn snapshot(&self) -> Vec<(KeySet, Vec<VertexId>)> {
        let mut out: Vec<_> = self
            .levels
            .iter()
            .flat_map(|m| m.iter())
            .map(|(k, l)| {
                let mut members: Vec<_> = l.iter().copied().collect();
                members.sort_unstable();
                (k.clone(), members)
            })
            .collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enters_level_one_when_count_drops_to_one() {
        let mut h = CandidateHierarchy::new(1);
        assert!(h.relocate(5, Some(KeySet::single(1))));
        assert_eq!(h.key_of(5), Some(&KeySet::single(1)));
        assert_eq!(h.list_len(&KeySet::single(1)), 1);
    }

    #[test]
    fn evicted_when_count_exceeds_k() {
        let mut h = CandidateHierarchy::new(1);
        h.relocate(5, Some(KeySet::single(1)));
        assert!(!h.relocate(5, Some(KeySet::pair(1, 2))));
        assert!(h.key_of(5).is_none());
        assert!(h.list(&KeySet::single(1)).is_none());
    }

    #[test]
    fn level_two_shrinks_to_level_one() {
        let mut h = CandidateHierarchy::new(2);
        h.relocate(5, Some(KeySet::pair(1, 2)));
        assert!(h.relocate(5, Some(KeySet::single(2))));
        assert_eq!(h.key_of(5), Some(&KeySet::single(2)));
        assert!(h.list(&KeySet::pair(1, 2)).is_none());
    }

    #[test]
    fn growth_into_superset_is_not_an_entry() {
        let mut h = CandidateHierarchy::new(2);
        h.relocate(5, Some(KeySet::single(1)));
        assert!(!h.relocate(5, Some(KeySet::pair(1, 2))));
        assert!(h.relocate(5, Some(KeySet::pair(2, 3))));
    }

    #[test]
    fn logical_union_of_subsets() {
        let mut h = CandidateHierarchy::new(2);
        h.relocate(10, Some(KeySet::single(1)));
        h.relocate(11, Some(KeySet::single(2)));
        h.relocate(12, Some(KeySet::pair(1, 2)));
        h.relocate(13, Some(KeySet::pair(1, 3)));
        let mut c = h.logical_candidates(&KeySet::pair(1, 2));
        c.sort();
        assert_eq!(c, vec![10, 11, 12]);
        assert!(h.in_logical(13, &KeySet::pair(1, 3)));
        assert!(!h.in_logical(13, &KeySet::pair(1, 2)));
    }

    #[test]
    fn subsets_sorted_by_size() {
        let s = KeySet::new([3, 1, 2]).nonempty_subsets();
        assert_eq!(s.len(), 7);
        assert!(s.windows(2).all(|w| w[0].len() <= w[1].len()));
    }
}
