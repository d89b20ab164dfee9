//! Maintained independent set `M` with per-vertex counts and IS-neighbor
//! lists, the `move_in`/`move_out` primitives, and the plain dynamic
//! maximal-independent-set update.

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::graph::{DynamicGraph, GraphError, UpdateOp, VertexId};
use crate::hierarchy::{CandidateHierarchy, FxIndexSet, KeySet};

#[derive(Debug, Clone, Default)]
struct VertexState {
    in_set: bool,
    /// Neighbors currently in `M`; its length is the vertex's count.
    is_nbrs: FxIndexSet<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InitError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("initial set is not independent: edge ({0}, {1})")]
    NotIndependent(VertexId, VertexId),
}

/// What a single topology update did to `M`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UpdateEffect {
    /// Vertices whose count decreased.
    pub decreased: Vec<VertexId>,
    /// The vertex that left `M`, if any (at most one per update).
    pub left_set: Option<VertexId>,
    /// Vertices that joined `M` while restoring maximality.
    pub joined_set: Vec<VertexId>,
}

#[derive(Debug, Clone)]
pub struct MaintainerState {
    verts: FxHashMap<VertexId, VertexState>,
    size: usize,
    hierarchy: CandidateHierarchy,
    /// Vertices newly added to some logical candidate set since last drain.
    entered: Vec<VertexId>,
    /// Adjacency entries visited by the primitives and swap tests.
    work: u64,
}

impl MaintainerState {
    /// Empty state for `g` with candidate levels `1..=max_level`; every
    /// vertex starts outside `M` with count 0.
    pub fn new(g: &DynamicGraph, max_level: usize) -> Self {
        let verts = g.vertices().map(|v| (v, VertexState::default())).collect();
        Self {
            verts,
            size: 0,
            hierarchy: CandidateHierarchy::new(max_level),
            entered: Vec::new(),
            work: 0,
        }
    }

    /// State whose `M` is `initial`, then extended greedily to a maximal
    /// set in ascending id order.
    pub fn with_initial_set(
        g: &DynamicGraph,
        initial: &[VertexId],
        max_level: usize,
    ) -> Result<Self, InitError> {
        let mut st = Self::new(g, max_level);
        let mut sorted = initial.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            if !g.contains_vertex(v) {
                return Err(InitError::UnknownVertex(v));
            }
            if let Some(&u) = st.verts[&v].is_nbrs.first() {
                return Err(InitError::NotIndependent(u.min(v), u.max(v)));
            }
            st.move_in(g, v);
        }
        st.extend_maximal(g, g.sorted_vertices());
        Ok(st)
    }

    pub fn max_level(&self) -> usize {
        self.hierarchy.max_level()
    }

    pub fn hierarchy(&self) -> &CandidateHierarchy {
        &self.hierarchy
    }

    pub fn in_set(&self, v: VertexId) -> bool {
        self.verts.get(&v).is_some_and(|s| s.in_set)
    }

    pub fn count(&self, v: VertexId) -> usize {
        self.verts.get(&v).map_or(0, |s| s.is_nbrs.len())
    }

    /// IS-neighbors of `v` in insertion order.
    pub fn is_nbrs(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.verts.get(&v).into_iter().flat_map(|s| s.is_nbrs.iter().copied())
    }

    /// IS-neighborhood of `v` as a key.
    pub fn key(&self, v: VertexId) -> KeySet {
        KeySet::new(self.is_nbrs(v))
    }

    pub fn set_size(&self) -> usize {
        self.size
    }

    /// Members of `M`, ascending.
    pub fn members(&self) -> Vec<VertexId> {
        let mut out: Vec<_> = self
            .verts
            .iter()
            .filter(|(_, s)| s.in_set)
            .map(|(&v, _)| v)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn work(&self) -> u64 {
        self.work
    }

    pub(crate) fn add_work(&mut self, amount: usize) {
        self.work += amount as u64;
    }

    pub(crate) fn take_entered(&mut self) -> Vec<VertexId> {
        std::mem::take(&mut self.entered)
    }

    /// Recomputes the hierarchy position of non-member `u` from its count.
    fn reposition(&mut self, u: VertexId) {
        let k = self.hierarchy.max_level();
        if k == 0 {
            return;
        }
        let s = &self.verts[&u];
        let c = s.is_nbrs.len();
        let new_key = (!s.in_set && (1..=k).contains(&c)).then(|| KeySet::new(s.is_nbrs.iter().copied()));
        if new_key.is_none() && self.hierarchy.key_of(u).is_none() {
            return;
        }
        if self.hierarchy.relocate(u, new_key) {
            self.entered.push(u);
        }
    }

    fn add_is_nbr(&mut self, u: VertexId, m: VertexId) {
        let inserted = self.verts.get_mut(&u).expect("vertex tracked").is_nbrs.insert(m);
        debug_assert!(inserted, "{m} already an IS-neighbor of {u}");
        self.reposition(u);
    }

    fn remove_is_nbr(&mut self, u: VertexId, m: VertexId) {
        let removed = self.verts.get_mut(&u).expect("vertex tracked").is_nbrs.swap_remove(&m);
        debug_assert!(removed, "{m} not an IS-neighbor of {u}");
        self.reposition(u);
    }

    /// Inserts `v` into `M`, updating every neighbor's count, IS-neighbor
    /// list and hierarchy position.
    pub fn move_in(&mut self, g: &DynamicGraph, v: VertexId) {
        let s = self.verts.get_mut(&v).expect("vertex tracked");
        assert!(!s.in_set, "move_in: {v} already in M");
        assert!(s.is_nbrs.is_empty(), "move_in: {v} has an IS-neighbor");
        s.in_set = true;
        self.size += 1;
        self.hierarchy.relocate(v, None);
        let nbrs = g.neighbor_set(v).expect("vertex in graph");
        self.work += nbrs.len() as u64;
        for &u in nbrs {
            self.add_is_nbr(u, v);
        }
    }

    /// Removes `v` from `M`. Does not restore maximality.
    pub fn move_out(&mut self, g: &DynamicGraph, v: VertexId) {
        let s = self.verts.get_mut(&v).expect("vertex tracked");
        assert!(s.in_set, "move_out: {v} not in M");
        s.in_set = false;
        self.size -= 1;
        let nbrs = g.neighbor_set(v).expect("vertex in graph");
        self.work += nbrs.len() as u64;
        for &u in nbrs {
            self.remove_is_nbr(u, v);
        }
    }

    /// Moves every count-0 non-member of `scope` into `M`, in the given
    /// order. Returns the vertices that joined.
    pub fn extend_maximal(
        &mut self,
        g: &DynamicGraph,
        scope: impl IntoIterator<Item = VertexId>,
    ) -> Vec<VertexId> {
        let mut joined = Vec::new();
        for w in scope {
            if let Some(s) = self.verts.get(&w) {
                if !s.in_set && s.is_nbrs.is_empty() {
                    self.move_in(g, w);
                    joined.push(w);
                }
            }
        }
        joined
    }

    /// Applies `op` to `g` and restores `M` to a maximal independent set.
    ///
    /// The graph and state are untouched when `op` is invalid.
    pub fn simple_update(
        &mut self,
        g: &mut DynamicGraph,
        op: &UpdateOp,
    ) -> Result<UpdateEffect, GraphError> {
        g.check(op)?;
        let mut eff = UpdateEffect::default();
        match op {
            UpdateOp::AddVertex(v, nbrs) => {
                g.add_vertex_unchecked(*v, nbrs);
                let is_nbrs: FxIndexSet<_> =
                    nbrs.iter().copied().filter(|&u| self.in_set(u)).collect();
                self.work += nbrs.len() as u64;
                let empty = is_nbrs.is_empty();
                self.verts.insert(*v, VertexState { in_set: false, is_nbrs });
                if empty {
                    self.move_in(g, *v);
                    eff.joined_set.push(*v);
                } else {
                    self.reposition(*v);
                }
            }
            UpdateOp::RemoveVertex(v) => {
                let was_in = self.in_set(*v);
                let mut nbrs = Vec::new();
                if was_in {
                    self.move_out(g, *v);
                    nbrs = g.sorted_neighbors(*v);
                    eff.left_set = Some(*v);
                    eff.decreased = nbrs.clone();
                }
                self.hierarchy.relocate(*v, None);
                self.verts.remove(v);
                g.remove_vertex_unchecked(*v);
                eff.joined_set = self.extend_maximal(g, nbrs);
            }
            UpdateOp::AddEdge(u, v) => {
                let (u, v) = (*u, *v);
                if self.in_set(u) && self.in_set(v) {
                    let (evict, keep) = self.eviction_order(g, u, v);
                    self.move_out(g, evict);
                    eff.left_set = Some(evict);
                    let nbrs = g.sorted_neighbors(evict);
                    eff.decreased = nbrs.clone();
                    g.add_edge_unchecked(u, v);
                    self.add_is_nbr(evict, keep);
                    eff.joined_set = self.extend_maximal(g, nbrs);
                } else {
                    g.add_edge_unchecked(u, v);
                    if self.in_set(u) {
                        self.add_is_nbr(v, u);
                    }
                    if self.in_set(v) {
                        self.add_is_nbr(u, v);
                    }
                }
            }
            UpdateOp::RemoveEdge(u, v) => {
                let (u, v) = (*u, *v);
                g.remove_edge_unchecked(u, v);
                let member = if self.in_set(u) {
                    Some((u, v))
                } else if self.in_set(v) {
                    Some((v, u))
                } else {
                    None
                };
                if let Some((m, other)) = member {
                    self.remove_is_nbr(other, m);
                    eff.decreased.push(other);
                    eff.joined_set = self.extend_maximal(g, [other]);
                }
            }
        }
        Ok(eff)
    }

    /// Endpoint to evict when an edge joins two members: larger current
    /// degree first, ties to the smaller id.
    fn eviction_order(&self, g: &DynamicGraph, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        let key = |x: VertexId| (std::cmp::Reverse(g.degree(x)), x);
        if key(u) <= key(v) {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// Recomputes everything from scratch and compares with the maintained
    /// state. With `at_rest`, also requires `M` to be maximal.
    pub fn audit(&self, g: &DynamicGraph, at_rest: bool) -> Result<(), String> {
        if self.verts.len() != g.num_vertices() {
            return Err(format!(
                "tracking {} vertices, graph has {}",
                self.verts.len(),
                g.num_vertices()
            ));
        }
        let mut size = 0;
        for (&v, s) in &self.verts {
            if !g.contains_vertex(v) {
                return Err(format!("tracked vertex {v} missing from graph"));
            }
            let mut expect: Vec<_> = g.neighbors(v).filter(|&u| self.in_set(u)).collect();
            let mut have: Vec<_> = s.is_nbrs.iter().copied().collect();
            expect.sort_unstable();
            have.sort_unstable();
            if expect != have {
                return Err(format!("IS-neighbors of {v}: have {have:?}, expected {expect:?}"));
            }
            if s.in_set {
                size += 1;
                if !have.is_empty() {
                    return Err(format!("member {v} has IS-neighbors {have:?}"));
                }
            } else if at_rest && have.is_empty() {
                return Err(format!("non-member {v} has count 0; M not maximal"));
            }
        }
        if size != self.size {
            return Err(format!("size counter {} but {size} members", self.size));
        }
        let k = self.max_level();
        let mut rebuilt = CandidateHierarchy::new(k);
        let mut ids: Vec<_> = self.verts.keys().copied().collect();
        ids.sort_unstable();
        for v in ids {
            let c = self.count(v);
            if !self.in_set(v) && (1..=k).contains(&c) {
                rebuilt.relocate(v, Some(self.key(v)));
            }
        }
        if rebuilt.snapshot() != self.hierarchy.snapshot() {
            return Err("candidate hierarchy differs from a from-scratch rebuild".into());
        }
        Ok(())
    }

    /// Sizes of the count classes: entry `i` is the number of non-members
    /// with count `i` (entry 0 included).
    pub fn count_partition(&self) -> Vec<usize> {
        let mut out = vec![0usize; 1];
        for s in self.verts.values().filter(|s| !s.in_set) {
            let c = s.is_nbrs.len();
            if out.len() <= c {
                out.resize(c + 1, 0);
            }
            out[c] += 1;
        }
        out
    }
}
