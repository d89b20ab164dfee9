//! Mutable undirected simple graph with hashed adjacency sets, plus the
//! update operations that drive a dynamic graph sequence.

mod parse;

pub use parse::{
    parse_graph, parse_ops, parse_vertex_set, write_graph, write_ops, write_vertex_set,
    ParseError,
};

use std::fmt;

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

/// Vertex identifier. Ids are sparse; a removed id may be re-added later.
pub type VertexId = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexId),
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("edge ({0}, {1}) already exists")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) does not exist")]
    UnknownEdge(VertexId, VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
}

/// Whether invalid update operations abort (`Strict`) or are skipped (`Lenient`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    #[default]
    Strict,
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    AddVertex,
    RemoveVertex,
    AddEdge,
    RemoveEdge,
}

impl OpKind {
    pub const ALL: [OpKind; 4] = [
        OpKind::AddVertex,
        OpKind::RemoveVertex,
        OpKind::AddEdge,
        OpKind::RemoveEdge,
    ];

    /// Short mnemonic used in op-stream files and metrics output.
    pub fn mnemonic(self) -> &'static str {
        match self {
            OpKind::AddVertex => "av",
            OpKind::RemoveVertex => "rv",
            OpKind::AddEdge => "ae",
            OpKind::RemoveEdge => "re",
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// One topology change. A vertex insertion carries its full adjacency list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UpdateOp {
    AddVertex(VertexId, Vec<VertexId>),
    RemoveVertex(VertexId),
    AddEdge(VertexId, VertexId),
    RemoveEdge(VertexId, VertexId),
}

impl UpdateOp {
    pub fn kind(&self) -> OpKind {
        match self {
            UpdateOp::AddVertex(..) => OpKind::AddVertex,
            UpdateOp::RemoveVertex(_) => OpKind::RemoveVertex,
            UpdateOp::AddEdge(..) => OpKind::AddEdge,
            UpdateOp::RemoveEdge(..) => OpKind::RemoveEdge,
        }
    }
}

impl fmt::Display for UpdateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpdateOp::AddVertex(v, nbrs) => {
                write!(f, "av {v} {}", nbrs.len())?;
                for u in nbrs {
                    write!(f, " {u}")?;
                }
                Ok(())
            }
            UpdateOp::RemoveVertex(v) => write!(f, "rv {v}"),
            UpdateOp::AddEdge(u, v) => write!(f, "ae {u} {v}"),
            UpdateOp::RemoveEdge(u, v) => write!(f, "re {u} {v}"),
        }
    }
}

/// Undirected simple graph keyed by sparse vertex ids.
///
/// Invariants: adjacency is symmetric, there are no self-loops, and
/// `num_edges` equals half the sum of all adjacency set sizes.
#[derive(Debug, Clone, Default)]
pub struct DynamicGraph {
    adj: FxHashMap<VertexId, FxHashSet<VertexId>>,
    num_edges: usize,
}

impl PartialEq for DynamicGraph {
    fn eq(&self, other: &Self) -> bool {
        self.num_edges == other.num_edges && self.adj == other.adj
    }
}

impl Eq for DynamicGraph {}

impl DynamicGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on `vertices` with no edges.
    pub fn edgeless(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut g = Self::new();
        for v in vertices {
            g.adj.entry(v).or_default();
        }
        g
    }

    /// Builds a graph from an edge list, creating endpoints on demand.
    pub fn from_edges(edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for (u, v) in edges {
            g.ensure_vertex(u);
            g.ensure_vertex(v);
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |n| n.len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|n| n.len()).max().unwrap_or(0)
    }

    /// Neighbor set of `v`; empty for unknown vertices.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn neighbor_set(&self, v: VertexId) -> Option<&FxHashSet<VertexId>> {
        self.adj.get(&v)
    }

    /// Neighbors of `v` in ascending id order.
    pub fn sorted_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<_> = self.neighbors(v).collect();
        out.sort_unstable();
        out
    }

    /// Vertices in unspecified (but deterministic) order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn sorted_vertices(&self) -> Vec<VertexId> {
        let mut out: Vec<_> = self.vertices().collect();
        out.sort_unstable();
        out
    }

    /// Every edge once as `(min, max)`, sorted.
    pub fn sorted_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self
            .adj
            .iter()
            .flat_map(|(&u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Checks every precondition of `op` without mutating anything.
    pub fn check(&self, op: &UpdateOp) -> Result<(), GraphError> {
        match op {
            UpdateOp::AddVertex(v, nbrs) => {
                if self.contains_vertex(*v) {
                    return Err(GraphError::DuplicateVertex(*v));
                }
                let mut seen = FxHashSet::default();
                for &u in nbrs {
                    if u == *v {
                        return Err(GraphError::SelfLoop(u));
                    }
                    if !self.contains_vertex(u) {
                        return Err(GraphError::UnknownVertex(u));
                    }
                    if !seen.insert(u) {
                        return Err(GraphError::DuplicateEdge(*v, u));
                    }
                }
                Ok(())
            }
            UpdateOp::RemoveVertex(v) => {
                if self.contains_vertex(*v) {
                    Ok(())
                } else {
                    Err(GraphError::UnknownVertex(*v))
                }
            }
            UpdateOp::AddEdge(u, v) => {
                if u == v {
                    return Err(GraphError::SelfLoop(*u));
                }
                for w in [*u, *v] {
                    if !self.contains_vertex(w) {
                        return Err(GraphError::UnknownVertex(w));
                    }
                }
                if self.has_edge(*u, *v) {
                    return Err(GraphError::DuplicateEdge(*u, *v));
                }
                Ok(())
            }
            UpdateOp::RemoveEdge(u, v) => {
                if u == v {
                    return Err(GraphError::SelfLoop(*u));
                }
                if self.has_edge(*u, *v) {
                    Ok(())
                } else {
                    Err(GraphError::UnknownEdge(*u, *v))
                }
            }
        }
    }

    /// Applies `op` and returns the operation that undoes it.
    ///
    /// The graph is left untouched when the op is invalid.
    pub fn apply(&mut self, op: &UpdateOp) -> Result<UpdateOp, GraphError> {
        self.check(op)?;
        Ok(match op {
            UpdateOp::AddVertex(v, nbrs) => {
                self.add_vertex_unchecked(*v, nbrs);
                UpdateOp::RemoveVertex(*v)
            }
            UpdateOp::RemoveVertex(v) => {
                let mut nbrs = self.remove_vertex_unchecked(*v);
                nbrs.sort_unstable();
                UpdateOp::AddVertex(*v, nbrs)
            }
            UpdateOp::AddEdge(u, v) => {
                self.add_edge_unchecked(*u, *v);
                UpdateOp::RemoveEdge(*u, *v)
            }
            UpdateOp::RemoveEdge(u, v) => {
                self.remove_edge_unchecked(*u, *v);
                UpdateOp::AddEdge(*u, *v)
            }
        })
    }

    /// Strict mode returns the error; lenient mode turns an invalid op into
    /// a no-op and reports it as `Ok(None)`.
    pub fn apply_with(
        &mut self,
        op: &UpdateOp,
        strictness: Strictness,
    ) -> Result<Option<UpdateOp>, GraphError> {
        match (self.apply(op), strictness) {
            (Ok(inv), _) => Ok(Some(inv)),
            (Err(_), Strictness::Lenient) => Ok(None),
            (Err(e), Strictness::Strict) => Err(e),
        }
    }

    pub(crate) fn ensure_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    pub(crate) fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.ensure_vertex(u);
        self.ensure_vertex(v);
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    pub(crate) fn add_vertex_unchecked(&mut self, v: VertexId, nbrs: &[VertexId]) {
        self.adj.insert(v, nbrs.iter().copied().collect());
        for &u in nbrs {
            self.adj.get_mut(&u).expect("neighbor exists").insert(v);
        }
        self.num_edges += nbrs.len();
    }

    pub(crate) fn remove_vertex_unchecked(&mut self, v: VertexId) -> Vec<VertexId> {
        let nbrs = self.adj.remove(&v).expect("vertex exists");
        for u in &nbrs {
            self.adj.get_mut(u).expect("neighbor exists").remove(&v);
        }
        self.num_edges -= nbrs.len();
        nbrs.into_iter().collect()
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: VertexId, v: VertexId) {
        self.adj.get_mut(&u).expect("endpoint exists").insert(v);
        self.adj.get_mut(&v).expect("endpoint exists").insert(u);
        self.num_edges += 1;
    }

    pub(crate) fn remove_edge_unchecked(&mut self, u: VertexId, v: VertexId) {
        self.adj.get_mut(&u).expect("endpoint exists").remove(&v);
        self.adj.get_mut(&v).expect("endpoint exists").remove(&u);
        self.num_edges -= 1;
    }

    /// Full-scan verification of symmetry, simplicity and edge bookkeeping.
    pub fn validate(&self) -> Result<(), String> {
        let mut degree_sum = 0usize;
        for (&u, nbrs) in &self.adj {
            degree_sum += nbrs.len();
            for &v in nbrs {
                if u == v {
                    return Err(format!("self-loop at {u}"));
                }
                if !self.has_edge(v, u) {
                    return Err(format!("asymmetric edge {u}->{v}"));
                }
            }
        }
        if degree_sum != 2 * self.num_edges {
            return Err(format!(
                "edge count {} disagrees with degree sum {degree_sum}",
                self.num_edges
            ));
        }
        Ok(())
    }

    /// True when no two members of `set` are adjacent.
    pub fn is_independent(&self, set: &[VertexId]) -> bool {
        let members: FxHashSet<_> = set.iter().copied().collect();
        set.iter()
            .all(|&v| self.neighbors(v).all(|u| !members.contains(&u)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_isolated_vertex() {
        let mut g = DynamicGraph::new();
        g.apply(&UpdateOp::AddVertex(1, vec![])).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));
    }

    #[test]
    fn edge_insert_then_delete() {
        let mut g = DynamicGraph::edgeless([1, 2]);
        g.apply(&UpdateOp::AddEdge(1, 2)).unwrap();
        g.apply(&UpdateOp::RemoveEdge(1, 2)).unwrap();
        assert_eq!(g.num_edges(), 0);
        assert_eq!(g.degree(1) + g.degree(2), 0);
    }

    #[test]
    fn subdivided_k4_edge_by_edge() {
        let mut g = DynamicGraph::new();
        let mut next = 4;
        for v in 0..4 {
            g.apply(&UpdateOp::AddVertex(v, vec![])).unwrap();
        }
        for a in 0..4u64 {
            for b in a + 1..4 {
                g.apply(&UpdateOp::AddVertex(next, vec![])).unwrap();
                g.apply(&UpdateOp::AddEdge(a, next)).unwrap();
                g.apply(&UpdateOp::AddEdge(next, b)).unwrap();
                next += 1;
            }
        }
        assert_eq!((g.num_vertices(), g.num_edges()), (10, 12));
        g.validate().unwrap();
    }

    #[test]
    fn strict_errors() {
        let mut g = DynamicGraph::from_edges([(1, 2)]).unwrap();
        assert_eq!(g.apply(&UpdateOp::AddVertex(1, vec![])), Err(GraphError::DuplicateVertex(1)));
        assert_eq!(g.apply(&UpdateOp::AddVertex(3, vec![9])), Err(GraphError::UnknownVertex(9)));
        assert_eq!(g.apply(&UpdateOp::AddEdge(2, 1)), Err(GraphError::DuplicateEdge(2, 1)));
        assert_eq!(g.apply(&UpdateOp::RemoveEdge(1, 3)), Err(GraphError::UnknownEdge(1, 3)));
        assert_eq!(g.apply(&UpdateOp::AddEdge(2, 2)), Err(GraphError::SelfLoop(2)));
        assert_eq!(g.apply(&UpdateOp::RemoveVertex(7)), Err(GraphError::UnknownVertex(7)));
        // failed ops leave the graph untouched
        assert_eq!(g.sorted_edges(), vec![(1, 2)]);
    }

    #[test]
    fn lenient_skips_invalid() {
        let mut g = DynamicGraph::from_edges([(1, 2)]).unwrap();
        let r = g.apply_with(&UpdateOp::AddEdge(1, 2), Strictness::Lenient).unwrap();
        assert!(r.is_none());
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn remove_vertex_drops_incident_edges() {
        let mut g = DynamicGraph::from_edges([(1, 2), (1, 3), (2, 3)]).unwrap();
        let inv = g.apply(&UpdateOp::RemoveVertex(1)).unwrap();
        assert_eq!(inv, UpdateOp::AddVertex(1, vec![2, 3]));
        assert_eq!(g.num_edges(), 1);
        g.validate().unwrap();
    }
}
