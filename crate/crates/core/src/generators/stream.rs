use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::graph::{DynamicGraph, OpKind, UpdateOp, VertexId};

/// Relative weights of the four update kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpMix {
    pub add_vertex: f64,
    pub remove_vertex: f64,
    pub add_edge: f64,
    pub remove_edge: f64,
}

impl Default for OpMix {
    fn default() -> Self {
        Self { add_vertex: 0.1, remove_vertex: 0.1, add_edge: 0.4, remove_edge: 0.4 }
    }
}

impl OpMix {
    pub fn edges_only() -> Self {
        Self { add_vertex: 0.0, remove_vertex: 0.0, add_edge: 0.5, remove_edge: 0.5 }
    }

    pub fn only(kind: OpKind) -> Self {
        let mut mix = Self { add_vertex: 0.0, remove_vertex: 0.0, add_edge: 0.0, remove_edge: 0.0 };
        *mix.weight_mut(kind) = 1.0;
        mix
    }

    fn weight_mut(&mut self, kind: OpKind) -> &mut f64 {
        match kind {
            OpKind::AddVertex => &mut self.add_vertex,
            OpKind::RemoveVertex => &mut self.remove_vertex,
            OpKind::AddEdge => &mut self.add_edge,
            OpKind::RemoveEdge => &mut self.remove_edge,
        }
    }

    fn weights(&self) -> [f64; 4] {
        [self.add_vertex, self.remove_vertex, self.add_edge, self.remove_edge]
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StreamError {
    #[error("invalid op mix {0:?}")]
    InvalidMix(OpMix),
    #[error("no valid op could be sampled at step {step}")]
    Exhausted { step: usize },
}

const KIND_RETRIES: usize = 64;
const PAIR_RETRIES: usize = 32;

/// Shadow copy of the graph with O(1) uniform sampling of vertices and edges.
struct Shadow {
    graph: DynamicGraph,
    vertices: Vec<VertexId>,
    vertex_pos: FxHashMap<VertexId, usize>,
    edges: Vec<(VertexId, VertexId)>,
    edge_pos: FxHashMap<(VertexId, VertexId), usize>,
    next_id: VertexId,
}

impl Shadow {
    fn new(g: &DynamicGraph) -> Self {
        let vertices = g.sorted_vertices();
        let edges = g.sorted_edges();
        Self {
            graph: g.clone(),
            vertex_pos: vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect(),
            edge_pos: edges.iter().enumerate().map(|(i, &e)| (e, i)).collect(),
            next_id: vertices.last().map_or(0, |&v| v + 1),
            vertices,
            edges,
        }
    }

    fn add_edge_index(&mut self, u: VertexId, v: VertexId) {
        let e = (u.min(v), u.max(v));
        self.edge_pos.insert(e, self.edges.len());
        self.edges.push(e);
    }

    fn remove_edge_index(&mut self, u: VertexId, v: VertexId) {
        let e = (u.min(v), u.max(v));
        let i = self.edge_pos.remove(&e).expect("indexed edge");
        self.edges.swap_remove(i);
        if let Some(&moved) = self.edges.get(i) {
            self.edge_pos.insert(moved, i);
        }
    }

    fn apply(&mut self, op: &UpdateOp) {
        match op {
            UpdateOp::AddVertex(v, nbrs) => {
                self.vertex_pos.insert(*v, self.vertices.len());
                self.vertices.push(*v);
                for &u in nbrs {
                    self.add_edge_index(*v, u);
                }
                self.next_id = self.next_id.max(v + 1);
            }
            UpdateOp::RemoveVertex(v) => {
                for u in self.graph.sorted_neighbors(*v) {
                    self.remove_edge_index(*v, u);
                }
                let i = self.vertex_pos.remove(v).expect("indexed vertex");
                self.vertices.swap_remove(i);
                if let Some(&moved) = self.vertices.get(i) {
                    self.vertex_pos.insert(moved, i);
                }
            }
            UpdateOp::AddEdge(u, v) => self.add_edge_index(*u, *v),
            UpdateOp::RemoveEdge(u, v) => self.remove_edge_index(*u, *v),
        }
        self.graph.apply(op).expect("sampled op is valid");
    }

    fn sample(&self, kind: OpKind, rng: &mut ChaCha8Rng) -> Option<UpdateOp> {
        let n = self.vertices.len();
        match kind {
            OpKind::AddVertex => {
                let d = if n == 0 {
                    0
                } else {
                    self.graph.degree(self.vertices[rng.gen_range(0..n)]).min(n)
                };
                let mut nbrs: Vec<VertexId> =
                    sample(rng, n, d).into_iter().map(|i| self.vertices[i]).collect();
                nbrs.sort_unstable();
                Some(UpdateOp::AddVertex(self.next_id, nbrs))
            }
            OpKind::RemoveVertex => {
                (n > 0).then(|| UpdateOp::RemoveVertex(self.vertices[rng.gen_range(0..n)]))
            }
            OpKind::AddEdge => {
                if n < 2 {
                    return None;
                }
                (0..PAIR_RETRIES).find_map(|_| {
                    let u = self.vertices[rng.gen_range(0..n)];
                    let v = self.vertices[rng.gen_range(0..n)];
                    (u != v && !self.graph.has_edge(u, v)).then_some(UpdateOp::AddEdge(u, v))
                })
            }
            OpKind::RemoveEdge => {
                let m = self.edges.len();
                (m > 0).then(|| {
                    let (u, v) = self.edges[rng.gen_range(0..m)];
                    UpdateOp::RemoveEdge(u, v)
                })
            }
        }
    }
}

/// Samples `count` updates that are valid in sequence starting from `g`.
///
/// Each step draws a kind from `mix` and then a uniformly random valid
/// move of that kind; kinds with no valid move are redrawn a bounded
/// number of times, after which every kind with positive weight is tried
/// in turn. A new vertex takes the next unused id and as many
/// random neighbors as a randomly chosen existing vertex has.
pub fn gen_op_stream(
    g: &DynamicGraph,
    count: usize,
    mix: &OpMix,
    seed: u64,
) -> Result<Vec<UpdateOp>, StreamError> {
    let weights = mix.weights();
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(StreamError::InvalidMix(*mix));
    }
    let dist = WeightedIndex::new(weights).map_err(|_| StreamError::InvalidMix(*mix))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shadow = Shadow::new(g);
    let mut ops = Vec::with_capacity(count);
    for step in 0..count {
        let op = (0..KIND_RETRIES)
            .find_map(|_| shadow.sample(OpKind::ALL[dist.sample(&mut rng)], &mut rng))
            .or_else(|| {
                OpKind::ALL
                    .iter()
                    .zip(weights)
                    .filter(|(_, w)| *w > 0.0)
                    .find_map(|(&kind, _)| shadow.sample(kind, &mut rng))
            })
            .ok_or(StreamError::Exhausted { step })?;
        shadow.apply(&op);
        ops.push(op);
    }
    Ok(ops)
}
