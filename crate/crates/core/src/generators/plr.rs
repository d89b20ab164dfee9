use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::graph::{DynamicGraph, VertexId};

/// Power-law random graph parameters: about `e^alpha / x^beta` vertices
/// of each degree `x` up to `floor(e^(alpha / beta))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlrParams {
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
}

impl PlrParams {
    pub fn new(alpha: f64, beta: f64, seed: u64) -> Self {
        Self { alpha, beta, seed }
    }

    pub fn max_degree(&self) -> usize {
        ((self.alpha / self.beta).exp() + 1e-9).floor() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlrError {
    #[error("invalid parameters: alpha = {alpha}, beta = {beta}")]
    InvalidParams { alpha: f64, beta: f64 },
    #[error("could not realize degree sequence as a simple graph ({unresolved} collisions left)")]
    InfeasibleSequence { unresolved: usize },
}

/// Target number of vertices of each degree; index `x` holds the count
/// for degree `x` (index 0 is always 0).
pub fn plr_degree_counts(p: &PlrParams) -> Result<Vec<usize>, PlrError> {
    let valid = p.alpha.is_finite() && p.beta.is_finite() && p.alpha >= 0.0 && p.beta > 1.0;
    if !valid || p.max_degree() == 0 {
        return Err(PlrError::InvalidParams { alpha: p.alpha, beta: p.beta });
    }
    let scale = p.alpha.exp();
    let mut counts = vec![0];
    counts.extend((1..=p.max_degree()).map(|x| (scale / (x as f64).powf(p.beta)).round() as usize));
    Ok(counts)
}

fn norm(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

/// Configuration-model realization of the power-law degree sequence.
///
/// Vertex ids are assigned in ascending degree order starting at 0. Stubs
/// are shuffled and paired; a self-loop or repeated pair is resolved by a
/// double-edge switch against a random accepted edge, which keeps every
/// degree intact. An odd stub total drops one degree-1 vertex.
pub fn gen_plr(p: &PlrParams) -> Result<DynamicGraph, PlrError> {
    let mut counts = plr_degree_counts(p)?;
    let total: usize = counts.iter().enumerate().map(|(x, c)| x * c).sum();
    if total % 2 == 1 {
        counts[1] -= 1;
    }
    let mut stubs = Vec::with_capacity(total);
    let mut next: VertexId = 0;
    for (deg, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            stubs.extend(std::iter::repeat_n(next, deg));
            next += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    stubs.shuffle(&mut rng);

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(stubs.len() / 2);
    let mut present: FxHashSet<(VertexId, VertexId)> = FxHashSet::default();
    let mut collisions = Vec::new();
    for pair in stubs.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        if a == b || present.contains(&norm(a, b)) {
            collisions.push((a, b));
        } else {
            present.insert(norm(a, b));
            edges.push((a, b));
        }
    }

    let mut budget = 1000 + 100 * collisions.len();
    while let Some(&(a, b)) = collisions.last() {
        if edges.is_empty() || budget == 0 {
            return Err(PlrError::InfeasibleSequence { unresolved: collisions.len() });
        }
        budget -= 1;
        let i = rng.gen_range(0..edges.len());
        let (mut c, mut d) = edges[i];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        let (e1, e2) = (norm(a, c), norm(b, d));
        if a == c || b == d || e1 == e2 || present.contains(&e1) || present.contains(&e2) {
            continue;
        }
        present.remove(&norm(c, d));
        edges.swap_remove(i);
        present.insert(e1);
        present.insert(e2);
        edges.push((a, c));
        edges.push((b, d));
        collisions.pop();
    }

    let mut g = DynamicGraph::edgeless(0..next);
    for (a, b) in edges {
        g.insert_edge(a, b).expect("collisions were resolved");
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_degree_formula() {
        assert_eq!(PlrParams::new(1000f64.ln(), 2.0, 0).max_degree(), 31);
        assert_eq!(PlrParams::new(100f64.ln(), 10.0, 0).max_degree(), 1);
    }

    #[test]
    fn degree_one_count() {
        let c = plr_degree_counts(&PlrParams::new(1000f64.ln(), 2.0, 0)).unwrap();
        assert_eq!(c.len(), 32);
        assert_eq!(c[1], 1000);
        assert_eq!(c[2], 250);
    }

    #[test]
    fn matching_when_max_degree_one() {
        let g = gen_plr(&PlrParams::new(100f64.ln(), 10.0, 3)).unwrap();
        assert_eq!(g.num_vertices(), 100);
        assert_eq!(g.num_edges(), 50);
        assert!(g.vertices().all(|v| g.degree(v) == 1));
    }

    #[test]
    fn deterministic() {
        let p = PlrParams::new(500f64.ln(), 2.3, 42);
        assert_eq!(gen_plr(&p).unwrap().sorted_edges(), gen_plr(&p).unwrap().sorted_edges());
        let q = PlrParams { seed: 43, ..p };
        assert_ne!(gen_plr(&p).unwrap().sorted_edges(), gen_plr(&q).unwrap().sorted_edges());
    }

    #[test]
    fn histogram_within_band() {
        let p = PlrParams::new(2000f64.ln(), 1.9, 7);
        let g = gen_plr(&p).unwrap();
        g.validate().unwrap();
        let target = plr_degree_counts(&p).unwrap();
        let mut realized = vec![0usize; g.max_degree().max(target.len() - 1) + 1];
        for v in g.vertices() {
            realized[g.degree(v)] += 1;
        }
        for (x, &want) in target.iter().enumerate().skip(1) {
            if want >= 30 {
                let diff = (realized[x] as f64 - want as f64).abs();
                assert!(diff <= 3.0 * (want as f64).sqrt(), "degree {x}: {} vs {want}", realized[x]);
            }
        }
    }

    #[test]
    fn invalid_params() {
        assert!(gen_plr(&PlrParams::new(5.0, 1.0, 0)).is_err());
        assert!(gen_plr(&PlrParams::new(-1.0, 2.0, 0)).is_err());
    }
}
