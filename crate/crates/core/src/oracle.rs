//! Brute-force ground truth for tests and checkpoints: exact independence
//! numbers, maximality checks and swap-freeness certificates.
//!
//! Nothing here reads the maintainers' counters or candidate lists. Every
//! routine converts the graph into its own dense, sorted representation
//! and recomputes what it needs from scratch.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{DynamicGraph, VertexId};

/// Default vertex cap for exact independence-number computation.
pub const DEFAULT_ORACLE_CAP: usize = 64;

/// Hard limit of the bitmask solver.
const MASK_BITS: usize = 128;

/// Default cap on the number of subsets the exhaustive certifier visits.
pub const DEFAULT_SUBSET_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large: {size} exceeds cap {cap}")]
    InstanceTooLarge { size: usize, cap: usize },
    #[error("set is not independent: edge ({0}, {1})")]
    NotIndependent(VertexId, VertexId),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
}

/// A concrete improving exchange: removing `swap_out` from `M` and adding
/// `swap_in` yields a larger independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapWitness {
    pub swap_out: Vec<VertexId>,
    pub swap_in: Vec<VertexId>,
}

impl SwapWitness {
    pub fn level(&self) -> usize {
        self.swap_out.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    SwapFree,
    Swap(SwapWitness),
}

impl Certificate {
    pub fn is_swap_free(&self) -> bool {
        matches!(self, Certificate::SwapFree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaximalityViolation {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("members {0} and {1} are adjacent")]
    Adjacent(VertexId, VertexId),
    #[error("vertex {0} could be added")]
    Uncovered(VertexId),
}

/// Dense copy of a graph: vertices renumbered `0..n` in ascending id
/// order, adjacency as sorted vectors.
struct Dense {
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    adj: Vec<Vec<usize>>,
}

impl Dense {
    fn new(g: &DynamicGraph) -> Self {
        let ids = g.sorted_vertices();
        let index: BTreeMap<_, _> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|&v| {
                let mut n: Vec<usize> = g.neighbors(v).map(|u| index[&u]).collect();
                n.sort_unstable();
                n
            })
            .collect();
        Dense { ids, index, adj }
    }

    fn len(&self) -> usize {
        self.ids.len()
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    fn indices(&self, set: &[VertexId]) -> Result<Vec<usize>, OracleError> {
        set.iter()
            .map(|v| self.index.get(v).copied().ok_or(OracleError::UnknownVertex(*v)))
            .collect()
    }

    fn masks(&self, subset: &[usize]) -> Vec<u128> {
        let pos: BTreeMap<usize, usize> = subset.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        subset
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|u| pos.get(u))
                    .fold(0u128, |m, &i| m | (1u128 << i))
            })
            .collect()
    }

    /// Some independent subset of `cands` of size `t`, by backtracking.
    fn find_independent(&self, cands: &[usize], t: usize) -> Option<Vec<usize>> {
        fn go(d: &Dense, cands: &[usize], t: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
            if chosen.len() == t {
                return true;
            }
            for i in start..cands.len() {
                if cands.len() - i < t - chosen.len() {
                    return false;
                }
                let c = cands[i];
                if chosen.iter().all(|&p| !d.adjacent(p, c)) {
                    chosen.push(c);
                    if go(d, cands, t, i + 1, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        let mut chosen = Vec::with_capacity(t);
        go(self, cands, t, 0, &mut chosen).then_some(chosen)
    }

    /// Membership flags, IS-neighbor lists and independence check for `m`.
    fn membership(&self, m: &[VertexId]) -> Result<(Vec<bool>, Vec<Vec<usize>>), OracleError> {
        let mut in_m = vec![false; self.len()];
        for i in self.indices(m)? {
            in_m[i] = true;
        }
        for a in 0..self.len() {
            if in_m[a] {
                if let Some(&b) = self.adj[a].iter().find(|&&b| in_m[b]) {
                    return Err(OracleError::NotIndependent(self.ids[a.min(b)], self.ids[a.max(b)]));
                }
            }
        }
        let is_nbrs = (0..self.len())
            .map(|w| {
                if in_m[w] {
                    Vec::new()
                } else {
                    self.adj[w].iter().copied().filter(|&u| in_m[u]).collect()
                }
            })
            .collect();
        Ok((in_m, is_nbrs))
    }

    fn to_ids(&self, idx: &[usize]) -> Vec<VertexId> {
        let mut out: Vec<_> = idx.iter().map(|&i| self.ids[i]).collect();
        out.sort_unstable();
        out
    }
}

fn popcount(m: u128) -> u32 {
    m.count_ones()
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Greedy clique cover size of `cand`: an upper bound on its independence number.
fn clique_cover_bound(adj: &[u128], mut cand: u128) -> u32 {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let mut common = adj[v] & cand;
        cand &= !(1u128 << v);
        while common != 0 {
            let u = common.trailing_zeros() as usize;
            cand &= !(1u128 << u);
            common &= adj[u] & !(1u128 << u);
        }
        cliques += 1;
    }
    cliques
}

/// Exact maximum independent set of the subgraph induced by `cand`, by
/// branch and reduce over bitmasks.
fn solve_mask(adj: &[u128], mut cand: u128) -> u128 {
    let mut taken = 0u128;
    // degree <= 1 vertices always belong to some maximum independent set
    loop {
        if cand == 0 {
            return taken;
        }
        let low = bits(cand).find(|&v| popcount(adj[v] & cand) <= 1);
        match low {
            Some(v) => {
                taken |= 1u128 << v;
                cand &= !((1u128 << v) | adj[v]);
            }
            None => break,
        }
    }
    // split into connected components
    let first = cand.trailing_zeros() as usize;
    let mut comp = 1u128 << first;
    loop {
        let grown = bits(comp).fold(comp, |acc, v| acc | (adj[v] & cand));
        if grown == comp {
            break;
        }
        comp = grown;
    }
    if comp != cand {
        return taken | solve_mask(adj, comp) | solve_mask(adj, cand & !comp);
    }
    let v = bits(cand)
        .max_by_key(|&v| (popcount(adj[v] & cand), std::cmp::Reverse(v)))
        .expect("nonempty");
    let with_v = (1u128 << v) | solve_mask(adj, cand & !((1u128 << v) | adj[v]));
    let rest = cand & !(1u128 << v);
    if clique_cover_bound(adj, rest) <= popcount(with_v) {
        return taken | with_v;
    }
    let without_v = solve_mask(adj, rest);
    if popcount(without_v) > popcount(with_v) {
        taken | without_v
    } else {
        taken | with_v
    }
}

fn alpha_dense(d: &Dense, subset: &[usize], cap: usize) -> Result<Vec<usize>, OracleError> {
    let limit = cap.min(MASK_BITS);
    if subset.len() > limit {
        return Err(OracleError::InstanceTooLarge { size: subset.len(), cap: limit });
    }
    let adj = d.masks(subset);
    let full = if subset.len() == MASK_BITS { u128::MAX } else { (1u128 << subset.len()) - 1 };
    Ok(bits(solve_mask(&adj, full)).map(|i| subset[i]).collect())
}

/// Exact independence number and one maximum independent set, for graphs
/// with at most `cap` vertices (never more than 128).
pub fn brute_force_alpha(g: &DynamicGraph, cap: usize) -> Result<(usize, Vec<VertexId>), OracleError> {
    let d = Dense::new(g);
    let all: Vec<usize> = (0..d.len()).collect();
    let best = alpha_dense(&d, &all, cap)?;
    Ok((best.len(), d.to_ids(&best)))
}

/// Exact independence number of the subgraph induced by `subset`.
pub fn alpha_induced(
    g: &DynamicGraph,
    subset: &[VertexId],
    cap: usize,
) -> Result<(usize, Vec<VertexId>), OracleError> {
    let d = Dense::new(g);
    let mut idx = d.indices(subset)?;
    idx.sort_unstable();
    idx.dedup();
    let best = alpha_dense(&d, &idx, cap)?;
    Ok((best.len(), d.to_ids(&best)))
}

/// Independence number by enumerating every vertex subset (n <= 24).
pub fn naive_alpha(g: &DynamicGraph) -> Result<(usize, Vec<VertexId>), OracleError> {
    const LIMIT: usize = 24;
    let d = Dense::new(g);
    let n = d.len();
    if n > LIMIT {
        return Err(OracleError::InstanceTooLarge { size: n, cap: LIMIT });
    }
    let all: Vec<usize> = (0..n).collect();
    let adj = d.masks(&all);
    let mut best = 0u32;
    let mut arg = 0u128;
    for s in 0u128..(1u128 << n) {
        if popcount(s) <= best {
            continue;
        }
        if bits(s).all(|v| adj[v] & s == 0) {
            best = popcount(s);
            arg = s;
        }
    }
    let set: Vec<usize> = bits(arg).collect();
    Ok((set.len(), d.to_ids(&set)))
}

/// Checks that `m` is independent and no vertex can be added to it.
pub fn certify_maximal(g: &DynamicGraph, m: &[VertexId]) -> Result<(), MaximalityViolation> {
    let d = Dense::new(g);
    let mut in_m = vec![false; d.len()];
    for v in m {
        let &i = d.index.get(v).ok_or(MaximalityViolation::UnknownVertex(*v))?;
        in_m[i] = true;
    }
    for a in 0..d.len() {
        let hit = d.adj[a].iter().find(|&&b| in_m[b]);
        match (in_m[a], hit) {
            (true, Some(&b)) => {
                return Err(MaximalityViolation::Adjacent(d.ids[a.min(b)], d.ids[a.max(b)]))
            }
            (false, None) => return Err(MaximalityViolation::Uncovered(d.ids[a])),
            _ => {}
        }
    }
    Ok(())
}

/// Number of `M`-neighbors of every non-member, recomputed from scratch.
pub fn recount(g: &DynamicGraph, m: &[VertexId]) -> Result<BTreeMap<VertexId, usize>, OracleError> {
    let d = Dense::new(g);
    let (in_m, is_nbrs) = d.membership(m)?;
    Ok((0..d.len())
        .filter(|&w| !in_m[w])
        .map(|w| (d.ids[w], is_nbrs[w].len()))
        .collect())
}

/// Decides whether `m` contains no `j`-swaps for every `j <= k`.
///
/// For `k <= 2` the search is exhaustive over the sets that can matter:
/// every singleton with count-1 candidates, and every pair that is the
/// IS-neighborhood of some count-2 vertex. Any other pair's candidate set
/// is the union of two singleton candidate sets, so once level 1 passes it
/// holds at most 2 independent vertices. Larger `k` falls back to
/// [`certify_swap_free_exhaustive`].
pub fn certify_swap_free(g: &DynamicGraph, m: &[VertexId], k: usize) -> Result<Certificate, OracleError> {
    if k > 2 {
        return certify_swap_free_exhaustive(g, m, k, DEFAULT_SUBSET_CAP);
    }
    let d = Dense::new(g);
    let (_, is_nbrs) = d.membership(m)?;
    let mut singles: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (w, nb) in is_nbrs.iter().enumerate() {
        match nb.as_slice() {
            [a] => singles.entry(*a).or_default().push(w),
            [a, b] => pairs.entry((*a.min(b), *a.max(b))).or_default().push(w),
            _ => {}
        }
    }
    if k >= 1 {
        for (&v, cands) in &singles {
            if let Some(found) = d.find_independent(cands, 2) {
                return Ok(Certificate::Swap(SwapWitness {
                    swap_out: vec![d.ids[v]],
                    swap_in: d.to_ids(&found),
                }));
            }
        }
    }
    if k >= 2 {
        for (&(a, b), shared) in &pairs {
            let mut cands: Vec<usize> = singles
                .get(&a)
                .into_iter()
                .chain(singles.get(&b))
                .flatten()
                .chain(shared)
                .copied()
                .collect();
            cands.sort_unstable();
            if let Some(found) = d.find_independent(&cands, 3) {
                return Ok(Certificate::Swap(SwapWitness {
                    swap_out: d.to_ids(&[a, b]),
                    swap_in: d.to_ids(&found),
                }));
            }
        }
    }
    Ok(Certificate::SwapFree)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Enumerates every subset `S` of `m` with `1 <= |S| <= k`, builds its
/// candidate set directly from the definition and searches it for
/// `|S| + 1` independent vertices. Fails when more than `max_subsets`
/// subsets would be visited.
pub fn certify_swap_free_exhaustive(
    g: &DynamicGraph,
    m: &[VertexId],
    k: usize,
    max_subsets: usize,
) -> Result<Certificate, OracleError> {
    let d = Dense::new(g);
    let (in_m, is_nbrs) = d.membership(m)?;
    let members: Vec<usize> = (0..d.len()).filter(|&v| in_m[v]).collect();
    let total = (1..=k.min(members.len()))
        .map(|j| binomial(members.len(), j))
        .fold(0usize, usize::saturating_add);
    if total > max_subsets {
        return Err(OracleError::InstanceTooLarge { size: total, cap: max_subsets });
    }
    for j in 1..=k.min(members.len()) {
        let mut combo: Vec<usize> = (0..j).collect();
        loop {
            let s: Vec<usize> = combo.iter().map(|&i| members[i]).collect();
            let cands: Vec<usize> = (0..d.len())
                .filter(|&w| {
                    !in_m[w]
                        && !is_nbrs[w].is_empty()
                        && is_nbrs[w].len() <= j
                        && is_nbrs[w].iter().all(|u| s.contains(u))
                })
                .collect();
            if let Some(found) = d.find_independent(&cands, j + 1) {
                return Ok(Certificate::Swap(SwapWitness {
                    swap_out: d.to_ids(&s),
                    swap_in: d.to_ids(&found),
                }));
            }
            // next combination in lexicographic order
            let mut i = j;
            while i > 0 && combo[i - 1] == members.len() - j + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for t in i..j {
                combo[t] = combo[t - 1] + 1;
            }
        }
    }
    Ok(Certificate::SwapFree)
}
