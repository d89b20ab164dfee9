//! Engine keeping `M` free of 1-swaps: for every `v` in `M`, the
//! neighbors of `v` whose only IS-neighbor is `v` form a clique.

use crate::framework::Engine;
use crate::graph::{DynamicGraph, UpdateOp, VertexId};
use crate::hierarchy::KeySet;
use crate::queue::SwapQueue;
use crate::state::{MaintainerState, UpdateEffect};

#[derive(Debug, Clone, Copy, Default)]
pub struct OneSwap;

/// Looks for a `u` among `pending` that has a non-neighbor `z` in the
/// level-1 candidate list of `v`. Returns `(u, z)`.
pub fn find_one_swap(
    g: &DynamicGraph,
    st: &MaintainerState,
    v: VertexId,
    pending: impl IntoIterator<Item = VertexId>,
    work: &mut usize,
) -> Option<(VertexId, VertexId)> {
    let key = KeySet::single(v);
    let list = st.hierarchy().list(&key)?;
    if list.len() < 2 {
        return None;
    }
    for u in pending {
        if st.hierarchy().key_of(u) != Some(&key) {
            continue;
        }
        let nbrs = g.neighbor_set(u)?;
        let inside = if nbrs.len() <= list.len() {
            *work += nbrs.len();
            nbrs.iter().filter(|w| list.contains(*w)).count()
        } else {
            *work += list.len();
            list.iter().filter(|w| nbrs.contains(*w)).count()
        };
        // u itself is in the list but not among its own neighbors
        if inside + 1 < list.len() {
            let z = list
                .iter()
                .copied()
                .find(|&z| z != u && !nbrs.contains(&z))
                .expect("non-neighbor exists by count");
            return Some((u, z));
        }
    }
    None
}

/// Swaps `v` out for `u` and refills around `v`.
pub(crate) fn apply_one_swap(g: &DynamicGraph, st: &mut MaintainerState, v: VertexId, u: VertexId) {
    st.move_out(g, v);
    st.move_in(g, u);
    st.extend_maximal(g, g.sorted_neighbors(v));
}

/// Processes a level-1 queue entry `(v, pending)`. With `promote`, a
/// non-swappable `v` also re-queues its count-2 neighbors that miss some
/// pending vertex, since those may now close an independent triple.
pub(crate) fn one_swap_pass(
    g: &DynamicGraph,
    st: &mut MaintainerState,
    queue: &mut SwapQueue,
    v: VertexId,
    pending: &[VertexId],
    promote: bool,
) -> bool {
    if !st.in_set(v) {
        return false;
    }
    let key = KeySet::single(v);
    let fresh: Vec<VertexId> = pending
        .iter()
        .copied()
        .filter(|&u| st.hierarchy().key_of(u) == Some(&key))
        .collect();
    if fresh.is_empty() {
        return false;
    }
    let mut work = 0;
    let found = find_one_swap(g, st, v, fresh.iter().copied(), &mut work);
    st.add_work(work);
    if let Some((u, _)) = found {
        apply_one_swap(g, st, v, u);
        return true;
    }
    if promote {
        let mut work = 0;
        for w in g.neighbors(v) {
            work += 1;
            if st.in_set(w) || st.count(w) != 2 {
                continue;
            }
            work += fresh.len();
            if fresh.iter().any(|&p| !g.has_edge(w, p)) {
                queue.push(st.key(w), w);
            }
        }
        st.add_work(work);
    }
    false
}

/// Level-1 queue entries implied by `op`.
pub fn oneswap_seed(
    st: &MaintainerState,
    op: &UpdateOp,
    effect: &UpdateEffect,
) -> Vec<(KeySet, VertexId)> {
    let mut out = Vec::new();
    let mut push = |w: VertexId| {
        if !st.in_set(w) && st.count(w) == 1 {
            out.push((st.key(w), w));
        }
    };
    match op {
        UpdateOp::AddVertex(v, _) => push(*v),
        UpdateOp::RemoveVertex(_) | UpdateOp::AddEdge(..) => {
            effect.decreased.iter().copied().for_each(push)
        }
        UpdateOp::RemoveEdge(u, v) => {
            if !effect.decreased.is_empty() {
                effect.decreased.iter().copied().for_each(push);
            } else if st.count(*u) == 1 && st.count(*v) == 1 && st.key(*u) == st.key(*v) {
                out.push((st.key(*u), *u));
            }
        }
    }
    out
}

/// First level-1 key whose candidate list is not a clique.
pub(crate) fn find_level_one(g: &DynamicGraph, st: &MaintainerState) -> Option<KeySet> {
    let mut work = 0;
    st.hierarchy().level(1).find_map(|(key, list)| {
        let v = key.as_slice()[0];
        find_one_swap(g, st, v, list.iter().copied(), &mut work).map(|_| key.clone())
    })
}

impl Engine for OneSwap {
    fn max_level(&self) -> usize {
        1
    }

    fn name(&self) -> &'static str {
        "oneswap"
    }

    fn seed(
        &self,
        _: &DynamicGraph,
        st: &MaintainerState,
        op: &UpdateOp,
        effect: &UpdateEffect,
    ) -> Vec<(KeySet, VertexId)> {
        oneswap_seed(st, op, effect)
    }

    fn test_and_swap(
        &self,
        g: &DynamicGraph,
        st: &mut MaintainerState,
        queue: &mut SwapQueue,
        level: usize,
        key: &KeySet,
        pending: &[VertexId],
    ) -> bool {
        level == 1 && one_swap_pass(g, st, queue, key.as_slice()[0], pending, false)
    }

    fn find_swap(&self, g: &DynamicGraph, st: &MaintainerState) -> Option<KeySet> {
        find_level_one(g, st)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Maintainer;

    fn state(g: &DynamicGraph, m: &[VertexId]) -> MaintainerState {
        let mut st = MaintainerState::new(g, 1);
        for &v in m {
            st.move_in(g, v);
        }
        st
    }

    #[test]
    fn path_middle_swaps_for_ends() {
        // a=1, b=2, c=3
        let g = DynamicGraph::from_edges([(1, 2), (2, 3)]).unwrap();
        let mut st = state(&g, &[2]);
        let mut q = SwapQueue::new(1);
        assert!(one_swap_pass(&g, &mut st, &mut q, 2, &[1], false));
        assert_eq!(st.members(), vec![1, 3]);
        st.audit(&g, true).unwrap();
    }

    #[test]
    fn triangle_candidates_form_clique() {
        let g = DynamicGraph::from_edges([(1, 2), (2, 3), (1, 3)]).unwrap();
        let mut st = state(&g, &[1]);
        let mut q = SwapQueue::new(1);
        assert!(!one_swap_pass(&g, &mut st, &mut q, 1, &[2, 3], false));
        assert_eq!(st.members(), vec![1]);
        assert_eq!(st.hierarchy().list_len(&KeySet::single(1)), 2);
    }

    #[test]
    fn star_center_swaps_on_first_leaf() {
        let g = DynamicGraph::from_edges([(0, 1), (0, 2)]).unwrap();
        let mut st = state(&g, &[0]);
        let mut q = SwapQueue::new(1);
        assert!(one_swap_pass(&g, &mut st, &mut q, 0, &[1, 2], false));
        assert_eq!(st.members(), vec![1, 2]);
    }

    #[test]
    fn stale_pending_is_skipped() {
        let g = DynamicGraph::from_edges([(0, 1), (0, 2), (1, 3)]).unwrap();
        // 1 has two IS-neighbors, so it is not a candidate of 0
        let mut st = state(&g, &[0, 3]);
        let mut q = SwapQueue::new(1);
        assert!(!one_swap_pass(&g, &mut st, &mut q, 0, &[1], false));
        assert!(!one_swap_pass(&g, &mut st, &mut q, 5, &[2], false));
    }

    #[test]
    fn seed_on_edge_removal_between_candidates() {
        // u=1, v=2 share IS-neighbor w=0; removing (1,2) makes {1,2} independent
        let mut g = DynamicGraph::from_edges([(0, 1), (0, 2), (1, 2)]).unwrap();
        let mut st = MaintainerState::with_initial_set(&g, &[0], 1).unwrap();
        let op = UpdateOp::RemoveEdge(1, 2);
        let eff = st.simple_update(&mut g, &op).unwrap();
        assert_eq!(oneswap_seed(&st, &op, &eff), vec![(KeySet::single(0), 1)]);
    }

    #[test]
    fn no_seed_for_edge_between_non_members() {
        let mut g = DynamicGraph::from_edges([(0, 1), (0, 2)]).unwrap();
        let mut st = MaintainerState::with_initial_set(&g, &[0], 1).unwrap();
        let op = UpdateOp::AddEdge(1, 2);
        let eff = st.simple_update(&mut g, &op).unwrap();
        assert!(oneswap_seed(&st, &op, &eff).is_empty());
    }

    #[test]
    fn no_seed_for_removing_non_member() {
        let mut g = DynamicGraph::from_edges([(0, 1), (0, 2)]).unwrap();
        let mut st = MaintainerState::with_initial_set(&g, &[1, 2], 1).unwrap();
        let op = UpdateOp::RemoveVertex(0);
        let eff = st.simple_update(&mut g, &op).unwrap();
        assert!(oneswap_seed(&st, &op, &eff).is_empty());
    }

    #[test]
    fn maintainer_fires_swap_after_update() {
        // path 1-2-3 with M={2}; a pendant 4 on 3 is removed, re-seeding 2's candidates
        let g = DynamicGraph::from_edges([(1, 2), (2, 3), (3, 4)]).unwrap();
        let mut m = Maintainer::new(g, &[2, 4], OneSwap).unwrap();
        let r = m.update(&UpdateOp::RemoveEdge(3, 4)).unwrap();
        assert_eq!(r.swaps, 1);
        assert_eq!(m.members(), vec![1, 3, 4]);
        m.audit().unwrap();
        assert!(m.find_swap().is_none());
    }
}
