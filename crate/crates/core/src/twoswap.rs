//! Engine keeping `M` free of 1-swaps and 2-swaps.
//!
//! A pair `S = {u, v}` of members is 2-swappable iff its candidate set
//! contains an independent triple. Once no 1-swaps remain, such a triple
//! `(x, y, z)` always has `x` with IS-neighborhood exactly `S`, `y`
//! adjacent to `u`, and `z` adjacent to `v`, so the search starts from
//! the count-2 vertices keyed by `S`.

use rustc_hash::FxHashSet;

use crate::framework::Engine;
use crate::graph::{DynamicGraph, UpdateOp, VertexId};
use crate::hierarchy::KeySet;
use crate::oneswap::{find_level_one, one_swap_pass};
use crate::queue::SwapQueue;
use crate::state::{MaintainerState, UpdateEffect};

#[derive(Debug, Clone, Copy, Default)]
pub struct TwoSwap;

/// For `x` keyed by the pair `key`, looks for `y, z` completing an
/// independent triple inside the candidate set of `key`. `y` is drawn from
/// the candidates adjacent to the smaller member.
pub fn find_two_swap(
    g: &DynamicGraph,
    st: &MaintainerState,
    key: &KeySet,
    x: VertexId,
    work: &mut usize,
) -> Option<(VertexId, VertexId)> {
    let h = st.hierarchy();
    if key.len() != 2 || h.key_of(x) != Some(key) {
        return None;
    }
    let (a, b) = (key.as_slice()[0], key.as_slice()[1]);
    let (ka, kb) = (KeySet::single(a), KeySet::single(b));
    let lists = [h.list(&ka), h.list(&kb), h.list(key)];
    let total: usize = lists.iter().map(|l| l.map_or(0, |l| l.len())).sum();
    if total < 3 {
        return None;
    }
    let in_c = |w: VertexId| h.in_logical(w, key);

    *work += g.degree(x);
    let near_x: FxHashSet<VertexId> = g.neighbors(x).filter(|&w| in_c(w)).collect();
    // candidates not adjacent to x, x itself included
    let far_len = total - near_x.len();
    if far_len < 3 {
        return None;
    }

    let y_side = lists[0].into_iter().chain(lists[2]).flat_map(|l| l.iter().copied());
    for y in y_side {
        if y == x || near_x.contains(&y) {
            continue;
        }
        *work += g.degree(y);
        let blocked = g
            .neighbors(y)
            .filter(|&w| in_c(w) && !near_x.contains(&w))
            .count();
        if far_len >= blocked + 3 {
            let z = lists
                .iter()
                .flatten()
                .flat_map(|l| l.iter().copied())
                .find(|&z| z != x && z != y && !near_x.contains(&z) && !g.has_edge(y, z))
                .expect("third vertex exists by count");
            return Some((y, z));
        }
    }
    None
}

/// Exchanges the pair `key` for `{x, y}` and refills around the pair.
pub(crate) fn apply_two_swap(
    g: &DynamicGraph,
    st: &mut MaintainerState,
    key: &KeySet,
    x: VertexId,
    y: VertexId,
) {
    let (a, b) = (key.as_slice()[0], key.as_slice()[1]);
    st.move_out(g, a);
    st.move_out(g, b);
    st.move_in(g, x);
    st.move_in(g, y);
    let mut scope: Vec<VertexId> = g.neighbors(a).chain(g.neighbors(b)).collect();
    scope.sort_unstable();
    scope.dedup();
    st.extend_maximal(g, scope);
}

pub(crate) fn two_swap_pass(
    g: &DynamicGraph,
    st: &mut MaintainerState,
    key: &KeySet,
    pending: &[VertexId],
) -> bool {
    if key.len() != 2 || !key.as_slice().iter().all(|&v| st.in_set(v)) {
        return false;
    }
    let mut work = 0;
    let mut found = None;
    for &x in pending {
        if let Some((y, _)) = find_two_swap(g, st, key, x, &mut work) {
            found = Some((x, y));
            break;
        }
    }
    st.add_work(work);
    match found {
        Some((x, y)) => {
            apply_two_swap(g, st, key, x, y);
            true
        }
        None => false,
    }
}

/// Level-1 and level-2 queue entries implied by `op`.
pub fn twoswap_seed(
    g: &DynamicGraph,
    st: &MaintainerState,
    op: &UpdateOp,
    effect: &UpdateEffect,
) -> Vec<(KeySet, VertexId)> {
    let mut out = Vec::new();
    let mut push = |w: VertexId| {
        if !st.in_set(w) && (1..=2).contains(&st.count(w)) {
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
            } else {
                out.extend(edge_removal_seeds(g, st, *u, *v));
            }
        }
    }
    out
}

/// Seeds for deleting an edge between two non-members.
fn edge_removal_seeds(
    g: &DynamicGraph,
    st: &MaintainerState,
    u: VertexId,
    v: VertexId,
) -> Option<(KeySet, VertexId)> {
    let (cu, cv) = (st.count(u), st.count(v));
    let (ku, kv) = (st.key(u), st.key(v));
    if cu == 1 && cv == 1 {
        if ku == kv {
            return Some((ku, u));
        }
        let pair = KeySet::pair(ku.as_slice()[0], kv.as_slice()[0]);
        let w = st
            .hierarchy()
            .list(&pair)?
            .iter()
            .copied()
            .find(|&w| !g.has_edge(u, w) && !g.has_edge(v, w))?;
        return Some((pair, w));
    }
    if cv == 2 && (1..=2).contains(&cu) && ku.is_subset_of(&kv) {
        return Some((kv, v));
    }
    if cu == 2 && (1..=2).contains(&cv) && kv.is_subset_of(&ku) {
        return Some((ku, u));
    }
    None
}

impl Engine for TwoSwap {
    fn max_level(&self) -> usize {
        2
    }

    fn name(&self) -> &'static str {
        "twoswap"
    }

    fn seed(
        &self,
        g: &DynamicGraph,
        st: &MaintainerState,
        op: &UpdateOp,
        effect: &UpdateEffect,
    ) -> Vec<(KeySet, VertexId)> {
        twoswap_seed(g, st, op, effect)
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
        match level {
            1 => one_swap_pass(g, st, queue, key.as_slice()[0], pending, true),
            2 => two_swap_pass(g, st, key, pending),
            _ => false,
        }
    }

    fn find_swap(&self, g: &DynamicGraph, st: &MaintainerState) -> Option<KeySet> {
        if let Some(k) = find_level_one(g, st) {
            return Some(k);
        }
        let mut work = 0;
        st.hierarchy().level(2).find_map(|(key, list)| {
            list.iter()
                .any(|&x| find_two_swap(g, st, key, x, &mut work).is_some())
                .then(|| key.clone())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Maintainer;

    // u=1, v=2, x=3, y=4, z=5 with edges u-x, v-x, u-y, v-z
    fn gadget() -> DynamicGraph {
        DynamicGraph::from_edges([(1, 3), (2, 3), (1, 4), (2, 5)]).unwrap()
    }

    fn state(g: &DynamicGraph, m: &[VertexId]) -> MaintainerState {
        let mut st = MaintainerState::new(g, 2);
        for &v in m {
            st.move_in(g, v);
        }
        st
    }

    #[test]
    fn gadget_has_two_swap_only() {
        let g = gadget();
        let mut st = state(&g, &[1, 2]);
        assert!(find_level_one(&g, &st).is_none());
        let key = KeySet::pair(1, 2);
        let mut work = 0;
        assert_eq!(find_two_swap(&g, &st, &key, 3, &mut work), Some((4, 5)));
        assert!(two_swap_pass(&g, &mut st, &key, &[3]));
        assert_eq!(st.members(), vec![3, 4, 5]);
        st.audit(&g, true).unwrap();
    }

    #[test]
    fn gadget_with_yz_edge_is_stable() {
        let mut g = gadget();
        g.insert_edge(4, 5).unwrap();
        let mut st = state(&g, &[1, 2]);
        assert!(!two_swap_pass(&g, &mut st, &KeySet::pair(1, 2), &[3]));
        assert_eq!(st.members(), vec![1, 2]);
        assert_eq!(st.hierarchy().list_len(&KeySet::pair(1, 2)), 1);
    }

    #[test]
    fn stale_level_two_entry_skipped() {
        let g = gadget();
        // 3's IS-neighborhood is {1} once 2 leaves M
        let mut st = state(&g, &[1, 5]);
        assert!(!two_swap_pass(&g, &mut st, &KeySet::pair(1, 2), &[3]));
    }

    #[test]
    fn maintainer_finds_gadget_swap_on_stabilize() {
        let mut m = Maintainer::new(gadget(), &[1, 2], TwoSwap).unwrap();
        assert_eq!(m.find_swap(), Some(KeySet::pair(1, 2)));
        assert_eq!(m.stabilize(), 1);
        assert_eq!(m.members(), vec![3, 4, 5]);
        assert!(m.find_swap().is_none());
        m.audit().unwrap();
    }

    #[test]
    fn seed_edge_removal_case_c() {
        // v=10 has IS-neighbors {1,2}; u=11 has {1}; deleting (10,11)
        let mut g = DynamicGraph::from_edges([(1, 10), (2, 10), (1, 11), (10, 11)]).unwrap();
        let mut st = MaintainerState::with_initial_set(&g, &[1, 2], 2).unwrap();
        let op = UpdateOp::RemoveEdge(11, 10);
        let eff = st.simple_update(&mut g, &op).unwrap();
        assert_eq!(twoswap_seed(&g, &st, &op, &eff), vec![(KeySet::pair(1, 2), 10)]);
    }

    #[test]
    fn seed_edge_removal_case_b() {
        // u=11 keyed {1}, v=12 keyed {2}, w=10 keyed {1,2} adjacent to neither
        let mut g =
            DynamicGraph::from_edges([(1, 10), (2, 10), (1, 11), (2, 12), (11, 12)]).unwrap();
        let mut st = MaintainerState::with_initial_set(&g, &[1, 2], 2).unwrap();
        let op = UpdateOp::RemoveEdge(11, 12);
        let eff = st.simple_update(&mut g, &op).unwrap();
        assert_eq!(twoswap_seed(&g, &st, &op, &eff), vec![(KeySet::pair(1, 2), 10)]);
    }

    #[test]
    fn seed_new_vertex_by_count() {
        let mut g = DynamicGraph::edgeless([1, 2]);
        let mut st = MaintainerState::with_initial_set(&g, &[1, 2], 2).unwrap();
        let op = UpdateOp::AddVertex(3, vec![1, 2]);
        let eff = st.simple_update(&mut g, &op).unwrap();
        assert_eq!(twoswap_seed(&g, &st, &op, &eff), vec![(KeySet::pair(1, 2), 3)]);
    }

    #[test]
    fn seed_nothing_for_isolated_non_member_removal() {
        let mut g = DynamicGraph::from_edges([(1, 2)]).unwrap();
        g.ensure_vertex(3);
        let mut st = MaintainerState::with_initial_set(&g, &[1, 3], 2).unwrap();
        let op = UpdateOp::RemoveVertex(2);
        let eff = st.simple_update(&mut g, &op).unwrap();
        assert!(twoswap_seed(&g, &st, &op, &eff).is_empty());
    }

    #[test]
    fn promotion_requeues_shared_count_two_vertex() {
        // v=1, v'=2 in M; w=10 keyed {1,2}; new candidate u=11 of 1 not adjacent to w
        let g = DynamicGraph::from_edges([(1, 10), (2, 10), (1, 11)]).unwrap();
        let mut st = state(&g, &[1, 2]);
        let mut q = SwapQueue::new(2);
        assert!(!one_swap_pass(&g, &mut st, &mut q, 1, &[11], true));
        assert_eq!(q.pop_lowest(), Some((2, KeySet::pair(1, 2), vec![10])));
    }

    #[test]
    fn no_promotion_when_fully_adjacent() {
        let g = DynamicGraph::from_edges([(1, 10), (2, 10), (1, 11), (10, 11)]).unwrap();
        let mut st = state(&g, &[1, 2]);
        let mut q = SwapQueue::new(2);
        assert!(!one_swap_pass(&g, &mut st, &mut q, 1, &[11], true));
        assert!(q.is_empty());
    }

    #[test]
    fn no_promotion_when_one_swappable() {
        let g = DynamicGraph::from_edges([(1, 10), (2, 10), (1, 11), (1, 12)]).unwrap();
        let mut st = state(&g, &[1, 2]);
        let mut q = SwapQueue::new(2);
        assert!(one_swap_pass(&g, &mut st, &mut q, 1, &[11], true));
        assert!(q.is_empty());
    }
}
