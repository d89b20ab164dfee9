//! Swap-based update loop shared by all engines.
//!
//! Each update runs the plain maximal-set update, seeds the swap queues,
//! and then drains them lowest level first. Every vertex that is newly
//! added to some candidate set while the update runs (including through
//! swaps) is enqueued under its current key, on top of the engine's own
//! seeding rules.

use crate::graph::{DynamicGraph, GraphError, Strictness, UpdateOp, VertexId};
use crate::hierarchy::KeySet;
use crate::queue::SwapQueue;
use crate::state::{InitError, MaintainerState, UpdateEffect};

/// Plug-in contract for a swap engine maintaining a set with no `k`-swaps.
pub trait Engine {
    /// Highest swap level `k` the engine eliminates.
    fn max_level(&self) -> usize;

    fn name(&self) -> &'static str;

    /// Engine-specific queue entries for `op`, evaluated after the plain
    /// update has been applied.
    fn seed(
        &self,
        g: &DynamicGraph,
        st: &MaintainerState,
        op: &UpdateOp,
        effect: &UpdateEffect,
    ) -> Vec<(KeySet, VertexId)>;

    /// Tests the dequeued entry and performs a swap if one exists.
    /// Returns whether a swap fired.
    fn test_and_swap(
        &self,
        g: &DynamicGraph,
        st: &mut MaintainerState,
        queue: &mut SwapQueue,
        level: usize,
        key: &KeySet,
        pending: &[VertexId],
    ) -> bool;

    /// Runs the engine's own swap tests over the whole state without
    /// mutating it; returns the key of a swappable set if any.
    fn find_swap(&self, g: &DynamicGraph, st: &MaintainerState) -> Option<KeySet>;
}

/// Plain dynamic maximal independent set: no swaps.
#[derive(Debug, Clone, Copy, Default)]
pub struct Simple;

impl Engine for Simple {
    fn max_level(&self) -> usize {
        0
    }

    fn name(&self) -> &'static str {
        "simple"
    }

    fn seed(&self, _: &DynamicGraph, _: &MaintainerState, _: &UpdateOp, _: &UpdateEffect) -> Vec<(KeySet, VertexId)> {
        Vec::new()
    }

    fn test_and_swap(
        &self,
        _: &DynamicGraph,
        _: &mut MaintainerState,
        _: &mut SwapQueue,
        _: usize,
        _: &KeySet,
        _: &[VertexId],
    ) -> bool {
        false
    }

    fn find_swap(&self, _: &DynamicGraph, _: &MaintainerState) -> Option<KeySet> {
        None
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepReport {
    /// False when a lenient run skipped an invalid op.
    pub applied: bool,
    pub swaps: usize,
    pub effect: UpdateEffect,
    /// Adjacency entries visited during the step.
    pub work: u64,
}

/// Graph plus maintained set, driven by an [`Engine`].
#[derive(Debug, Clone)]
pub struct Maintainer<E> {
    graph: DynamicGraph,
    state: MaintainerState,
    queue: SwapQueue,
    engine: E,
    strictness: Strictness,
    total_swaps: usize,
}

impl<E: Engine> Maintainer<E> {
    /// Starts from `initial`, extended to a maximal set in ascending id
    /// order. No swaps are run; call [`Maintainer::stabilize`] for that.
    pub fn new(graph: DynamicGraph, initial: &[VertexId], engine: E) -> Result<Self, InitError> {
        let k = engine.max_level();
        let mut state = MaintainerState::with_initial_set(&graph, initial, k)?;
        state.take_entered();
        Ok(Self {
            graph,
            state,
            queue: SwapQueue::new(k),
            engine,
            strictness: Strictness::Strict,
            total_swaps: 0,
        })
    }

    /// Starts from the ascending-id greedy maximal independent set.
    pub fn greedy(graph: DynamicGraph, engine: E) -> Self {
        Self::new(graph, &[], engine).expect("empty initial set is independent")
    }

    pub fn with_strictness(mut self, strictness: Strictness) -> Self {
        self.strictness = strictness;
        self
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn state(&self) -> &MaintainerState {
        &self.state
    }

    pub fn engine(&self) -> &E {
        &self.engine
    }

    pub fn set_size(&self) -> usize {
        self.state.set_size()
    }

    pub fn members(&self) -> Vec<VertexId> {
        self.state.members()
    }

    pub fn total_swaps(&self) -> usize {
        self.total_swaps
    }

    /// Queues every stored candidate and drains, leaving a set with no
    /// `k`-swaps. Returns the number of swaps fired.
    pub fn stabilize(&mut self) -> usize {
        self.state.take_entered();
        let mut entries: Vec<(KeySet, VertexId)> = (1..=self.engine.max_level())
            .flat_map(|j| {
                self.state
                    .hierarchy()
                    .level(j)
                    .flat_map(|(k, l)| l.iter().map(move |&v| (k.clone(), v)))
            })
            .collect();
        entries.sort();
        for (k, v) in entries {
            self.queue.push(k, v);
        }
        let swaps = self.drain();
        self.total_swaps += swaps;
        swaps
    }

    /// Applies one update and restores the no-`k`-swap invariant.
    pub fn update(&mut self, op: &UpdateOp) -> Result<StepReport, GraphError> {
        let work_before = self.state.work();
        let effect = match self.state.simple_update(&mut self.graph, op) {
            Ok(e) => e,
            Err(e) => {
                return match self.strictness {
                    Strictness::Strict => Err(e),
                    Strictness::Lenient => Ok(StepReport::default()),
                }
            }
        };
        for (key, v) in self.engine.seed(&self.graph, &self.state, op, &effect) {
            self.queue.push(key, v);
        }
        self.flush_entered();
        let swaps = self.drain();
        self.total_swaps += swaps;
        Ok(StepReport {
            applied: true,
            swaps,
            effect,
            work: self.state.work() - work_before,
        })
    }

    fn flush_entered(&mut self) {
        for v in self.state.take_entered() {
            if let Some(key) = self.state.hierarchy().key_of(v) {
                self.queue.push(key.clone(), v);
            }
        }
    }

    fn drain(&mut self) -> usize {
        let mut swaps = 0;
        while let Some((level, key, pending)) = self.queue.pop_lowest() {
            let before = self.state.set_size();
            if self.engine.test_and_swap(
                &self.graph,
                &mut self.state,
                &mut self.queue,
                level,
                &key,
                &pending,
            ) {
                assert!(
                    self.state.set_size() > before,
                    "swap on {key:?} did not grow the set"
                );
                swaps += 1;
            }
            self.flush_entered();
        }
        swaps
    }

    /// Engine-internal check: does any swap the engine knows about exist?
    pub fn find_swap(&self) -> Option<KeySet> {
        self.engine.find_swap(&self.graph, &self.state)
    }

    /// From-scratch consistency check of counts, membership and hierarchy.
    pub fn audit(&self) -> Result<(), String> {
        self.graph.validate()?;
        self.state.audit(&self.graph, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_engine_keeps_maximal() {
        let g = DynamicGraph::from_edges([(1, 2), (2, 3)]).unwrap();
        let mut m = Maintainer::greedy(g, Simple);
        assert_eq!(m.members(), vec![1, 3]);
        let r = m.update(&UpdateOp::RemoveVertex(1)).unwrap();
        assert_eq!(r.swaps, 0);
        assert_eq!(m.members(), vec![3]);
        m.audit().unwrap();
    }

    #[test]
    fn lenient_skips_invalid_ops() {
        let g = DynamicGraph::from_edges([(1, 2)]).unwrap();
        let mut m = Maintainer::greedy(g, Simple).with_strictness(Strictness::Lenient);
        let r = m.update(&UpdateOp::AddEdge(1, 2)).unwrap();
        assert!(!r.applied);
        let mut m = Maintainer::greedy(DynamicGraph::new(), Simple);
        assert!(m.update(&UpdateOp::RemoveVertex(1)).is_err());
    }
}
