use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::graph::VertexId;
use crate::hierarchy::{FxIndexSet, KeySet};

#[derive(Debug, Clone, Default)]
struct LevelQueue {
    order: VecDeque<KeySet>,
    pending: FxHashMap<KeySet, FxIndexSet<VertexId>>,
    member: FxHashMap<VertexId, KeySet>,
}

impl LevelQueue {
    fn push(&mut self, key: KeySet, v: VertexId) {
        if let Some(prev) = self.member.get(&v) {
            if *prev == key {
                return;
            }
            if let Some(p) = self.pending.get_mut(prev) {
                p.shift_remove(&v);
            }
        }
        self.member.insert(v, key.clone());
        match self.pending.get_mut(&key) {
            Some(p) => {
                p.insert(v);
            }
            None => {
                self.order.push_back(key.clone());
                let mut p = FxIndexSet::default();
                p.insert(v);
                self.pending.insert(key, p);
            }
        }
    }

    fn pop(&mut self) -> Option<(KeySet, Vec<VertexId>)> {
        while let Some(key) = self.order.pop_front() {
            let Some(p) = self.pending.remove(&key) else {
                continue;
            };
            for v in &p {
                self.member.remove(v);
            }
            if !p.is_empty() {
                return Some((key, p.into_iter().collect()));
            }
        }
        None
    }

    fn is_empty(&self) -> bool {
        self.member.is_empty()
    }
}

/// Per-level FIFO dictionaries from a key set `S` to the vertices newly
/// added to its candidate set. A vertex sits in at most one entry per level;
/// re-enqueueing it under a different key moves it.
#[derive(Debug, Clone)]
pub struct SwapQueue {
    levels: Vec<LevelQueue>,
}

impl SwapQueue {
    pub fn new(max_level: usize) -> Self {
        Self {
            levels: vec![LevelQueue::default(); max_level],
        }
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    /// Enqueues `v` under `key` at level `key.len()`; keys outside `1..=k`
    /// are ignored.
    pub fn push(&mut self, key: KeySet, v: VertexId) {
        let level = key.len();
        if level == 0 || level > self.levels.len() {
            return;
        }
        self.levels[level - 1].push(key, v);
    }

    /// Removes the oldest entry of the lowest nonempty level.
    pub fn pop_lowest(&mut self) -> Option<(usize, KeySet, Vec<VertexId>)> {
        self.levels
            .iter_mut()
            .enumerate()
            .find_map(|(i, q)| q.pop().map(|(k, p)| (i + 1, k, p)))
    }

    pub fn is_empty(&self) -> bool {
        self.levels.iter().all(LevelQueue::is_empty)
    }

    pub fn len_at(&self, level: usize) -> usize {
        self.levels.get(level.wrapping_sub(1)).map_or(0, |q| q.member.len())
    }

    pub fn clear(&mut self) {
        for q in &mut self.levels {
            *q = LevelQueue::default();
        }
    }
}
