//! Sampled edges with live triangle counters for the adjacency-list model.
//!
//! An edge is stored at its first sighting, anchored at the current vertex.
//! Every later block adjacent to both endpoints bumps its counter, so at the
//! second sighting the counter holds the triangles closed in between.

use rustc_hash::FxHashMap;

use crate::adjtrack::BlockTracker;
use crate::graph::{AdjBlock, Edge, VertexId};

#[derive(Debug)]
pub(crate) struct Tracked<T> {
    pub(crate) count: u64,
    pub(crate) anchor: VertexId,
    pub(crate) payload: T,
}

#[derive(Debug)]
pub(crate) struct TrackedEdges<T> {
    entries: FxHashMap<Edge, Tracked<T>>,
    by_anchor: FxHashMap<VertexId, Vec<VertexId>>,
}

impl<T> Default for TrackedEdges<T> {
    fn default() -> Self {
        TrackedEdges { entries: FxHashMap::default(), by_anchor: FxHashMap::default() }
    }
}

impl<T> TrackedEdges<T> {
    pub(crate) fn len(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn insert(&mut self, anchor: VertexId, other: VertexId, payload: T) {
        self.entries.insert(Edge::of(anchor, other), Tracked { count: 0, anchor, payload });
        self.by_anchor.entry(anchor).or_default().push(other);
    }

    pub(crate) fn get_mut(&mut self, e: Edge) -> Option<&mut Tracked<T>> {
        self.entries.get_mut(&e)
    }

    /// Bumps every stored edge whose endpoints are both in the current block.
    /// Returns the number of stored edges examined.
    pub(crate) fn bump(&mut self, block: &AdjBlock<'_>, tracker: &BlockTracker) -> usize {
        let mut work = 0;
        for &a in block.neighbors {
            if let Some(bs) = self.by_anchor.get(&a) {
                work += bs.len();
                for &b in bs {
                    if tracker.in_block(b) {
                        if let Some(t) = self.entries.get_mut(&Edge::of(a, b)) {
                            t.count += 1;
                        }
                    }
                }
            }
        }
        work
    }

    pub(crate) fn take(&mut self, e: Edge) -> Option<Tracked<T>> {
        let t = self.entries.remove(&e)?;
        let anchor = t.anchor;
        let other = e.other(anchor).expect("anchor is an endpoint");
        if let Some(list) = self.by_anchor.get_mut(&anchor) {
            if let Some(i) = list.iter().position(|&x| x == other) {
                list.swap_remove(i);
            }
            if list.is_empty() {
                self.by_anchor.remove(&anchor);
            }
        }
        Some(t)
    }
}
