//! Bookkeeping shared by the adjacency-list estimators: which vertices have
//! arrived, O(1) membership in the current block, and stream validation.

use crate::error::{Error, Result};
use crate::graph::{AdjBlock, Edge, VertexId};
use crate::rng::splitmix64;

#[derive(Debug, Default)]
pub(crate) struct BlockTracker {
    arrived: Vec<bool>,
    stamp: Vec<u32>,
    epoch: u32,
    current: Option<VertexId>,
    fingerprint: u64,
    open: i64,
}

impl BlockTracker {
    pub(crate) fn new() -> Self {
        Self { epoch: 0, ..Default::default() }
    }

    fn grow(&mut self, v: VertexId) {
        let need = v as usize + 1;
        if self.arrived.len() < need {
            self.arrived.resize(need, false);
            self.stamp.resize(need, 0);
        }
    }

    /// Starts block `b`: validates it and marks its neighbors.
    pub(crate) fn begin(&mut self, b: &AdjBlock<'_>) -> Result<()> {
        let v = b.vertex;
        self.grow(v);
        if self.arrived[v as usize] {
            return Err(Error::MalformedStream(format!("vertex {v} has two blocks")));
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        for &u in b.neighbors {
            if u == v {
                return Err(Error::MalformedStream(format!("self-loop at {v}")));
            }
            self.grow(u);
            if self.stamp[u as usize] == self.epoch {
                return Err(Error::MalformedStream(format!("edge ({v}, {u}) repeated in one block")));
            }
            self.stamp[u as usize] = self.epoch;
            let h = splitmix64(Edge::of(u, v).key());
            if self.arrived[u as usize] {
                self.fingerprint = self.fingerprint.wrapping_sub(h);
                self.open -= 1;
            } else {
                self.fingerprint = self.fingerprint.wrapping_add(h);
                self.open += 1;
            }
        }
        self.arrived[v as usize] = true;
        self.current = Some(v);
        Ok(())
    }

    /// Whether `u`'s block came before the current one.
    #[inline]
    pub(crate) fn arrived_before(&self, u: VertexId) -> bool {
        Some(u) != self.current && self.arrived.get(u as usize).copied().unwrap_or(false)
    }

    /// Whether `z` is a neighbor in the current block.
    #[inline]
    pub(crate) fn in_block(&self, z: VertexId) -> bool {
        self.stamp.get(z as usize).is_some_and(|&s| s == self.epoch)
    }

    /// Checks that every edge was seen exactly twice.
    pub(crate) fn finish(&self) -> Result<()> {
        if self.open != 0 || self.fingerprint != 0 {
            return Err(Error::MalformedStream(
                "some edge was not listed by both of its endpoints".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(blocks: &[(VertexId, &[VertexId])]) -> Result<()> {
        let mut t = BlockTracker::new();
        for &(vertex, neighbors) in blocks {
            t.begin(&AdjBlock { vertex, neighbors })?;
        }
        t.finish()
    }

    #[test]
    fn valid_and_invalid_streams() {
        assert!(run(&[(0, &[1, 2]), (1, &[0, 2]), (2, &[0, 1])]).is_ok());
        // 0-1 listed only by 0
        assert!(run(&[(0, &[1]), (1, &[])]).is_err());
        // edge listed twice by the same endpoint
        assert!(run(&[(0, &[1, 1]), (1, &[0])]).is_err());
        // repeated block
        assert!(run(&[(0, &[]), (0, &[])]).is_err());
        // matching counts but mismatched edges: 0-1, 2-3 first; 0-3 closing twice
        assert!(run(&[(0, &[1]), (2, &[3]), (3, &[0]), (1, &[2])]).is_err());
    }

    #[test]
    fn sighting_order() {
        let mut t = BlockTracker::new();
        t.begin(&AdjBlock { vertex: 0, neighbors: &[1] }).unwrap();
        assert!(!t.arrived_before(0) && !t.arrived_before(1));
        assert!(t.in_block(1) && !t.in_block(0));
        t.begin(&AdjBlock { vertex: 1, neighbors: &[0] }).unwrap();
        assert!(t.arrived_before(0) && !t.in_block(1));
    }
}
