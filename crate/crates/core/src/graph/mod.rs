//! Simple undirected graphs, the two stream models, and exact counting.
//!
//! A [`Graph`] is immutable once built. Edges are stored in canonical form
//! (`lo < hi`) and sorted, and the adjacency index is a CSR layout with sorted
//! neighbor lists, so membership checks are binary searches.

mod exact;
pub mod families;
mod io;
mod stream;

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub use exact::{
    exact_four_cycle_count, exact_triangle_count, per_edge_four_cycle_counts,
    per_edge_triangle_counts, r_count, r_counts, wedge_count,
};
pub(crate) use exact::intersection_size;
pub use io::{load_edge_list, load_edge_list_with, load_snapshot_dir, EdgeListFormat, Labels, LoadedGraph};
pub use stream::{adjacency_stream, AdjBlock, AdjacencyStream, ArbitraryEdge, ArbitraryStream};

pub type VertexId = u32;

/// An undirected edge in canonical form: `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    /// Canonical edge for two endpoints known to be distinct.
    #[inline]
    pub(crate) fn of(a: VertexId, b: VertexId) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    #[inline]
    pub fn lo(self) -> VertexId {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> VertexId {
        self.hi
    }

    #[inline]
    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(self, v: VertexId) -> Option<VertexId> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    /// Packs the edge into one word; used for hashing and fingerprints.
    #[inline]
    pub(crate) fn key(self) -> u64 {
        ((self.lo as u64) << 32) | self.hi as u64
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<VertexId>,
    timestamps: Option<Vec<f64>>,
}

/// Counts of input pairs discarded while building a simple graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub duplicates: usize,
    pub self_loops: usize,
}

impl Graph {
    /// Builds a graph from endpoint pairs, silently dropping self-loops and
    /// duplicate pairs. Fails if an endpoint is `>= n`.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut builder = GraphBuilder::new(n);
        for (a, b) in pairs {
            builder.push(a, b, None)?;
        }
        Ok(builder.build().0)
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Graph> {
        Graph::from_pairs(n, edges.iter().map(|e| e.endpoints()))
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build().0
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges in sorted order. Per-edge tables in this crate are
    /// indexed by position in this slice.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        if a == b || a as usize >= self.n || b as usize >= self.n {
            return false;
        }
        let (a, b) = if self.degree(a) <= self.degree(b) { (a, b) } else { (b, a) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// Per-edge timestamps aligned with [`Graph::edges`], if the source had them.
    pub fn timestamps(&self) -> Option<&[f64]> {
        self.timestamps.as_deref()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as VertexId).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Subgraph on the same vertex set keeping only the listed edge positions.
    pub fn edge_subgraph(&self, positions: impl IntoIterator<Item = usize>) -> Graph {
        let mut builder = GraphBuilder::new(self.n);
        for i in positions {
            let e = self.edges[i];
            let t = self.timestamps.as_ref().map(|ts| ts[i]);
            builder.push_unchecked(e.lo, e.hi, t);
        }
        builder.build().0
    }
}

/// Accumulates raw endpoint pairs and produces a simple [`Graph`].
#[derive(Debug)]
pub struct GraphBuilder {
    n: usize,
    raw: Vec<(Edge, Option<f64>)>,
    report: BuildReport,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { n, raw: Vec::new(), report: BuildReport::default() }
    }

    pub fn grow(&mut self, n: usize) {
        self.n = self.n.max(n);
    }

    pub fn push(&mut self, a: VertexId, b: VertexId, timestamp: Option<f64>) -> Result<()> {
        if a as usize >= self.n || b as usize >= self.n {
            return Err(Error::param(format!(
                "edge ({a}, {b}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        self.push_unchecked(a, b, timestamp);
        Ok(())
    }

    fn push_unchecked(&mut self, a: VertexId, b: VertexId, timestamp: Option<f64>) {
        match Edge::new(a, b) {
            Ok(e) => self.raw.push((e, timestamp)),
            Err(_) => self.report.self_loops += 1,
        }
    }

    /// Sorts, deduplicates (keeping the earliest timestamp of a repeated edge)
    /// and builds the adjacency index.
    pub fn build(mut self) -> (Graph, BuildReport) {
        let timed = !self.raw.is_empty() && self.raw.iter().all(|(_, t)| t.is_some());
        self.raw.sort_by(|(a, ta), (b, tb)| {
            a.cmp(b).then_with(|| {
                let ta = ta.unwrap_or(0.0);
                let tb = tb.unwrap_or(0.0);
                ta.total_cmp(&tb)
            })
        });
        let before = self.raw.len();
        self.raw.dedup_by_key(|(e, _)| *e);
        self.report.duplicates += before - self.raw.len();

        let edges: Vec<Edge> = self.raw.iter().map(|(e, _)| *e).collect();
        let timestamps =
            timed.then(|| self.raw.iter().map(|(_, t)| t.unwrap_or_default()).collect());

        let mut degree = vec![0usize; self.n];
        for e in &edges {
            degree[e.lo as usize] += 1;
            degree[e.hi as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(self.n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets.clone();
        let mut adjacency = vec![0; 2 * edges.len()];
        for e in &edges {
            adjacency[cursor[e.lo as usize]] = e.hi;
            cursor[e.lo as usize] += 1;
            adjacency[cursor[e.hi as usize]] = e.lo;
            cursor[e.hi as usize] += 1;
        }
        for v in 0..self.n {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        let graph = Graph { n: self.n, edges, offsets, adjacency, timestamps };
        (graph, self.report)
    }
}

/// Arrival order of vertices in an adjacency-list stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    sequence: Vec<VertexId>,
    rank: Vec<u32>,
}

impl VertexOrder {
    pub fn identity(n: usize) -> Self {
        let sequence: Vec<VertexId> = (0..n as VertexId).collect();
        VertexOrder { rank: sequence.clone(), sequence }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut sequence: Vec<VertexId> = (0..n as VertexId).collect();
        sequence.shuffle(rng);
        Self::from_sequence(sequence).expect("shuffle of 0..n is a permutation")
    }

    /// Order in which `sequence[0]` arrives first. Must be a permutation of `0..n`.
    pub fn from_sequence(sequence: Vec<VertexId>) -> Result<Self> {
        let n = sequence.len();
        let mut rank = vec![u32::MAX; n];
        for (pos, &v) in sequence.iter().enumerate() {
            if v as usize >= n || rank[v as usize] != u32::MAX {
                return Err(Error::param("vertex order is not a permutation of 0..n"));
            }
            rank[v as usize] = pos as u32;
        }
        Ok(VertexOrder { sequence, rank })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    #[inline]
    pub fn rank(&self, v: VertexId) -> u32 {
        self.rank[v as usize]
    }

    pub fn sequence(&self) -> &[VertexId] {
        &self.sequence
    }

    #[inline]
    pub fn precedes(&self, a: VertexId, b: VertexId) -> bool {
        self.rank(a) < self.rank(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_is_canonical() {
        let e = Edge::new(5, 2).unwrap();
        assert_eq!(e.endpoints(), (2, 5));
        assert_eq!(e, Edge::new(2, 5).unwrap());
        assert_eq!(e.other(2), Some(5));
        assert_eq!(e.other(7), None);
        assert!(matches!(Edge::new(3, 3), Err(Error::SelfLoop(3))));
    }

    #[test]
    fn builder_drops_duplicates_and_loops() {
        let mut b = GraphBuilder::new(3);
        b.push(0, 1, None).unwrap();
        b.push(1, 0, None).unwrap();
        b.push(2, 2, None).unwrap();
        b.push(1, 2, None).unwrap();
        let (g, report) = b.build();
        assert_eq!(g.m(), 2);
        assert_eq!(report, BuildReport { duplicates: 1, self_loops: 1 });
        assert!(GraphBuilder::new(3).push(0, 3, None).is_err());
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = families::petersen();
        let mut total = 0;
        for v in 0..g.n() as u32 {
            let nb = g.neighbors(v);
            assert!(nb.windows(2).all(|w| w[0] < w[1]));
            for &u in nb {
                assert!(g.neighbors(u).contains(&v));
            }
            total += nb.len();
        }
        assert_eq!(total, 2 * g.m());
    }

    #[test]
    fn duplicate_timestamps_keep_earliest() {
        let mut b = GraphBuilder::new(2);
        b.push(0, 1, Some(5.0)).unwrap();
        b.push(1, 0, Some(2.0)).unwrap();
        let (g, _) = b.build();
        assert_eq!(g.timestamps(), Some(&[2.0][..]));
    }

    #[test]
    fn vertex_order_rejects_non_permutation() {
        assert!(VertexOrder::from_sequence(vec![0, 0, 1]).is_err());
        assert!(VertexOrder::from_sequence(vec![0, 3, 1]).is_err());
        let o = VertexOrder::from_sequence(vec![2, 0, 1]).unwrap();
        assert_eq!(o.rank(2), 0);
        assert!(o.precedes(0, 1));
    }
}
