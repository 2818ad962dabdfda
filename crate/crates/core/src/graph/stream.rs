//! The two stream models.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Edge, Graph, VertexId, VertexOrder};
use crate::error::{Error, Result};

/// All edges incident to `vertex`, delivered together. Neighbor lists taken
/// from a [`Graph`] are sorted ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdjBlock<'a> {
    pub vertex: VertexId,
    pub neighbors: &'a [VertexId],
}

/// One edge of an arbitrary-order stream with its stream position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArbitraryEdge {
    pub edge: Edge,
    pub index: usize,
}

/// Adjacency-list stream: one block per vertex in `order`.
#[derive(Clone, Debug)]
pub struct AdjacencyStream<'a> {
    graph: &'a Graph,
    order: &'a VertexOrder,
    pos: usize,
}

pub fn adjacency_stream<'a>(graph: &'a Graph, order: &'a VertexOrder) -> AdjacencyStream<'a> {
    assert_eq!(graph.n(), order.len(), "vertex order must cover the graph");
    AdjacencyStream { graph, order, pos: 0 }
}

impl<'a> Iterator for AdjacencyStream<'a> {
    type Item = AdjBlock<'a>;

    fn next(&mut self) -> Option<AdjBlock<'a>> {
        let &vertex = self.order.sequence().get(self.pos)?;
        self.pos += 1;
        Some(AdjBlock { vertex, neighbors: self.graph.neighbors(vertex) })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.order.len() - self.pos;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for AdjacencyStream<'_> {}

/// Arbitrary-order stream: every edge of a graph exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArbitraryStream {
    edges: Vec<Edge>,
}

impl ArbitraryStream {
    /// Canonical (sorted) edge order.
    pub fn canonical(g: &Graph) -> Self {
        ArbitraryStream { edges: g.edges().to_vec() }
    }

    /// Uniformly random permutation drawn from `rng`.
    pub fn shuffled<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Self {
        let mut edges = g.edges().to_vec();
        edges.shuffle(rng);
        ArbitraryStream { edges }
    }

    /// Uniformly random permutation determined by `seed`.
    pub fn seeded(g: &Graph, seed: u64) -> Self {
        Self::shuffled(g, &mut crate::rng::seeded(seed))
    }

    /// Caller-supplied order, used as is.
    pub fn explicit(edges: Vec<Edge>) -> Self {
        ArbitraryStream { edges }
    }

    /// Edges sorted by timestamp, ties by canonical order.
    pub fn by_timestamp(g: &Graph) -> Result<Self> {
        let ts = g.timestamps().ok_or(Error::MissingTimestamps)?;
        let mut idx: Vec<usize> = (0..g.m()).collect();
        idx.sort_by(|&a, &b| ts[a].total_cmp(&ts[b]).then(a.cmp(&b)));
        Ok(ArbitraryStream { edges: idx.into_iter().map(|i| g.edges()[i]).collect() })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = ArbitraryEdge> + '_ {
        self.edges.iter().enumerate().map(|(index, &edge)| ArbitraryEdge { edge, index })
    }
}

impl<'a> IntoIterator for &'a ArbitraryStream {
    type Item = ArbitraryEdge;
    type IntoIter = Box<dyn ExactSizeIterator<Item = ArbitraryEdge> + 'a>;

    fn into_iter(self) -> Self::IntoIter {
        Box::new(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::super::families::{complete, path};
    use super::*;

    #[test]
    fn adjacency_blocks_of_triangle() {
        let g = complete(3);
        let order = VertexOrder::identity(3);
        let blocks: Vec<_> = adjacency_stream(&g, &order).collect();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[0], AdjBlock { vertex: 0, neighbors: &[1, 2] });
        assert_eq!(blocks[1].neighbors, &[0, 2]);
        assert_eq!(blocks[2].neighbors, &[0, 1]);
    }

    #[test]
    fn adjacency_blocks_of_edge_and_empty_graph() {
        let g = path(2);
        let order = VertexOrder::identity(2);
        let sizes: Vec<_> = adjacency_stream(&g, &order).map(|b| b.neighbors.len()).collect();
        assert_eq!(sizes, [1, 1]);

        let empty = Graph::empty(2);
        let blocks: Vec<_> = adjacency_stream(&empty, &order).collect();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.neighbors.is_empty()));
    }

    #[test]
    fn seeded_streams_are_deterministic() {
        let g = complete(3);
        let a = ArbitraryStream::seeded(&g, 7);
        let b = ArbitraryStream::seeded(&g, 7);
        assert_eq!(a, b);
        let mut sorted = a.edges().to_vec();
        sorted.sort();
        assert_eq!(sorted, g.edges());
        assert!(a.iter().enumerate().all(|(i, ev)| ev.index == i));
    }

    #[test]
    fn explicit_order_is_kept() {
        let g = complete(3);
        let e = g.edges();
        let s = ArbitraryStream::explicit(vec![e[2], e[0], e[1]]);
        let got: Vec<_> = s.iter().map(|x| x.edge).collect();
        assert_eq!(got, [e[2], e[0], e[1]]);
    }

    #[test]
    fn timestamp_order() {
        let loaded =
            crate::graph::load_edge_list("0 1 3\n1 2 1\n2 0 2\n".as_bytes(), Default::default())
                .unwrap();
        let s = ArbitraryStream::by_timestamp(&loaded.graph).unwrap();
        let got: Vec<_> = s.iter().map(|x| x.edge.endpoints()).collect();
        assert_eq!(got, [(1, 2), (0, 2), (0, 1)]);
        assert!(ArbitraryStream::by_timestamp(&complete(3)).is_err());
    }
}
