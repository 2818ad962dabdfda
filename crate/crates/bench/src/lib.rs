//! Shared inputs for the pass benchmarks.

use streamcount::graph::families::gnm;
use streamcount::graph::{per_edge_triangle_counts, ArbitraryStream};
use streamcount::oracle::EdgeScores;
use streamcount::rng::seeded;
use streamcount::Graph;

pub struct Fixture {
    pub graph: Graph,
    pub stream: ArbitraryStream,
    pub scores: EdgeScores,
}

/// Random graph with `m` edges on `n` vertices, a shuffled stream and exact
/// per-edge triangle counts.
pub fn fixture(n: usize, m: usize, seed: u64) -> Fixture {
    let graph = gnm(n, m, &mut seeded(seed));
    let stream = ArbitraryStream::seeded(&graph, seed + 1);
    let scores = EdgeScores::from_counts(&graph, &per_edge_triangle_counts(&graph));
    Fixture { graph, stream, scores }
}
