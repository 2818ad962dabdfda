//! Small named graphs used by tests, benches and examples.

use rand::Rng;

use super::{Graph, GraphBuilder, VertexId};

pub fn complete(k: usize) -> Graph {
    let k = k as VertexId;
    Graph::from_pairs(k as usize, (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))))
        .expect("endpoints in range")
}

pub fn cycle(k: usize) -> Graph {
    assert!(k >= 3, "a cycle needs at least 3 vertices");
    let k = k as VertexId;
    Graph::from_pairs(k as usize, (0..k).map(|i| (i, (i + 1) % k))).expect("endpoints in range")
}

pub fn path(k: usize) -> Graph {
    let k = k as VertexId;
    Graph::from_pairs(k as usize, (1..k).map(|i| (i - 1, i))).expect("endpoints in range")
}

/// `K_{a,b}` with the `a` side on vertices `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let (a, b) = (a as VertexId, b as VertexId);
    Graph::from_pairs((a + b) as usize, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))))
        .expect("endpoints in range")
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let l = leaves as VertexId;
    Graph::from_pairs(leaves + 1, (1..=l).map(|v| (0, v))).expect("endpoints in range")
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
    Graph::from_pairs(10, outer.chain(spokes).chain(inner)).expect("endpoints in range")
}

/// `G(n, q)`: every pair present independently with probability `q`.
pub fn gnp<R: Rng + ?Sized>(n: usize, q: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    for a in 0..n as VertexId {
        for c in a + 1..n as VertexId {
            if rng.gen::<f64>() < q {
                b.push(a, c, None).expect("endpoints in range");
            }
        }
    }
    b.build().0
}

/// `m` uniformly random distinct edges on `n` vertices (`m` must be well
/// below `n(n-1)/2`). Sparse alternative to [`gnp`] for large streams.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(n >= 2 && m <= n * (n - 1) / 4, "gnm is meant for sparse graphs");
    let mut edges = std::collections::HashSet::with_capacity(m);
    while edges.len() < m {
        let a = rng.gen_range(0..n as VertexId);
        let b = rng.gen_range(0..n as VertexId);
        if a != b {
            edges.insert(super::Edge::of(a, b));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Graph::from_edges(n, &edges).expect("endpoints in range")
}

/// Disjoint union; vertices of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n() as VertexId;
    let pairs = a
        .edges()
        .iter()
        .map(|e| e.endpoints())
        .chain(b.edges().iter().map(|e| (e.lo() + shift, e.hi() + shift)));
    Graph::from_pairs(a.n() + b.n(), pairs).expect("endpoints in range")
}
