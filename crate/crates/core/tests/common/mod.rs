#![allow(dead_code)]

use proptest::prelude::*;
use streamcount::graph::families::{complete, complete_bipartite, cycle, disjoint_union, gnp, path, petersen, star};
use streamcount::rng::seeded;
use streamcount::{Graph, VertexId};

/// Small graphs with known counts: named families plus seeded random ones.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("K3".into(), complete(3)),
        ("K4".into(), complete(4)),
        ("K5".into(), complete(5)),
        ("K6".into(), complete(6)),
        ("C4".into(), cycle(4)),
        ("C5".into(), cycle(5)),
        ("C6".into(), cycle(6)),
        ("K2,3".into(), complete_bipartite(2, 3)),
        ("K3,3".into(), complete_bipartite(3, 3)),
        ("Petersen".into(), petersen()),
        ("P5".into(), path(5)),
        ("S5".into(), star(5)),
        ("K3+K4".into(), disjoint_union(&complete(3), &complete(4))),
        ("E4".into(), Graph::empty(4)),
    ];
    for seed in 0..11u64 {
        let q = 0.25 + 0.05 * seed as f64;
        out.push((format!("gnp12-{seed}"), gnp(12, q, &mut seeded(100 + seed))));
    }
    out
}

/// Triangles by checking every vertex triple.
pub fn brute_triangles(g: &Graph) -> u64 {
    let n = g.n() as VertexId;
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    t += 1;
                }
            }
        }
    }
    t
}

/// Four-cycles by checking the three pairings of every vertex quadruple.
pub fn brute_four_cycles(g: &Graph) -> u64 {
    let n = g.n() as VertexId;
    let e = |a, b| g.has_edge(a, b);
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    t += (e(a, b) && e(b, c) && e(c, d) && e(d, a)) as u64;
                    t += (e(a, b) && e(b, d) && e(d, c) && e(c, a)) as u64;
                    t += (e(a, c) && e(c, b) && e(b, d) && e(d, a)) as u64;
                }
            }
        }
    }
    t
}

/// `k` disjoint copies of a graph.
pub fn copies(g: &Graph, k: usize) -> Graph {
    let mut out = Graph::empty(0);
    for _ in 0..k {
        out = disjoint_union(&out, g);
    }
    out
}

pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Random simple graph on `1..=max_n` vertices.
pub fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = prop::collection::vec((0..n as VertexId, 0..n as VertexId), 0..=n * n);
        pairs.prop_map(move |p| Graph::from_pairs(n, p).unwrap())
    })
}
