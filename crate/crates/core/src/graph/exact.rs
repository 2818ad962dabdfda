//! Exact brute-force counts used as ground truth.

use super::{Edge, Graph, VertexId, VertexOrder};
use crate::error::{Error, Result};

/// Size of the intersection of two sorted slices.
pub(crate) fn intersection_size(a: &[VertexId], b: &[VertexId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn for_each_common(a: &[VertexId], b: &[VertexId], mut f: impl FnMut(VertexId)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Number of triangles, each counted once (at its edge `lo < hi` with apex above `hi`).
pub fn exact_triangle_count(g: &Graph) -> u64 {
    g.edges()
        .iter()
        .map(|e| {
            let a = g.neighbors(e.lo());
            let b = g.neighbors(e.hi());
            let from_a = a.partition_point(|&z| z <= e.hi());
            let from_b = b.partition_point(|&z| z <= e.hi());
            intersection_size(&a[from_a..], &b[from_b..]) as u64
        })
        .sum()
}

/// `N_e` for every edge, aligned with [`Graph::edges`].
pub fn per_edge_triangle_counts(g: &Graph) -> Vec<u64> {
    g.edges()
        .iter()
        .map(|e| intersection_size(g.neighbors(e.lo()), g.neighbors(e.hi())) as u64)
        .collect()
}

/// `R_xy`: triangles `{x, y, z}` with `x <_s z <_s y`. Zero when `y` precedes `x`.
pub fn r_count(g: &Graph, order: &VertexOrder, x: VertexId, y: VertexId) -> Result<u64> {
    let e = Edge::new(x, y)?;
    if g.edge_index(e).is_none() {
        return Err(Error::EdgeNotInGraph(e));
    }
    if !order.precedes(x, y) {
        return Ok(0);
    }
    Ok(r_between(g, order, x, y))
}

fn r_between(g: &Graph, order: &VertexOrder, x: VertexId, y: VertexId) -> u64 {
    let (rx, ry) = (order.rank(x), order.rank(y));
    let mut count = 0;
    for_each_common(g.neighbors(x), g.neighbors(y), |z| {
        let rz = order.rank(z);
        if rx < rz && rz < ry {
            count += 1;
        }
    });
    count
}

/// `R_e` for every edge with `x` taken as the earlier endpoint, aligned with
/// [`Graph::edges`]. Sums to the triangle count.
pub fn r_counts(g: &Graph, order: &VertexOrder) -> Vec<u64> {
    g.edges()
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints();
            if order.precedes(a, b) {
                r_between(g, order, a, b)
            } else {
                r_between(g, order, b, a)
            }
        })
        .collect()
}

/// Common neighbors of `u` and `v`.
pub fn wedge_count(g: &Graph, u: VertexId, v: VertexId) -> Result<u64> {
    if u == v {
        return Err(Error::param("wedge endpoints must differ"));
    }
    Ok(intersection_size(g.neighbors(u), g.neighbors(v)) as u64)
}

/// Number of simple 4-cycles via `sum over pairs {u, v} of C(q(u, v), 2) / 2`.
pub fn exact_four_cycle_count(g: &Graph) -> u64 {
    let n = g.n();
    let mut paths = vec![0u64; n];
    let mut touched: Vec<VertexId> = Vec::new();
    let mut total = 0u64;
    for u in 0..n as VertexId {
        for &w in g.neighbors(u) {
            for &v in g.neighbors(w) {
                if v > u {
                    if paths[v as usize] == 0 {
                        touched.push(v);
                    }
                    paths[v as usize] += 1;
                }
            }
        }
        for v in touched.drain(..) {
            let q = paths[v as usize];
            total += q * q.saturating_sub(1) / 2;
            paths[v as usize] = 0;
        }
    }
    total / 2
}

/// Number of 4-cycles through each edge, aligned with [`Graph::edges`].
pub fn per_edge_four_cycle_counts(g: &Graph) -> Vec<u64> {
    let mut mark = vec![false; g.n()];
    g.edges()
        .iter()
        .map(|e| {
            let (u, v) = e.endpoints();
            for &z in g.neighbors(v) {
                mark[z as usize] = true;
            }
            // cycles u - w - z - v - u
            let mut count = 0u64;
            for &w in g.neighbors(u) {
                if w == v {
                    continue;
                }
                count += g
                    .neighbors(w)
                    .iter()
                    .filter(|&&z| z != u && mark[z as usize])
                    .count() as u64;
            }
            for &z in g.neighbors(v) {
                mark[z as usize] = false;
            }
            count
        })
        .collect()
}
