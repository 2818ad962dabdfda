//! Chung-Lu random graphs with power-law expected degrees.
//!
//! Vertex `i` (rank `i + 1`) has weight proportional to `(i + 1)^-gamma`
//! and edge `(i, j)` appears independently with probability
//! `min(1, c * (i+1)^-gamma * (j+1)^-gamma)`. The scale `c` is solved so the
//! expected edge count matches `n * avg_degree / 2`.

use rand::distributions::Open01;
use rand::seq::index::sample;
use rand::Rng;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::oracle::EdgeScores;
use crate::rng::seeded;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClvConfig {
    pub n: usize,
    pub exponent: f64,
    pub avg_degree: f64,
}

impl ClvConfig {
    pub const DEFAULT_EXPONENT: f64 = 2.0;
    pub const DEFAULT_AVG_DEGREE: f64 = 12.0;

    pub fn new(n: usize) -> Self {
        ClvConfig { n, exponent: Self::DEFAULT_EXPONENT, avg_degree: Self::DEFAULT_AVG_DEGREE }
    }
}

#[derive(Clone, Debug)]
pub struct ClvGraph {
    pub graph: Graph,
    pub exponent: f64,
    /// Solved scale `c`.
    pub scale: f64,
}

impl ClvGraph {
    pub fn edge_probability(&self, a: VertexId, b: VertexId) -> f64 {
        if a == b {
            return 0.0;
        }
        pair_probability(self.scale, self.exponent, a as usize, b as usize)
    }

    /// Expected `N_e` given that `e` is present: `sum_k p(a, k) p(b, k)`.
    pub fn expected_triangles(&self, e: Edge) -> f64 {
        let (a, b) = e.endpoints();
        (0..self.graph.n() as VertexId)
            .filter(|&k| k != a && k != b)
            .map(|k| self.edge_probability(a, k) * self.edge_probability(b, k))
            .sum()
    }

    /// Expected-value predictor over the sampled edges.
    pub fn ev_predictor(&self) -> EdgeScores {
        self.graph.edges().iter().map(|&e| (e, self.expected_triangles(e))).collect()
    }
}

fn pair_probability(c: f64, gamma: f64, i: usize, j: usize) -> f64 {
    (c * ((i + 1) as f64 * (j + 1) as f64).powf(-gamma)).min(1.0)
}

/// Expected number of edges for scale `c`, in `O(n log n)`.
fn expected_edges(c: f64, gamma: f64, n: usize, suffix: &[f64]) -> f64 {
    let mut total = 0.0;
    for i in 0..n {
        let wi = ((i + 1) as f64).powf(-gamma);
        // ranks j with c * wi * j^-gamma >= 1 are saturated
        let sat_rank = (c * wi).powf(1.0 / gamma).floor();
        let first_free = (sat_rank as usize).clamp(i + 1, n);
        total += (first_free - (i + 1)) as f64;
        total += c * wi * suffix[first_free];
    }
    total
}

pub fn generate_clv(config: ClvConfig, seed: u64) -> Result<ClvGraph> {
    let ClvConfig { n, exponent: gamma, avg_degree } = config;
    if n < 2 {
        return Err(Error::param(format!("need n >= 2, got {n}")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) || !(avg_degree > 0.0) {
        return Err(Error::param("exponent and average degree must be positive"));
    }
    let max_edges = (n * (n - 1) / 2) as f64;
    let target = (n as f64 * avg_degree / 2.0).min(max_edges);

    // suffix[r] = sum over ranks r+1..=n of rank^-gamma (index r is zero-based)
    let mut suffix = vec![0.0; n + 1];
    for r in (0..n).rev() {
        suffix[r] = suffix[r + 1] + ((r + 1) as f64).powf(-gamma);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while expected_edges(hi, gamma, n, &suffix) < target && hi < 1e300 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if expected_edges(mid, gamma, n, &suffix) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = hi;

    let mut rng = seeded(seed);
    let mut pairs = Vec::new();
    for u in 0..n - 1 {
        let mut v = u + 1;
        let mut p = pair_probability(c, gamma, u, v);
        while v < n && p > 0.0 {
            if p < 1.0 {
                let r: f64 = rng.sample(Open01);
                v += (r.ln() / (1.0 - p).ln()).floor() as usize;
            }
            if v < n {
                let q = pair_probability(c, gamma, u, v);
                if rng.gen::<f64>() < q / p {
                    pairs.push((u as VertexId, v as VertexId));
                }
                p = q;
                v += 1;
            }
        }
    }
    Ok(ClvGraph { graph: Graph::from_pairs(n, pairs)?, exponent: gamma, scale: c })
}

/// Power-law sample with the default average degree.
pub fn generate_clv_powerlaw(n: usize, exponent: f64, seed: u64) -> Result<ClvGraph> {
    generate_clv(ClvConfig { exponent, ..ClvConfig::new(n) }, seed)
}

/// Replaces `ceil(fraction * m)` random edges by random non-edges.
pub fn perturb_edges<R: Rng + ?Sized>(g: &Graph, fraction: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::param(format!("fraction must be in [0, 1], got {fraction}")));
    }
    let n = g.n();
    let k = ((fraction * g.m() as f64).ceil() as usize).min(g.m());
    let max_edges = n * n.saturating_sub(1) / 2;
    if k == 0 || n < 2 {
        return Ok(g.clone());
    }
    let dropped: FxHashSet<usize> = sample(rng, g.m(), k).into_iter().collect();
    let mut present: FxHashSet<Edge> = g.edges().iter().copied().collect();
    let mut kept: Vec<Edge> =
        g.edges().iter().enumerate().filter(|(i, _)| !dropped.contains(i)).map(|(_, &e)| e).collect();
    let want = k.min(max_edges - kept.len());
    let mut added = 0;
    while added < want {
        let a = rng.gen_range(0..n) as VertexId;
        let b = rng.gen_range(0..n) as VertexId;
        if a == b {
            continue;
        }
        let e = Edge::of(a, b);
        if present.insert(e) {
            kept.push(e);
            added += 1;
        }
    }
    Graph::from_edges(n, &kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_heavy_tailed() {
        let a = generate_clv_powerlaw(1000, 2.0, 7).unwrap();
        let b = generate_clv_powerlaw(1000, 2.0, 7).unwrap();
        assert_eq!(a.graph.edges(), b.graph.edges());
        let mut deg: Vec<usize> = (0..1000).map(|v| a.graph.degree(v)).collect();
        deg.sort_unstable();
        let median = deg[500].max(1);
        assert!(a.graph.max_degree() > 10 * median, "max {} median {}", a.graph.max_degree(), median);
    }

    #[test]
    fn edge_count_near_target() {
        let g = generate_clv(ClvConfig { n: 2000, exponent: 2.0, avg_degree: 10.0 }, 3).unwrap();
        let m = g.graph.m() as f64;
        assert!((m - 10_000.0).abs() < 500.0, "m = {m}");
    }

    #[test]
    fn expected_count_matches_brute_force() {
        let n = 30;
        let mut suffix = vec![0.0; n + 1];
        for r in (0..n).rev() {
            suffix[r] = suffix[r + 1] + ((r + 1) as f64).powf(-2.0);
        }
        for c in [0.5, 10.0, 300.0, 5000.0] {
            let brute: f64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| pair_probability(c, 2.0, i, j))).sum();
            assert!((expected_edges(c, 2.0, n, &suffix) - brute).abs() < 1e-9 * brute.max(1.0));
        }
    }

    #[test]
    fn perturbation_keeps_edge_count() {
        let g = generate_clv_powerlaw(300, 2.0, 1).unwrap().graph;
        let h = perturb_edges(&g, 0.05, &mut seeded(2)).unwrap();
        assert_eq!(g.m(), h.m());
        let common = g.edges().iter().filter(|e| h.has_edge(e.lo(), e.hi())).count();
        let k = (0.05 * g.m() as f64).ceil() as usize;
        assert!(common >= g.m() - k);
        assert!(common < g.m());
    }
}
