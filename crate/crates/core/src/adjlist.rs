//! Triangle counting in the adjacency-list model with light, medium and heavy
//! strata.
//!
//! Edges are classified by `R_uv`, the number of triangles whose third vertex
//! arrives strictly between `u` and `v`. A light edge is sampled at rate
//! `p1` when first seen and its counter, advanced by every block adjacent to
//! both endpoints, is harvested at the second sighting. Medium edges do the
//! same at rate `p2`. Heavy edges are recognized at their second sighting
//! from an auxiliary sample of first-sighted edges, which also estimates
//! their `R_uv` directly.

use log::debug;
use rand::Rng;
use rustc_hash::FxHashMap;

use crate::adjtrack::BlockTracker;
use crate::counters::TrackedEdges;
use crate::error::{Error, Result};
use crate::graph::{AdjBlock, Edge, VertexId};
use crate::oracle::{HeavyOracle, Verdict};
use crate::rng::coin;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    HighT,
    LowT,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdjConstants {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Default for AdjConstants {
    fn default() -> Self {
        AdjConstants { alpha: 4.0, beta: 4.0, gamma: 4.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdjParams {
    pub regime: Regime,
    pub rho: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub epsilon: f64,
    pub t_est: f64,
}

impl AdjParams {
    pub fn new(m: usize, n: usize, epsilon: f64, t_est: f64) -> Result<Self> {
        Self::with_constants(m, n, epsilon, t_est, AdjConstants::default())
    }

    pub fn with_constants(m: usize, n: usize, epsilon: f64, t_est: f64, c: AdjConstants) -> Result<Self> {
        if m < 1 || n < 2 {
            return Err(Error::param(format!("need m >= 1 and n >= 2, got m={m}, n={n}")));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::param(format!("epsilon must be in (0, 1], got {epsilon}")));
        }
        if !(t_est >= 1.0 && t_est.is_finite()) {
            return Err(Error::param(format!("triangle estimate must be >= 1, got {t_est}")));
        }
        if [c.alpha, c.beta, c.gamma].iter().any(|&k| !(k > 0.0)) {
            return Err(Error::param("constants must be positive"));
        }
        let (m, n) = (m as f64, n as f64);
        let e2 = epsilon * epsilon;
        let params = if t_est >= (m / epsilon).sqrt() {
            let rho = (m * t_est).cbrt();
            AdjParams {
                regime: Regime::HighT,
                rho,
                p1: (c.alpha / (e2 * rho)).min(1.0),
                p2: (c.beta * rho / (e2 * t_est)).min(1.0),
                p3: (c.gamma * n.ln() / (e2 * rho)).min(1.0),
                epsilon,
                t_est,
            }
        } else {
            let rho = m.sqrt() / epsilon;
            AdjParams {
                regime: Regime::LowT,
                rho,
                p1: 0.0,
                p2: 1.0,
                p3: (c.gamma / (e2 * rho)).min(1.0),
                epsilon,
                t_est,
            }
        };
        Ok(params)
    }

    /// All three rates set to 1.
    pub fn saturated(mut self) -> Self {
        self.p1 = 1.0;
        self.p2 = 1.0;
        self.p3 = 1.0;
        self
    }

    /// Rates multiplied by `factor` and clamped to 1.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.p1 = (self.p1 * factor).min(1.0);
        self.p2 = (self.p2 * factor).min(1.0);
        self.p3 = (self.p3 * factor).min(1.0);
        self
    }

    /// Threshold the oracle should apply to `R_uv` (heavy iff `R >= T/rho`).
    pub fn oracle_threshold(&self) -> f64 {
        self.t_est / self.rho
    }

    fn validate(&self) -> Result<()> {
        let ok = |p: f64| (0.0..=1.0).contains(&p);
        if !(ok(self.p1) && ok(self.p2) && ok(self.p3)) || self.p2 == 0.0 || self.p3 == 0.0 {
            return Err(Error::param(format!(
                "rates must satisfy p1 in [0, 1] and p2, p3 in (0, 1]; got {}, {}, {}",
                self.p1, self.p2, self.p3
            )));
        }
        if !(self.rho > 0.0) {
            return Err(Error::param("rho must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AdjOutcome {
    pub estimate: f64,
    pub a_l: u64,
    pub a_m: u64,
    pub a_h: u64,
    /// Peak of `|S_L| + |S_M| + |S_aux|`.
    pub peak_space: usize,
    pub peak_medium: usize,
    /// Edges routed to the heavy stratum with their detected count.
    pub heavy: Vec<(Edge, u64)>,
}

/// Single-pass state. Feed blocks with [`AdjState::process`], then call
/// [`AdjState::finish`].
#[derive(Debug)]
pub struct AdjState {
    params: AdjParams,
    tracker: BlockTracker,
    sampled: TrackedEdges<bool>,
    aux: FxHashMap<Edge, bool>,
    aux_by_anchor: FxHashMap<VertexId, Vec<VertexId>>,
    mediums: usize,
    out: AdjOutcome,
}

impl AdjState {
    pub fn new(params: AdjParams) -> Result<Self> {
        params.validate()?;
        Ok(AdjState {
            params,
            tracker: BlockTracker::new(),
            sampled: TrackedEdges::default(),
            aux: FxHashMap::default(),
            aux_by_anchor: FxHashMap::default(),
            mediums: 0,
            out: AdjOutcome::default(),
        })
    }

    pub fn space(&self) -> usize {
        self.sampled.len() + self.aux.len()
    }

    /// `#` for the edge `uv`, where `v` is the current block: flagged
    /// auxiliary edges `uz` first sampled at `u` whose `z` is adjacent to `v`.
    pub fn heavy_detect_count(&self, u: VertexId) -> u64 {
        let Some(zs) = self.aux_by_anchor.get(&u) else { return 0 };
        zs.iter()
            .filter(|&&z| self.tracker.in_block(z) && self.aux.get(&Edge::of(u, z)) == Some(&true))
            .count() as u64
    }

    pub fn process<O, R>(&mut self, block: AdjBlock<'_>, oracle: &mut O, rng: &mut R) -> Result<()>
    where
        O: HeavyOracle + ?Sized,
        R: Rng + ?Sized,
    {
        self.tracker.begin(&block)?;
        let v = block.vertex;

        self.sampled.bump(&block, &self.tracker);

        // auxiliary edges closing at v are now seen twice
        for &u in block.neighbors {
            if self.tracker.arrived_before(u) {
                if let Some(flag) = self.aux.get_mut(&Edge::of(u, v)) {
                    *flag = true;
                }
            }
        }

        let p = self.params;
        for &u in block.neighbors {
            let e = Edge::of(u, v);
            let second = self.tracker.arrived_before(u);
            if !second && coin(rng, p.p3) {
                self.aux.insert(e, false);
                self.aux_by_anchor.entry(v).or_default().push(u);
            }
            match oracle.query(e) {
                Verdict::Light => {
                    if second {
                        if let Some(c) = self.take(e) {
                            self.out.a_l += c;
                        }
                    } else if p.p1 > 0.0 && coin(rng, p.p1) {
                        self.store(v, u, false);
                    }
                }
                Verdict::Heavy => {
                    if second {
                        let hash = self.heavy_detect_count(u);
                        if hash as f64 >= p.p3 * p.rho {
                            self.out.a_h += hash;
                            self.out.heavy.push((e, hash));
                            self.take(e);
                        } else if let Some(c) = self.take(e) {
                            self.out.a_m += c;
                        }
                    } else if coin(rng, p.p2) {
                        self.store(v, u, true);
                    }
                }
            }
        }
        self.out.peak_space = self.out.peak_space.max(self.space());
        self.out.peak_medium = self.out.peak_medium.max(self.mediums);
        Ok(())
    }

    fn store(&mut self, anchor: VertexId, other: VertexId, medium: bool) {
        self.sampled.insert(anchor, other, medium);
        if medium {
            self.mediums += 1;
        }
    }

    /// Removes a sampled edge at its second sighting and returns its counter.
    fn take(&mut self, e: Edge) -> Option<u64> {
        let s = self.sampled.take(e)?;
        if s.payload {
            self.mediums -= 1;
        }
        Some(s.count)
    }

    pub fn finish(mut self) -> Result<AdjOutcome> {
        self.tracker.finish()?;
        let p = self.params;
        let term = |acc: u64, rate: f64, name: &str| -> Result<f64> {
            match (acc, rate) {
                (0, _) => Ok(0.0),
                (_, r) if r > 0.0 => Ok(acc as f64 / r),
                _ => Err(Error::InvariantViolation(format!("{name} is nonzero with a zero rate"))),
            }
        };
        self.out.estimate = term(self.out.a_l, p.p1, "A_l")?
            + term(self.out.a_m, p.p2, "A_m")?
            + term(self.out.a_h, p.p3, "A_h")?;
        debug!(
            "adjlist: A_l={} A_m={} A_h={} estimate={:.3} peak={}",
            self.out.a_l, self.out.a_m, self.out.a_h, self.out.estimate, self.out.peak_space
        );
        Ok(self.out)
    }
}

/// One pass of the estimator over an adjacency-list stream.
pub fn run_adjlist<'a, I, O, R>(stream: I, oracle: &mut O, params: &AdjParams, rng: &mut R) -> Result<AdjOutcome>
where
    I: IntoIterator<Item = AdjBlock<'a>>,
    O: HeavyOracle + ?Sized,
    R: Rng + ?Sized,
{
    oracle.begin_pass();
    let mut state = AdjState::new(*params)?;
    for block in stream {
        state.process(block, oracle, rng)?;
    }
    state.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle, petersen};
    use crate::graph::{adjacency_stream, exact_triangle_count, r_counts, Graph, VertexOrder};
    use crate::oracle::{ConstantOracle, EdgeScores, PerfectOracle, ThresholdRule};
    use crate::rng::seeded;

    #[test]
    fn regimes() {
        let hi = AdjParams::new(100, 50, 1.0, 100.0).unwrap();
        assert_eq!(hi.regime, Regime::HighT);
        assert!((hi.rho - 21.544).abs() < 1e-3);

        let lo = AdjParams::new(100, 50, 0.5, 3.0).unwrap();
        assert_eq!(lo.regime, Regime::LowT);
        assert!((lo.rho - 20.0).abs() < 1e-12);
        assert_eq!((lo.p1, lo.p2), (0.0, 1.0));

        let big = AdjConstants { alpha: 1e9, beta: 1e9, gamma: 1e9 };
        let sat = AdjParams::with_constants(100, 50, 1.0, 100.0, big).unwrap();
        assert_eq!((sat.p1, sat.p2, sat.p3), (1.0, 1.0, 1.0));

        assert!(AdjParams::new(0, 5, 0.5, 3.0).is_err());
        assert!(AdjParams::new(10, 5, 0.0, 3.0).is_err());
        assert!(AdjParams::new(10, 5, 0.5, 0.5).is_err());
    }

    fn perfect_run(g: &Graph, order: &VertexOrder, seed: u64) -> AdjOutcome {
        let scores = EdgeScores::from_counts(g, &r_counts(g, order));
        let t = exact_triangle_count(g).max(1) as f64;
        let params = AdjParams::new(g.m().max(1), g.n().max(2), 0.5, t).unwrap().saturated();
        let mut oracle = PerfectOracle::new(&scores, params.oracle_threshold(), ThresholdRule::AtLeast).unwrap();
        run_adjlist(adjacency_stream(g, order), &mut oracle, &params, &mut seeded(seed)).unwrap()
    }

    #[test]
    fn exact_at_unit_rates() {
        for g in [complete(3), complete(4), complete(6), cycle(5), petersen()] {
            for seed in 0..5 {
                let order = VertexOrder::random(g.n(), &mut seeded(seed));
                let out = perfect_run(&g, &order, seed);
                assert_eq!(out.estimate, exact_triangle_count(&g) as f64);
            }
        }
        assert_eq!(perfect_run(&Graph::empty(3), &VertexOrder::identity(3), 0).estimate, 0.0);
    }

    #[test]
    fn triangle_all_light() {
        let g = complete(3);
        let order = VertexOrder::identity(3);
        let mut params = AdjParams::new(3, 3, 0.5, 1.0).unwrap();
        assert_eq!(params.regime, Regime::LowT);
        params.p1 = 1.0;
        params.p3 = 1.0;
        let out = run_adjlist(adjacency_stream(&g, &order), &mut ConstantOracle(Verdict::Light), &params, &mut seeded(0))
            .unwrap();
        assert_eq!(out.estimate, 1.0);
        assert_eq!(out.a_l, 1);
    }

    #[test]
    fn heavy_count_matches_r() {
        // edge 0-6 with five middle vertices 1..=5
        let pairs = (1..6).flat_map(|z| [(0, z), (z, 6)]).chain([(0, 6)]);
        let g = Graph::from_pairs(7, pairs).unwrap();
        let order = VertexOrder::identity(7);
        let mut params = AdjParams::new(g.m(), g.n(), 1.0, 5.0).unwrap().saturated();
        params.rho = 5.0;
        let out = run_adjlist(adjacency_stream(&g, &order), &mut ConstantOracle(Verdict::Heavy), &params, &mut seeded(0))
            .unwrap();
        assert_eq!(out.heavy, vec![(Edge::of(0, 6), 5)]);
        assert_eq!(out.estimate, 5.0);
    }

    #[test]
    fn detect_count_before_any_sample() {
        let state = AdjState::new(AdjParams::new(10, 5, 0.5, 2.0).unwrap()).unwrap();
        assert_eq!(state.heavy_detect_count(0), 0);
    }

    #[test]
    fn malformed_stream_rejected() {
        let params = AdjParams::new(3, 3, 0.5, 1.0).unwrap().saturated();
        let blocks = [AdjBlock { vertex: 0, neighbors: &[1] }, AdjBlock { vertex: 1, neighbors: &[] }];
        let r = run_adjlist(blocks, &mut ConstantOracle(Verdict::Light), &params, &mut seeded(0));
        assert!(matches!(r, Err(Error::MalformedStream(_))));
    }

    #[test]
    fn zero_rate_with_count_is_an_error() {
        let g = complete(3);
        let order = VertexOrder::identity(3);
        let mut state = AdjState::new(AdjParams::new(3, 3, 0.5, 1.0).unwrap().saturated()).unwrap();
        let mut rng = seeded(0);
        for b in adjacency_stream(&g, &order) {
            state.process(b, &mut ConstantOracle(Verdict::Light), &mut rng).unwrap();
        }
        state.params.p1 = 0.0;
        assert!(matches!(state.finish(), Err(Error::InvariantViolation(_))));
    }
}
