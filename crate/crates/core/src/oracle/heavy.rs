use rand::Rng;
use rustc_hash::FxHashMap;

use super::{EdgeScores, HeavyOracle, ThresholdRule, Verdict};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::rng::{coin, StreamRng};

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("threshold must be positive, got {rho}")))
    }
}

/// Exact threshold on a score table.
#[derive(Clone, Debug)]
pub struct PerfectOracle<'a> {
    scores: &'a EdgeScores,
    threshold: f64,
    rule: ThresholdRule,
}

impl<'a> PerfectOracle<'a> {
    pub fn new(scores: &'a EdgeScores, threshold: f64, rule: ThresholdRule) -> Result<Self> {
        check_rho(threshold)?;
        Ok(PerfectOracle { scores, threshold, rule })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

impl HeavyOracle for PerfectOracle<'_> {
    fn query(&mut self, e: Edge) -> Verdict {
        self.rule.verdict(self.scores.get(e), self.threshold)
    }
}

/// Answers the same label for every edge.
#[derive(Clone, Copy, Debug)]
pub struct ConstantOracle(pub Verdict);

impl HeavyOracle for ConstantOracle {
    fn query(&mut self, _: Edge) -> Verdict {
        self.0
    }
}

/// `N^2 / (N^2 + rho^2)`. Lies in `[1 - rho/N, N/rho]` for every `N >= 0`.
pub fn k_noisy_probability(score: f64, rho: f64) -> f64 {
    if score <= 0.0 {
        return 0.0;
    }
    let s2 = score * score;
    s2 / (s2 + rho * rho)
}

/// Heavy with probability [`k_noisy_probability`], one draw per edge per pass.
#[derive(Clone, Debug)]
pub struct KNoisyOracle<'a> {
    scores: &'a EdgeScores,
    rho: f64,
    rng: StreamRng,
    cache: FxHashMap<Edge, Verdict>,
}

impl<'a> KNoisyOracle<'a> {
    pub fn new(scores: &'a EdgeScores, rho: f64, rng: StreamRng) -> Result<Self> {
        check_rho(rho)?;
        Ok(KNoisyOracle { scores, rho, rng, cache: FxHashMap::default() })
    }
}

impl HeavyOracle for KNoisyOracle<'_> {
    fn query(&mut self, e: Edge) -> Verdict {
        let (scores, rho, rng) = (self.scores, self.rho, &mut self.rng);
        *self.cache.entry(e).or_insert_with(|| {
            if coin(rng, k_noisy_probability(scores.get(e), rho)) {
                Verdict::Heavy
            } else {
                Verdict::Light
            }
        })
    }

    fn begin_pass(&mut self) {
        self.cache.clear();
    }
}

/// Exact threshold verdict, flipped independently with probability `delta`.
#[derive(Clone, Debug)]
pub struct FlipNoiseOracle<'a> {
    inner: PerfectOracle<'a>,
    delta: f64,
    rng: StreamRng,
    cache: FxHashMap<Edge, Verdict>,
}

impl<'a> FlipNoiseOracle<'a> {
    pub fn new(
        scores: &'a EdgeScores,
        threshold: f64,
        rule: ThresholdRule,
        delta: f64,
        rng: StreamRng,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::param(format!("flip probability must be in [0, 1], got {delta}")));
        }
        Ok(FlipNoiseOracle {
            inner: PerfectOracle::new(scores, threshold, rule)?,
            delta,
            rng,
            cache: FxHashMap::default(),
        })
    }
}

impl HeavyOracle for FlipNoiseOracle<'_> {
    fn query(&mut self, e: Edge) -> Verdict {
        if let Some(&v) = self.cache.get(&e) {
            return v;
        }
        let truth = self.inner.query(e);
        let v = if self.delta > 0.0 && coin(&mut self.rng, self.delta) { truth.flipped() } else { truth };
        self.cache.insert(e, v);
        v
    }

    fn begin_pass(&mut self) {
        self.cache.clear();
    }
}

/// Node-sampling oracle built in a first pass: every vertex is kept with
/// probability `p` together with its incident edges, and `uv` is heavy when
/// at least `p * rho` sampled vertices are adjacent to both endpoints.
#[derive(Clone, Debug)]
pub struct FirstPassOracle {
    sampled_nbrs: Vec<Vec<VertexId>>,
    rate: f64,
    threshold: f64,
    stored_edges: usize,
}

impl FirstPassOracle {
    pub const C: f64 = 4.0;

    /// `p = min(1, C * ln(m) / (eps^2 * rho))`.
    pub fn rate(m: usize, rho: f64, epsilon: f64) -> f64 {
        (Self::C * (m.max(2) as f64).ln() / (epsilon * epsilon * rho)).min(1.0)
    }

    pub fn build<R: Rng + ?Sized>(g: &Graph, rho: f64, epsilon: f64, rng: &mut R) -> Result<Self> {
        check_rho(rho)?;
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::param(format!("epsilon must be in (0, 1], got {epsilon}")));
        }
        Self::with_rate(g, rho, Self::rate(g.m(), rho, epsilon), rng)
    }

    pub fn with_rate<R: Rng + ?Sized>(g: &Graph, rho: f64, rate: f64, rng: &mut R) -> Result<Self> {
        check_rho(rho)?;
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::param(format!("sampling rate must be in (0, 1], got {rate}")));
        }
        let sampled: Vec<bool> = (0..g.n()).map(|_| coin(rng, rate)).collect();
        let mut sampled_nbrs = vec![Vec::new(); g.n()];
        let mut stored_edges = 0;
        for e in g.edges() {
            let (a, b) = e.endpoints();
            let (sa, sb) = (sampled[a as usize], sampled[b as usize]);
            if sa {
                sampled_nbrs[b as usize].push(a);
            }
            if sb {
                sampled_nbrs[a as usize].push(b);
            }
            if sa || sb {
                stored_edges += 1;
            }
        }
        Ok(FirstPassOracle { sampled_nbrs, rate, threshold: rate * rho, stored_edges })
    }

    /// Number of sampled vertices adjacent to both endpoints.
    pub fn estimate(&self, e: Edge) -> usize {
        let (a, b) = e.endpoints();
        match (self.sampled_nbrs.get(a as usize), self.sampled_nbrs.get(b as usize)) {
            (Some(x), Some(y)) => crate::graph::intersection_size(x, y),
            _ => 0,
        }
    }

    pub fn sampling_rate(&self) -> f64 {
        self.rate
    }
}

impl HeavyOracle for FirstPassOracle {
    fn query(&mut self, e: Edge) -> Verdict {
        ThresholdRule::AtLeast.verdict(self.estimate(e) as f64, self.threshold)
    }

    fn space(&self) -> usize {
        self.stored_edges
    }
}
