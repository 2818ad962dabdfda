//! Multi-layer subsampling by predicted magnitude.
//!
//! First-sighted edges are routed to the level whose interval contains
//! `p(e) + beta` (`I_0 = [0, 2 beta)`, `I_i = [2^i beta, 2^(i+1) beta)`) and
//! sampled into each of `repeats` independent sets at the level's rate. The
//! estimate is the sum over levels of the median harvested count divided by
//! the level rate.

use std::collections::BTreeMap;

use log::debug;
use rand::Rng;

use crate::adjtrack::BlockTracker;
use crate::counters::TrackedEdges;
use crate::error::{Error, Result};
use crate::graph::{AdjBlock, Edge};
use crate::oracle::ValueOracle;
use crate::rng::{coin, median};

const MAX_LEVEL: u32 = 1100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayerParams {
    pub beta: f64,
    pub epsilon: f64,
    pub t_est: f64,
    pub n: usize,
    pub c: f64,
    pub repeats: usize,
    /// Multiplies every level rate before clamping.
    pub rate_scale: f64,
    /// Forces every level rate to 1.
    pub saturate: bool,
}

impl LayerParams {
    pub const DEFAULT_C: f64 = 4.0;

    pub fn new(n: usize, epsilon: f64, beta: f64, t_est: f64) -> Result<Self> {
        let p = LayerParams {
            beta,
            epsilon,
            t_est,
            n,
            c: Self::DEFAULT_C,
            repeats: Self::default_repeats(n),
            rate_scale: 1.0,
            saturate: false,
        };
        p.validate()?;
        Ok(p)
    }

    /// `max(3, ceil(log2 log2 n))`.
    pub fn default_repeats(n: usize) -> usize {
        let ll = (n.max(2) as f64).log2().log2();
        (ll.ceil().max(0.0) as usize).max(3)
    }

    pub fn with_repeats(mut self, repeats: usize) -> Self {
        self.repeats = repeats;
        self
    }

    pub fn saturated(mut self) -> Self {
        self.saturate = true;
        self
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.rate_scale *= factor;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::param(format!("beta must be positive, got {}", self.beta)));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::param(format!("epsilon must be in (0, 1], got {}", self.epsilon)));
        }
        if !(self.t_est >= 1.0) || self.n < 2 || self.repeats == 0 || !(self.c > 0.0) || !(self.rate_scale > 0.0) {
            return Err(Error::param("need T >= 1, n >= 2, repeats >= 1 and positive constants"));
        }
        Ok(())
    }

    /// Level whose interval contains `q`.
    pub fn level_of(&self, q: f64) -> u32 {
        if !(q >= 2.0 * self.beta) {
            return 0;
        }
        let mut i = ((q / self.beta).log2().floor() as u32).clamp(1, MAX_LEVEL);
        while i > 1 && self.bound(i) > q {
            i -= 1;
        }
        while i < MAX_LEVEL && self.bound(i + 1) <= q {
            i += 1;
        }
        i
    }

    fn bound(&self, i: u32) -> f64 {
        2f64.powi(i as i32) * self.beta
    }

    /// `c eps^-2 beta / T` at level 0, `c eps^-2 2^i beta ln(n)^2 / T` above.
    pub fn rate(&self, level: u32) -> f64 {
        if self.saturate {
            return 1.0;
        }
        let base = self.c * self.bound(level) / (self.epsilon * self.epsilon * self.t_est);
        let raw = if level == 0 { base } else { base * (self.n as f64).ln().powi(2) };
        (raw * self.rate_scale).min(1.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayerSummary {
    pub level: u32,
    pub rate: f64,
    pub routed: usize,
    pub median: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MultilayerOutcome {
    pub estimate: f64,
    /// Peak number of (edge, set) memberships.
    pub peak_space: usize,
    pub levels: Vec<LayerSummary>,
}

struct Level {
    rate: f64,
    routed: usize,
    sums: Vec<u64>,
}

pub fn run_multilayer<'a, I, V, R>(
    stream: I,
    voracle: &mut V,
    params: &LayerParams,
    rng: &mut R,
) -> Result<MultilayerOutcome>
where
    I: IntoIterator<Item = AdjBlock<'a>>,
    V: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    params.validate()?;
    voracle.begin_pass();
    let mut tracker = BlockTracker::new();
    let mut tracked: TrackedEdges<(u32, Vec<u32>)> = TrackedEdges::default();
    let mut levels: BTreeMap<u32, Level> = BTreeMap::new();
    let (mut space, mut peak) = (0usize, 0usize);

    for block in stream {
        tracker.begin(&block)?;
        tracked.bump(&block, &tracker);
        let y = block.vertex;
        for &x in block.neighbors {
            let e = Edge::of(x, y);
            if tracker.arrived_before(x) {
                if let Some(t) = tracked.take(e) {
                    let (level, sets) = t.payload;
                    let sums = &mut levels.get_mut(&level).expect("level exists").sums;
                    for &j in &sets {
                        sums[j as usize] += t.count;
                    }
                    space -= sets.len();
                }
                continue;
            }
            let q = voracle.predict(e).max(0.0) + params.beta;
            let level = params.level_of(q);
            let lv = levels.entry(level).or_insert_with(|| Level {
                rate: params.rate(level),
                routed: 0,
                sums: vec![0; params.repeats],
            });
            lv.routed += 1;
            let sets: Vec<u32> = (0..params.repeats as u32).filter(|_| coin(rng, lv.rate)).collect();
            if !sets.is_empty() {
                space += sets.len();
                tracked.insert(y, x, (level, sets));
            }
        }
        peak = peak.max(space);
    }
    tracker.finish()?;

    let mut out = MultilayerOutcome { peak_space: peak, ..Default::default() };
    for (&level, lv) in &levels {
        let sums: Vec<f64> = lv.sums.iter().map(|&s| s as f64).collect();
        let med = median(&sums)?;
        out.estimate += med / lv.rate;
        out.levels.push(LayerSummary { level, rate: lv.rate, routed: lv.routed, median: med });
    }
    debug!("multilayer: levels={} estimate={:.3} peak={}", out.levels.len(), out.estimate, peak);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, petersen};
    use crate::graph::{adjacency_stream, exact_triangle_count, r_counts, Graph, VertexOrder};
    use crate::oracle::EdgeScores;
    use crate::rng::seeded;

    #[test]
    fn levels_partition_the_line() {
        let p = LayerParams::new(100, 0.5, 2.0, 10.0).unwrap();
        assert_eq!(p.level_of(0.0), 0);
        assert_eq!(p.level_of(3.999), 0);
        assert_eq!(p.level_of(4.0), 1);
        assert_eq!(p.level_of(7.999), 1);
        assert_eq!(p.level_of(8.0), 2);
        assert_eq!(p.level_of(44.0), 4);
        assert!(LayerParams::new(100, 0.5, 0.0, 10.0).is_err());
        assert_eq!(LayerParams::default_repeats(16), 3);
        assert_eq!(LayerParams::default_repeats(1 << 20), 5);
    }

    #[test]
    fn saturated_is_exact() {
        for g in [complete(4), complete(6), petersen(), Graph::empty(3)] {
            let order = VertexOrder::random(g.n(), &mut seeded(9));
            let truth = EdgeScores::from_counts(&g, &r_counts(&g, &order));
            let p = LayerParams::new(g.n(), 0.5, 1.0, 1.0).unwrap().saturated();
            let out = run_multilayer(adjacency_stream(&g, &order), &mut &truth, &p, &mut seeded(1)).unwrap();
            assert_eq!(out.estimate, exact_triangle_count(&g) as f64);
        }
    }
}
