//! Heavy-edge and value oracles.
//!
//! A [`HeavyOracle`] labels an edge heavy or light; a [`ValueOracle`] returns a
//! numeric heaviness estimate. Ground truth and learned predictors are both
//! carried as an [`EdgeScores`] table, which is immutable and can be shared by
//! any number of concurrent passes. Randomized oracles own their generator and
//! cache one answer per edge until [`HeavyOracle::begin_pass`] is called.

mod heavy;
mod predictor;
mod spec;
mod value;

use rustc_hash::FxHashMap;

use crate::graph::{Edge, Graph};

pub use heavy::{k_noisy_probability, ConstantOracle, FirstPassOracle, FlipNoiseOracle, KNoisyOracle, PerfectOracle};
pub use predictor::{prefix_predictor, snapshot_predictor};
pub use spec::OracleSpec;
pub use value::{ExpTailOracle, LinearTailOracle, EXP_TAIL_K, LINEAR_TAIL_K};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Heavy,
    Light,
}

impl Verdict {
    pub fn is_heavy(self) -> bool {
        self == Verdict::Heavy
    }

    pub fn flipped(self) -> Verdict {
        match self {
            Verdict::Heavy => Verdict::Light,
            Verdict::Light => Verdict::Heavy,
        }
    }
}

/// How a score is compared with a threshold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThresholdRule {
    /// Heavy iff `score > threshold`.
    #[default]
    Above,
    /// Heavy iff `score >= threshold`.
    AtLeast,
}

impl ThresholdRule {
    pub fn verdict(self, score: f64, threshold: f64) -> Verdict {
        let heavy = match self {
            ThresholdRule::Above => score > threshold,
            ThresholdRule::AtLeast => score >= threshold,
        };
        if heavy {
            Verdict::Heavy
        } else {
            Verdict::Light
        }
    }
}

pub trait HeavyOracle {
    fn query(&mut self, e: Edge) -> Verdict;

    /// Forgets cached answers; the next pass sees fresh randomness.
    fn begin_pass(&mut self) {}

    /// Edges held by the oracle itself.
    fn space(&self) -> usize {
        0
    }
}

pub trait ValueOracle {
    fn predict(&mut self, e: Edge) -> f64;

    fn begin_pass(&mut self) {}
}

impl<O: HeavyOracle + ?Sized> HeavyOracle for &mut O {
    fn query(&mut self, e: Edge) -> Verdict {
        (**self).query(e)
    }
    fn begin_pass(&mut self) {
        (**self).begin_pass()
    }
    fn space(&self) -> usize {
        (**self).space()
    }
}

impl<O: HeavyOracle + ?Sized> HeavyOracle for Box<O> {
    fn query(&mut self, e: Edge) -> Verdict {
        (**self).query(e)
    }
    fn begin_pass(&mut self) {
        (**self).begin_pass()
    }
    fn space(&self) -> usize {
        (**self).space()
    }
}

impl<O: ValueOracle + ?Sized> ValueOracle for &mut O {
    fn predict(&mut self, e: Edge) -> f64 {
        (**self).predict(e)
    }
    fn begin_pass(&mut self) {
        (**self).begin_pass()
    }
}

impl<O: ValueOracle + ?Sized> ValueOracle for Box<O> {
    fn predict(&mut self, e: Edge) -> f64 {
        (**self).predict(e)
    }
    fn begin_pass(&mut self) {
        (**self).begin_pass()
    }
}

/// Per-edge heaviness table. Edges not in the table score 0.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EdgeScores {
    map: FxHashMap<Edge, f64>,
}

impl EdgeScores {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table from values aligned with `g.edges()`.
    pub fn aligned<T: Copy + Into<f64>>(g: &Graph, values: &[T]) -> Self {
        assert_eq!(g.m(), values.len(), "one value per edge");
        g.edges().iter().zip(values).map(|(&e, &v)| (e, v.into())).collect()
    }

    /// Aligned table from integer counts.
    pub fn from_counts(g: &Graph, counts: &[u64]) -> Self {
        assert_eq!(g.m(), counts.len(), "one value per edge");
        g.edges().iter().zip(counts).map(|(&e, &c)| (e, c as f64)).collect()
    }

    pub fn get(&self, e: Edge) -> f64 {
        self.map.get(&e).copied().unwrap_or(0.0)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.map.contains_key(&e)
    }

    pub fn insert(&mut self, e: Edge, score: f64) {
        self.map.insert(e, score);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.map.iter().map(|(&e, &s)| (e, s))
    }

    pub fn max_score(&self) -> f64 {
        self.map.values().copied().fold(0.0, f64::max)
    }

    /// The `count` highest-scoring entries, ties broken by canonical edge order.
    pub fn top(&self, count: usize) -> EdgeScores {
        let mut entries: Vec<(Edge, f64)> = self.iter().collect();
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        entries.truncate(count);
        entries.into_iter().collect()
    }
}

impl FromIterator<(Edge, f64)> for EdgeScores {
    fn from_iter<I: IntoIterator<Item = (Edge, f64)>>(iter: I) -> Self {
        EdgeScores { map: iter.into_iter().collect() }
    }
}

/// A score table used directly as a noiseless value predictor.
impl ValueOracle for &EdgeScores {
    fn predict(&mut self, e: Edge) -> f64 {
        self.get(e)
    }
}
