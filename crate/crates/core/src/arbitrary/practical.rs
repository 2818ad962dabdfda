//! Fixed edge budget variant.
//!
//! `Z` slots are split into `ceil(0.3 Z)` heavy slots holding the top-scored
//! edges seen so far and a light pool sampled at `p = 0.7 Z / m`. The first
//! `Z` edges are all kept. Afterwards every overflow is resolved by
//! re-sampling stored light edges at `p`, early ones first, until one leaves.
//!
//! Each stored edge carries a weight, the inverse of the probability that it
//! survived its coin flips so far, and a closure contributes the product of
//! the weights of its two stored edges.

use std::collections::BTreeSet;

use log::{debug, warn};
use ordered_float::OrderedFloat;
use rand::Rng;
use rustc_hash::FxHashMap;

use super::store::EdgeStore;
use crate::error::{Error, Result};
use crate::graph::{ArbitraryEdge, Edge};
use crate::oracle::ValueOracle;
use crate::rng::coin;

type Ranked = (OrderedFloat<f64>, Edge);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PracticalParams {
    pub z: usize,
    pub heavy_slots: usize,
    pub p: f64,
    /// Record the stored-edge count after every stream step.
    pub record_trace: bool,
}

impl PracticalParams {
    pub const HEAVY_FRACTION: f64 = 0.3;

    pub fn new(z: usize, m: usize) -> Result<Self> {
        if z == 0 {
            return Err(Error::param("edge budget must be at least 1"));
        }
        let heavy_slots = (Self::HEAVY_FRACTION * z as f64).ceil() as usize;
        let p = if m == 0 { 1.0 } else { ((1.0 - Self::HEAVY_FRACTION) * z as f64 / m as f64).clamp(0.0, 1.0) };
        Ok(PracticalParams { z, heavy_slots: heavy_slots.min(z), p, record_trace: false })
    }

    /// Budget as a fraction of `m`, at least one edge.
    pub fn from_fraction(fraction: f64, m: usize) -> Result<Self> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::param(format!("space fraction must be in (0, 1], got {fraction}")));
        }
        Self::new(((fraction * m as f64).ceil() as usize).max(1), m)
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PracticalOutcome {
    pub estimate: f64,
    /// Closures found, unweighted.
    pub closures: u64,
    pub peak_space: usize,
    pub work: u64,
    /// Longest single overflow cascade.
    pub longest_cascade: usize,
    pub trace: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Heavy,
    EarlyLight,
    LateLight,
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    class: Class,
    score: f64,
    weight: f64,
}

#[derive(Default)]
struct Late {
    edges: Vec<Edge>,
    pos: FxHashMap<Edge, usize>,
}

impl Late {
    fn push(&mut self, e: Edge) {
        self.pos.insert(e, self.edges.len());
        self.edges.push(e);
    }

    fn remove(&mut self, e: Edge) {
        if let Some(i) = self.pos.remove(&e) {
            self.edges.swap_remove(i);
            if let Some(&moved) = self.edges.get(i) {
                self.pos.insert(moved, i);
            }
        }
    }

    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Edge> {
        if self.edges.is_empty() {
            None
        } else {
            Some(self.edges[rng.gen_range(0..self.edges.len())])
        }
    }
}

struct Pools {
    store: EdgeStore<Slot>,
    heavy: BTreeSet<Ranked>,
    early: BTreeSet<Ranked>,
    late: Late,
    p: f64,
}

impl Pools {
    fn add(&mut self, e: Edge, slot: Slot) {
        match slot.class {
            Class::Heavy => self.heavy.insert((OrderedFloat(slot.score), e)),
            Class::EarlyLight => self.early.insert((OrderedFloat(slot.score), e)),
            Class::LateLight => {
                self.late.push(e);
                true
            }
        };
        self.store.insert(e, slot);
    }

    fn drop_edge(&mut self, e: Edge) -> Slot {
        let slot = self.store.remove(e).expect("pooled edge is stored");
        match slot.class {
            Class::Heavy => {
                self.heavy.remove(&(OrderedFloat(slot.score), e));
            }
            Class::EarlyLight => {
                self.early.remove(&(OrderedFloat(slot.score), e));
            }
            Class::LateLight => self.late.remove(e),
        }
        slot
    }

    /// Keeps `e` as a late light edge with probability `p`, scaling its
    /// weight by `1/p`. Returns whether it stayed.
    fn resample<R: Rng + ?Sized>(&mut self, e: Edge, rng: &mut R) -> bool {
        let mut slot = self.drop_edge(e);
        if coin(rng, self.p) {
            slot.class = Class::LateLight;
            slot.weight /= self.p;
            self.add(e, slot);
            true
        } else {
            false
        }
    }

    /// Removes exactly one stored edge. Returns the number of re-samples.
    fn evict_one<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        let cap = self.store.len();
        let mut steps = 0;
        while let Some(&(_, e)) = self.early.first() {
            steps += 1;
            if !self.resample(e, rng) {
                return steps;
            }
        }
        while let Some(e) = self.late.pick(rng) {
            steps += 1;
            if steps > cap {
                warn!("practical: overflow cascade hit its bound, evicting {e:?} outright");
                self.drop_edge(e);
                return steps;
            }
            if !self.resample(e, rng) {
                return steps;
            }
        }
        let &(_, e) = self.heavy.first().expect("an overflowing store is non-empty");
        self.drop_edge(e);
        steps + 1
    }
}

pub fn run_arbitrary_practical<I, V, R>(
    stream: I,
    voracle: &mut V,
    params: &PracticalParams,
    rng: &mut R,
) -> Result<PracticalOutcome>
where
    I: IntoIterator<Item = ArbitraryEdge>,
    V: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    if params.z == 0 {
        return Err(Error::param("edge budget must be at least 1"));
    }
    voracle.begin_pass();
    let mut pools = Pools {
        store: EdgeStore::default(),
        heavy: BTreeSet::new(),
        early: BTreeSet::new(),
        late: Late::default(),
        p: params.p,
    };
    let mut out = PracticalOutcome::default();
    let mut estimate = 0.0;

    for (position, item) in stream.into_iter().enumerate() {
        let e = item.edge;
        let mut found = 0;
        out.work += pools.store.for_each_closure(e, |_, a, b| {
            estimate += a.weight * b.weight;
            found += 1;
        }) as u64;
        out.closures += found;

        let score = voracle.predict(e);
        let score = if score.is_nan() { 0.0 } else { score };
        let rank = (OrderedFloat(score), e);
        let beats_lightest = pools.heavy.first().is_some_and(|&lightest| rank > lightest);
        let early = position < params.z;

        if pools.heavy.len() < params.heavy_slots {
            pools.add(e, Slot { class: Class::Heavy, score, weight: 1.0 });
        } else if beats_lightest {
            let (_, demoted) = pools.heavy.pop_first().expect("heavy pool is non-empty");
            let mut slot = pools.store.remove(demoted).expect("heavy edge is stored");
            pools.add(e, Slot { class: Class::Heavy, score, weight: 1.0 });
            if early {
                slot.class = Class::EarlyLight;
                pools.add(demoted, slot);
            } else if coin(rng, params.p) {
                slot.class = Class::LateLight;
                slot.weight /= params.p;
                pools.add(demoted, slot);
            }
        } else if early {
            pools.add(e, Slot { class: Class::EarlyLight, score, weight: 1.0 });
        } else if coin(rng, params.p) {
            pools.add(e, Slot { class: Class::LateLight, score, weight: 1.0 / params.p });
        }

        while pools.store.len() > params.z {
            let steps = pools.evict_one(rng);
            out.longest_cascade = out.longest_cascade.max(steps);
        }
        out.peak_space = out.peak_space.max(pools.store.len());
        if params.record_trace {
            out.trace.push(pools.store.len());
        }
    }
    out.estimate = estimate;
    debug!(
        "practical: z={} p={:.4} closures={} estimate={:.3} cascade={}",
        params.z, params.p, out.closures, out.estimate, out.longest_cascade
    );
    Ok(out)
}
