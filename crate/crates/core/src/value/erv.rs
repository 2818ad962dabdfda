//! Exponential-variate estimator.
//!
//! Each copy draws `u_e ~ Exp(1)` per edge and tracks `max_e C_e / u_e`, which
//! by max-stability is distributed as `T / Exp(1)` when the maximizing edge is
//! kept. Edges are ranked across all copies by `(p(e) + beta) / u_e`; after
//! every block only the `budget` highest keys survive. The estimate is
//! `ln 2 * median` of the per-copy maxima.

use std::collections::BTreeSet;

use log::debug;
use ordered_float::OrderedFloat;
use rand::Rng;

use crate::adjtrack::BlockTracker;
use crate::counters::TrackedEdges;
use crate::error::{Error, Result};
use crate::graph::{AdjBlock, Edge};
use crate::oracle::ValueOracle;
use crate::rng::{median, sample_exp1};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErvParams {
    pub copies: usize,
    pub budget: usize,
    pub beta: f64,
    /// Keep every drawn variate in [`ErvOutcome::draws`].
    pub record_draws: bool,
}

impl ErvParams {
    pub const COPY_CONSTANT: f64 = 50.0;
    pub const BUDGET_CONSTANT: f64 = 50.0;

    /// `copies = ceil(c / eps^2)` and
    /// `budget = ceil(c' / eps^2 * ln^2(K/eps) * (alpha + m*beta/T))`.
    pub fn new(epsilon: f64, alpha: f64, beta: f64, k: f64, m: usize, t_est: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::param(format!("epsilon must be in (0, 1], got {epsilon}")));
        }
        if !(alpha >= 1.0 && beta >= 0.0 && k >= 1.0 && t_est >= 1.0) {
            return Err(Error::param("need alpha >= 1, beta >= 0, K >= 1 and T >= 1"));
        }
        let e2 = epsilon * epsilon;
        let copies = (Self::COPY_CONSTANT / e2).ceil() as usize;
        let log = (k / epsilon).ln().max(1.0);
        let budget = (Self::BUDGET_CONSTANT / e2 * log * log * (alpha + m as f64 * beta / t_est)).ceil();
        Self::explicit(copies, (budget as usize).max(copies), beta)
    }

    pub fn explicit(copies: usize, budget: usize, beta: f64) -> Result<Self> {
        if copies == 0 {
            return Err(Error::param("need at least one copy"));
        }
        if budget < copies {
            return Err(Error::param(format!("budget {budget} is below the copy count {copies}")));
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::param(format!("beta must be >= 0, got {beta}")));
        }
        Ok(ErvParams { copies, budget, beta, record_draws: false })
    }

    pub fn with_draws(mut self) -> Self {
        self.record_draws = true;
        self
    }
}

/// One recorded variate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErvDraw {
    pub copy: usize,
    pub edge: Edge,
    pub u: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ErvOutcome {
    pub estimate: f64,
    pub copy_maxima: Vec<f64>,
    /// Largest number of tracked (edge, copy) pairs after any block.
    pub peak_space: usize,
    pub draws: Vec<ErvDraw>,
}

#[derive(Debug)]
struct Slot {
    copy: u32,
    u: f64,
    key: f64,
    live: bool,
}

#[derive(Debug)]
struct Slots {
    slots: Vec<Slot>,
    live: usize,
}

pub fn run_erv<'a, I, V, R>(stream: I, voracle: &mut V, params: &ErvParams, rng: &mut R) -> Result<ErvOutcome>
where
    I: IntoIterator<Item = AdjBlock<'a>>,
    V: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    ErvParams::explicit(params.copies, params.budget, params.beta)?;
    let p = *params;
    voracle.begin_pass();
    let mut tracker = BlockTracker::new();
    let mut tracked: TrackedEdges<Slots> = TrackedEdges::default();
    let mut keys: BTreeSet<(OrderedFloat<f64>, u32, Edge)> = BTreeSet::new();
    let mut out = ErvOutcome { copy_maxima: vec![0.0; p.copies], ..Default::default() };

    for block in stream {
        tracker.begin(&block)?;
        tracked.bump(&block, &tracker);
        let y = block.vertex;
        for &x in block.neighbors {
            let e = Edge::of(x, y);
            if tracker.arrived_before(x) {
                if let Some(t) = tracked.take(e) {
                    for s in t.payload.slots.iter().filter(|s| s.live) {
                        let a = &mut out.copy_maxima[s.copy as usize];
                        *a = a.max(t.count as f64 / s.u);
                        keys.remove(&(OrderedFloat(s.key), s.copy, e));
                    }
                }
                continue;
            }
            let q = voracle.predict(e).max(0.0) + p.beta;
            let slots: Vec<Slot> = (0..p.copies as u32)
                .map(|copy| {
                    let u = sample_exp1(rng).value();
                    let key = q / u;
                    keys.insert((OrderedFloat(key), copy, e));
                    if p.record_draws {
                        out.draws.push(ErvDraw { copy: copy as usize, edge: e, u });
                    }
                    Slot { copy, u, key, live: true }
                })
                .collect();
            tracked.insert(y, x, Slots { live: slots.len(), slots });
        }

        // drop every key at or below the (budget + 1)-th largest
        while keys.len() > p.budget {
            let lowest = keys.first().expect("non-empty").0;
            while let Some(&(k, copy, e)) = keys.first() {
                if k != lowest {
                    break;
                }
                keys.pop_first();
                let entry = tracked.get_mut(e).expect("keyed edge is tracked");
                let slots = &mut entry.payload;
                let i = slots.slots.binary_search_by_key(&copy, |s| s.copy).expect("slot exists");
                slots.slots[i].live = false;
                slots.live -= 1;
                if slots.live == 0 {
                    tracked.take(e);
                }
            }
        }
        out.peak_space = out.peak_space.max(keys.len());
    }
    tracker.finish()?;
    out.estimate = std::f64::consts::LN_2 * median(&out.copy_maxima)?;
    debug!("erv: copies={} estimate={:.3} peak={}", p.copies, out.estimate, out.peak_space);
    Ok(out)
}
