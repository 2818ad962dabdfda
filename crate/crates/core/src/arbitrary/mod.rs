//! Triangle counting over edges in arbitrary order.
//!
//! Heavy edges are all kept; light edges are kept with probability `p`. When
//! an edge arrives, every stored wedge it closes is classified by where its
//! two stored edges sit, and the three counts are reweighted at the end.

mod practical;
mod store;

pub use practical::{run_arbitrary_practical, PracticalOutcome, PracticalParams};

use log::debug;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::ArbitraryEdge;
use crate::oracle::{HeavyOracle, Verdict};
use crate::rng::coin;
use store::EdgeStore;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArbParams {
    pub rho: f64,
    pub p: f64,
    pub epsilon: f64,
    pub t_est: f64,
}

impl ArbParams {
    pub const DEFAULT_C: f64 = 4.0;

    /// `rho = max(eps T / sqrt(m), 1)`, `p = min(1, C max(1/(eps sqrt T), rho/(eps^2 T)))`.
    pub fn theory(m: usize, epsilon: f64, t_est: f64) -> Result<Self> {
        Self::theory_with(m, epsilon, t_est, Self::DEFAULT_C)
    }

    pub fn theory_with(m: usize, epsilon: f64, t_est: f64, c: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::param("need at least one edge"));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::param(format!("epsilon must be in (0, 1], got {epsilon}")));
        }
        if !(t_est >= 1.0 && t_est.is_finite()) {
            return Err(Error::param(format!("triangle estimate must be >= 1, got {t_est}")));
        }
        if !(c > 0.0) {
            return Err(Error::param("constant must be positive"));
        }
        let rho = (epsilon * t_est / (m as f64).sqrt()).max(1.0);
        let p = c * (1.0 / (epsilon * t_est.sqrt())).max(rho / (epsilon * epsilon * t_est));
        Ok(ArbParams { rho, p: p.min(1.0), epsilon, t_est })
    }

    pub fn explicit(rho: f64, p: f64) -> Result<Self> {
        let params = ArbParams { rho, p, epsilon: 1.0, t_est: 1.0 };
        params.validate()?;
        Ok(params)
    }

    /// Multiplies the light sampling rate, clamped to 1.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.p = (self.p * factor).min(1.0);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::param(format!("sampling rate must be in (0, 1], got {}", self.p)));
        }
        if !(self.rho > 0.0) {
            return Err(Error::param(format!("heavy threshold must be positive, got {}", self.rho)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ArbOutcome {
    pub estimate: f64,
    /// Light-light closures.
    pub l1: u64,
    /// Light-heavy closures.
    pub l2: u64,
    /// Heavy-heavy closures.
    pub l3: u64,
    pub peak_space: usize,
    /// Total merge steps spent scanning wedges.
    pub work: u64,
}

pub fn run_arbitrary<I, O, R>(stream: I, oracle: &mut O, params: &ArbParams, rng: &mut R) -> Result<ArbOutcome>
where
    I: IntoIterator<Item = ArbitraryEdge>,
    O: HeavyOracle + ?Sized,
    R: Rng + ?Sized,
{
    params.validate()?;
    oracle.begin_pass();
    let p = params.p;
    let mut store: EdgeStore<Verdict> = EdgeStore::default();
    let mut out = ArbOutcome::default();
    for item in stream {
        let e = item.edge;
        let verdict = oracle.query(e);
        let keep = verdict.is_heavy() || coin(rng, p);
        let (mut l1, mut l2, mut l3) = (0, 0, 0);
        out.work += store.for_each_closure(e, |_, a, b| match (a.is_heavy(), b.is_heavy()) {
            (false, false) => l1 += 1,
            (true, true) => l3 += 1,
            _ => l2 += 1,
        }) as u64;
        out.l1 += l1;
        out.l2 += l2;
        out.l3 += l3;
        if keep {
            store.insert(e, verdict);
            out.peak_space = out.peak_space.max(store.len());
        }
    }
    out.estimate = out.l1 as f64 / (p * p) + out.l2 as f64 / p + out.l3 as f64;
    debug!("arbitrary: p={p:.4} l=({}, {}, {}) estimate={:.3}", out.l1, out.l2, out.l3, out.estimate);
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BaselineOutcome {
    pub estimate: f64,
    pub closures: u64,
    pub peak_space: usize,
    pub work: u64,
}

/// Plain edge sampling: keeps each edge with probability `p` and returns
/// `C / p^2` where `C` counts closures of two stored edges.
pub fn run_baseline_mvv<I, R>(stream: I, p: f64, rng: &mut R) -> Result<BaselineOutcome>
where
    I: IntoIterator<Item = ArbitraryEdge>,
    R: Rng + ?Sized,
{
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::param(format!("sampling rate must be in (0, 1], got {p}")));
    }
    let mut store: EdgeStore<()> = EdgeStore::default();
    let mut out = BaselineOutcome::default();
    for item in stream {
        let e = item.edge;
        let mut c = 0;
        out.work += store.for_each_closure(e, |_, _, _| c += 1) as u64;
        out.closures += c;
        if coin(rng, p) {
            store.insert(e, ());
            out.peak_space = out.peak_space.max(store.len());
        }
    }
    out.estimate = out.closures as f64 / (p * p);
    Ok(out)
}
