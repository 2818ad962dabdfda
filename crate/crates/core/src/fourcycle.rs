//! Four-cycle counting over edges in arbitrary order.
//!
//! Light edges are sampled at rate `p` and every cycle closed by a light
//! edge against three sampled light edges is recorded. Heavy edges are all
//! kept. A random vertex set `S`, sampled at the same rate, keeps every
//! incident edge; after the pass its wedges reveal vertex pairs with many
//! common neighbors, whose cycles are counted directly from `C(q, 2)`.

use log::debug;
use rand::Rng;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::graph::{ArbitraryEdge, Edge, VertexId};
use crate::oracle::HeavyOracle;
use crate::rng::coin;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourCycleParams {
    pub rho: f64,
    pub p: f64,
    /// Oracle threshold on `N_e`, `T^(2/3)`.
    pub heavy_edge_threshold: f64,
    /// A pair with `q >= wedge_threshold` sampled common neighbors is heavy.
    /// Defaults to `p (rho + 1)`: each of its wedges lies on at least `rho`
    /// cycles.
    pub wedge_threshold: f64,
    pub epsilon: f64,
    pub t_est: f64,
}

impl FourCycleParams {
    pub const DEFAULT_ALPHA: f64 = 4.0;

    /// `rho = T^(1/3)`, `p = min(1, alpha eps^-2 ln n / rho)`.
    pub fn new(n: usize, epsilon: f64, t_est: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::param(format!("need n >= 2, got {n}")));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::param(format!("epsilon must be in (0, 1], got {epsilon}")));
        }
        if !(t_est >= 1.0 && t_est.is_finite()) {
            return Err(Error::param(format!("cycle estimate must be >= 1, got {t_est}")));
        }
        let rho = t_est.cbrt();
        let p = (Self::DEFAULT_ALPHA * (n as f64).ln() / (epsilon * epsilon * rho)).min(1.0);
        Ok(FourCycleParams {
            rho,
            p,
            heavy_edge_threshold: rho * rho,
            wedge_threshold: p * (rho + 1.0),
            epsilon,
            t_est,
        })
    }

    /// Fixed sampling rate; thresholds follow from `t_est`.
    pub fn explicit(p: f64, t_est: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::param(format!("sampling rate must be in (0, 1], got {p}")));
        }
        if !(t_est >= 0.0 && t_est.is_finite()) {
            return Err(Error::param(format!("cycle estimate must be >= 0, got {t_est}")));
        }
        let rho = t_est.cbrt();
        Ok(FourCycleParams {
            rho,
            p,
            heavy_edge_threshold: rho * rho,
            wedge_threshold: p * (rho + 1.0),
            epsilon: 1.0,
            t_est,
        })
    }

    pub fn with_wedge_threshold(mut self, threshold: f64) -> Self {
        self.wedge_threshold = threshold;
        self
    }

    /// Multiplies the sampling rate, clamped to 1, and moves the wedge
    /// threshold with it.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.p = (self.p * factor).min(1.0);
        self.wedge_threshold = self.p * (self.rho + 1.0);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::param(format!("sampling rate must be in (0, 1], got {}", self.p)));
        }
        if self.wedge_threshold.is_nan() {
            return Err(Error::param("wedge threshold is NaN"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FourCycleOutcome {
    pub estimate: f64,
    pub a_l: u64,
    pub a_h: u64,
    pub a_w: f64,
    /// Light cycles recorded during the pass.
    pub recorded: usize,
    /// Vertex pairs found to have heavy wedges.
    pub heavy_pairs: usize,
    /// Peak number of stored edges across the light, heavy and sampled-vertex sets.
    pub peak_space: usize,
}

#[derive(Debug, Default)]
struct EdgeSet {
    edges: FxHashSet<Edge>,
    adj: FxHashMap<VertexId, Vec<VertexId>>,
}

impl EdgeSet {
    fn insert(&mut self, e: Edge) {
        if self.edges.insert(e) {
            self.adj.entry(e.lo()).or_default().push(e.hi());
            self.adj.entry(e.hi()).or_default().push(e.lo());
        }
    }

    fn has(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.edges.contains(&Edge::of(a, b))
    }

    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adj.get(&v).map_or(&[], Vec::as_slice)
    }

    fn len(&self) -> usize {
        self.edges.len()
    }
}

/// Cycle `a-b-c-d-a` as its lexicographically smallest rotation or reflection.
fn canonical_cycle(c: [VertexId; 4]) -> [VertexId; 4] {
    let mut best = c;
    for r in 0..4 {
        let fwd = [c[r], c[(r + 1) % 4], c[(r + 2) % 4], c[(r + 3) % 4]];
        let rev = [c[r], c[(r + 3) % 4], c[(r + 2) % 4], c[(r + 1) % 4]];
        best = best.min(fwd).min(rev);
    }
    best
}

/// One-pass state. Feed every edge to [`process`](Self::process), then call
/// [`finish`](Self::finish).
#[derive(Debug)]
pub struct FourCycleState {
    params: FourCycleParams,
    in_s: Vec<bool>,
    e_s: EdgeSet,
    e_l: EdgeSet,
    e_h: EdgeSet,
    d: FxHashSet<[VertexId; 4]>,
    peak: usize,
}

impl FourCycleState {
    /// Samples `S` over vertices `0..n`; later vertices are sampled on sight.
    pub fn new<R: Rng + ?Sized>(n: usize, params: FourCycleParams, rng: &mut R) -> Result<Self> {
        params.validate()?;
        let in_s = (0..n).map(|_| coin(rng, params.p)).collect();
        Ok(FourCycleState {
            params,
            in_s,
            e_s: EdgeSet::default(),
            e_l: EdgeSet::default(),
            e_h: EdgeSet::default(),
            d: FxHashSet::default(),
            peak: 0,
        })
    }

    fn sampled<R: Rng + ?Sized>(&mut self, v: VertexId, rng: &mut R) -> bool {
        while self.in_s.len() <= v as usize {
            self.in_s.push(coin(rng, self.params.p));
        }
        self.in_s[v as usize]
    }

    pub fn space(&self) -> usize {
        self.e_s.len() + self.e_l.len() + self.e_h.len()
    }

    pub fn sampled_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.in_s.iter().enumerate().filter(|(_, &s)| s).map(|(v, _)| v as VertexId)
    }

    pub fn process<O, R>(&mut self, e: Edge, oracle: &mut O, rng: &mut R)
    where
        O: HeavyOracle + ?Sized,
        R: Rng + ?Sized,
    {
        let (u, v) = e.endpoints();
        if self.sampled(u, rng) | self.sampled(v, rng) {
            self.e_s.insert(e);
        }
        if oracle.query(e).is_heavy() {
            self.e_h.insert(e);
        } else {
            if coin(rng, self.params.p) {
                self.e_l.insert(e);
            }
            for &w in self.e_l.neighbors(u) {
                if w == v {
                    continue;
                }
                for &z in self.e_l.neighbors(v) {
                    if z != u && z != w && self.e_l.has(w, z) {
                        self.d.insert(canonical_cycle([u, w, z, v]));
                    }
                }
            }
        }
        self.peak = self.peak.max(self.space());
    }

    /// Vertex pairs with a common neighbor in `S`, with their wedge counts
    /// through `S`, sorted by pair.
    pub fn candidate_diagonals(&self) -> Vec<(VertexId, VertexId, u64)> {
        let mut q: FxHashMap<Edge, u64> = FxHashMap::default();
        for c in self.sampled_vertices() {
            let nb = self.e_s.neighbors(c);
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    *q.entry(Edge::of(a, b)).or_default() += 1;
                }
            }
        }
        let mut out: Vec<_> = q.into_iter().map(|(e, k)| (e.lo(), e.hi(), k)).collect();
        out.sort_unstable();
        out
    }

    pub fn finish(self) -> FourCycleOutcome {
        let mut out = FourCycleOutcome { peak_space: self.peak, recorded: self.d.len(), ..Default::default() };
        let mut w: FxHashSet<Edge> = FxHashSet::default();
        let p2 = self.params.p * self.params.p;
        for (a, b, q) in self.candidate_diagonals() {
            if q as f64 >= self.params.wedge_threshold {
                // C(q, 2) / p^2 is unbiased for C(k, 2) when q ~ Bin(k, p)
                out.a_w += (q * (q - 1) / 2) as f64 / p2;
                w.insert(Edge::of(a, b));
            }
        }
        let clear = |c: &[VertexId; 4]| !w.contains(&Edge::of(c[0], c[2])) && !w.contains(&Edge::of(c[1], c[3]));
        out.a_l = self.d.iter().filter(|c| clear(c)).count() as u64;

        for &h in &self.e_h.edges {
            let (u, v) = h.endpoints();
            for &l in &self.e_l.edges {
                for (a, b) in [(l.lo(), l.hi()), (l.hi(), l.lo())] {
                    // cycle u - v - b - a - u
                    if a == u || a == v || b == u || b == v {
                        continue;
                    }
                    if self.e_l.has(v, b) && self.e_l.has(a, u) && clear(&[u, v, b, a]) {
                        out.a_h += 1;
                    }
                }
            }
        }
        out.heavy_pairs = w.len();
        let p3 = self.params.p.powi(3);
        out.estimate = (out.a_l + out.a_h) as f64 / p3 + out.a_w;
        debug!(
            "fourcycle: p={:.3} a=({}, {}, {}) estimate={:.3}",
            self.params.p, out.a_l, out.a_h, out.a_w, out.estimate
        );
        out
    }
}

pub fn run_fourcycle<I, O, R>(
    stream: I,
    n: usize,
    oracle: &mut O,
    params: &FourCycleParams,
    rng: &mut R,
) -> Result<FourCycleOutcome>
where
    I: IntoIterator<Item = ArbitraryEdge>,
    O: HeavyOracle + ?Sized,
    R: Rng + ?Sized,
{
    oracle.begin_pass();
    let mut state = FourCycleState::new(n, *params, rng)?;
    for item in stream {
        state.process(item.edge, oracle, rng);
    }
    Ok(state.finish())
}
