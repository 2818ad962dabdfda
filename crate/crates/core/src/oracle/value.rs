use rand::Rng;
use rustc_hash::FxHashMap;

use super::{EdgeScores, ValueOracle};
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::rng::StreamRng;

/// Tail constant of [`ExpTailOracle`]: `Pr[p < R/lambda - beta] <= e * exp(-lambda)`.
/// The bound is tight at `lambda = 1`, where the left side can reach 1.
pub const EXP_TAIL_K: f64 = std::f64::consts::E;

/// Tail constant of [`LinearTailOracle`]: both `Pr[p > lambda*alpha*R + beta]`
/// and `Pr[p < R/lambda - beta]` are at most `1/lambda`.
pub const LINEAR_TAIL_K: f64 = 1.0;

const PARETO_HI: f64 = 100.0;

fn check_alpha_beta(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(Error::param(format!("alpha must be >= 1, got {alpha}")));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::param(format!("beta must be >= 0, got {beta}")));
    }
    Ok(())
}

/// `p(e) = alpha * R_e * U + beta * V`, `U ~ U[1/2, 1]`, `V ~ U[0, 1]`.
///
/// `E[p] = 3/4 alpha R + beta/2` and `p >= R/2`, so the lower tail below
/// `R/lambda - beta` is empty for `lambda >= 2`.
#[derive(Clone, Debug)]
pub struct ExpTailOracle<'a> {
    truth: &'a EdgeScores,
    alpha: f64,
    beta: f64,
    noiseless: bool,
    rng: StreamRng,
    cache: FxHashMap<Edge, f64>,
}

impl<'a> ExpTailOracle<'a> {
    pub fn new(truth: &'a EdgeScores, alpha: f64, beta: f64, rng: StreamRng) -> Result<Self> {
        check_alpha_beta(alpha, beta)?;
        Ok(ExpTailOracle { truth, alpha, beta, noiseless: false, rng, cache: FxHashMap::default() })
    }

    /// Fixes `U = 1` and `V = 0`, so `p(e) = alpha * R_e`.
    pub fn noiseless(mut self) -> Self {
        self.noiseless = true;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    fn draw(&mut self, r: f64) -> f64 {
        if self.noiseless {
            return self.alpha * r;
        }
        let u: f64 = self.rng.gen_range(0.5..=1.0);
        let v: f64 = self.rng.gen();
        self.alpha * r * u + self.beta * v
    }
}

impl ValueOracle for ExpTailOracle<'_> {
    fn predict(&mut self, e: Edge) -> f64 {
        if let Some(&p) = self.cache.get(&e) {
            return p;
        }
        let p = self.draw(self.truth.get(e));
        self.cache.insert(e, p);
        p
    }

    fn begin_pass(&mut self) {
        self.cache.clear();
    }
}

/// `p(e) = alpha * R_e * W + beta`, `W` truncated Pareto on `[1/2, 100]` with
/// density proportional to `1/w^2`.
#[derive(Clone, Debug)]
pub struct LinearTailOracle<'a> {
    truth: &'a EdgeScores,
    alpha: f64,
    beta: f64,
    noiseless: bool,
    rng: StreamRng,
    cache: FxHashMap<Edge, f64>,
}

impl<'a> LinearTailOracle<'a> {
    pub fn new(truth: &'a EdgeScores, alpha: f64, beta: f64, rng: StreamRng) -> Result<Self> {
        check_alpha_beta(alpha, beta)?;
        Ok(LinearTailOracle { truth, alpha, beta, noiseless: false, rng, cache: FxHashMap::default() })
    }

    /// Fixes `W = 1`, so `p(e) = alpha * R_e + beta`.
    pub fn noiseless(mut self) -> Self {
        self.noiseless = true;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Inverse CDF of the multiplier: `F(w) = (2 - 1/w) / 1.99`.
    pub fn multiplier(u: f64) -> f64 {
        1.0 / (2.0 - (2.0 - 1.0 / PARETO_HI) * u)
    }

    /// `Pr[W > lambda]` for `lambda` in `[1/2, 100]`.
    pub fn multiplier_tail(lambda: f64) -> f64 {
        let lambda = lambda.clamp(0.5, PARETO_HI);
        (1.0 / lambda - 1.0 / PARETO_HI) / (2.0 - 1.0 / PARETO_HI)
    }
}

impl ValueOracle for LinearTailOracle<'_> {
    fn predict(&mut self, e: Edge) -> f64 {
        if let Some(&p) = self.cache.get(&e) {
            return p;
        }
        let w = if self.noiseless { 1.0 } else { Self::multiplier(self.rng.gen()) };
        let p = self.alpha * self.truth.get(e) * w + self.beta;
        self.cache.insert(e, p);
        p
    }

    fn begin_pass(&mut self) {
        self.cache.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::path;
    use crate::rng::seeded;

    fn one_edge(r: f64) -> (Edge, EdgeScores) {
        let e = Edge::new(0, 1).unwrap();
        (e, [(e, r)].into_iter().collect())
    }

    #[test]
    fn exp_tail_noiseless_and_support() {
        let (e, s) = one_edge(10.0);
        let mut o = ExpTailOracle::new(&s, 1.0, 0.0, seeded(1)).unwrap().noiseless();
        assert_eq!(o.predict(e), 10.0);

        // fresh draws: a new edge per query
        let g = path(10_001);
        let table: EdgeScores = g.edges().iter().map(|&x| (x, 10.0)).collect();
        let mut o = ExpTailOracle::new(&table, 2.0, 0.0, seeded(2)).unwrap();
        let draws: Vec<f64> = g.edges().iter().map(|&x| o.predict(x)).collect();
        assert!(draws.iter().all(|&p| (10.0..=20.0).contains(&p)));
        let mean = crate::rng::mean(&draws);
        assert!(mean <= 2.0 * 10.0 && (mean - 15.0).abs() < 0.1, "{mean}");
        assert!(ExpTailOracle::new(&s, 0.5, 0.0, seeded(1)).is_err());
    }

    #[test]
    fn linear_tail_shape() {
        let (e, s) = one_edge(0.0);
        let mut o = LinearTailOracle::new(&s, 3.0, 2.5, seeded(1)).unwrap();
        assert_eq!(o.predict(e), 2.5);
        let (e, s) = one_edge(4.0);
        let mut o = LinearTailOracle::new(&s, 2.0, 1.0, seeded(1)).unwrap().noiseless();
        assert_eq!(o.predict(e), 9.0);

        assert!((LinearTailOracle::multiplier(0.0) - 0.5).abs() < 1e-12);
        assert!((LinearTailOracle::multiplier(1.0) - 100.0).abs() < 1e-9);
        assert!((LinearTailOracle::multiplier_tail(0.5) - 1.0).abs() < 1e-12);
        assert!(LinearTailOracle::multiplier_tail(100.0).abs() < 1e-12);
    }

    #[test]
    fn predictions_are_cached() {
        let (e, s) = one_edge(7.0);
        let mut o = ExpTailOracle::new(&s, 1.0, 1.0, seeded(4)).unwrap();
        let a = o.predict(e);
        assert_eq!(a, o.predict(e));
        o.begin_pass();
        assert_ne!(a, o.predict(e));
    }
}
