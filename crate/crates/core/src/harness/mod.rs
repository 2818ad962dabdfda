//! Experiment orchestration: error-vs-space sweeps over datasets, with
//! deterministic per-trial seeds and CSV output.
//!
//! The space fraction `f` maps to each model as follows: `arbitrary`,
//! `baseline-mvv` and `fourcycle` sample at rate `f`; `arbitrary-practical`
//! keeps `ceil(f m)` edges; `adjlist` and `adjlist-multilayer` multiply their
//! rates by `f` and saturate at `f = 1`; `adjlist-erv` keeps
//! `ceil(f m)` keys per copy.

mod clv;
mod csv;

pub use self::clv::{generate_clv, generate_clv_powerlaw, perturb_edges, ClvConfig, ClvGraph};
pub use self::csv::{emit_csv, CSV_HEADER};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use log::info;
use rayon::prelude::*;

use crate::adjlist::{run_adjlist, AdjParams};
use crate::arbitrary::{run_arbitrary, run_arbitrary_practical, run_baseline_mvv, ArbParams, PracticalParams};
use crate::error::{Error, Result};
use crate::fourcycle::{run_fourcycle, FourCycleParams};
use crate::graph::{
    adjacency_stream, exact_four_cycle_count, exact_triangle_count, per_edge_four_cycle_counts,
    per_edge_triangle_counts, r_counts, ArbitraryStream, Graph, VertexOrder,
};
use crate::oracle::{
    prefix_predictor, snapshot_predictor, ConstantOracle, EdgeScores, ExpTailOracle, FirstPassOracle, FlipNoiseOracle,
    HeavyOracle, KNoisyOracle, LinearTailOracle, OracleSpec, PerfectOracle, ThresholdRule, ValueOracle, Verdict,
    EXP_TAIL_K, LINEAR_TAIL_K,
};
use crate::rng::{derive_seed, derived, median, sample_variance, StreamRng};
use crate::value::{run_erv, run_multilayer, ErvParams, LayerParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    AdjList,
    AdjListErv,
    AdjListMultilayer,
    Arbitrary,
    ArbitraryPractical,
    FourCycle,
    BaselineMvv,
}

impl Model {
    pub const ALL: [Model; 7] = [
        Model::AdjList,
        Model::AdjListErv,
        Model::AdjListMultilayer,
        Model::Arbitrary,
        Model::ArbitraryPractical,
        Model::FourCycle,
        Model::BaselineMvv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::AdjList => "adjlist",
            Model::AdjListErv => "adjlist-erv",
            Model::AdjListMultilayer => "adjlist-multilayer",
            Model::Arbitrary => "arbitrary",
            Model::ArbitraryPractical => "arbitrary-practical",
            Model::FourCycle => "fourcycle",
            Model::BaselineMvv => "baseline-mvv",
        }
    }

    pub fn counts_four_cycles(self) -> bool {
        self == Model::FourCycle
    }

    fn is_adjacency(self) -> bool {
        matches!(self, Model::AdjList | Model::AdjListErv | Model::AdjListMultilayer)
    }

    /// Rejects oracle specs the model cannot consume.
    pub fn check_oracle(self, spec: &OracleSpec) -> Result<()> {
        use OracleSpec as S;
        let ok = match self {
            Model::BaselineMvv => matches!(spec, S::None),
            Model::FourCycle => matches!(spec, S::None | S::Perfect { .. } | S::KNoisy { .. } | S::Flip { .. }),
            Model::ArbitraryPractical => {
                matches!(spec, S::None | S::Perfect { .. } | S::Snapshot { .. } | S::Prefix { .. }) || spec.is_value()
            }
            Model::Arbitrary | Model::AdjList => !spec.is_value(),
            Model::AdjListErv | Model::AdjListMultilayer => {
                matches!(spec, S::None | S::Snapshot { .. } | S::Prefix { .. }) || spec.is_value()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("oracle `{spec}` cannot be used with model {}", self.name())))
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown model `{s}`")))
    }
}

/// Source of the count estimate handed to parameter formulas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TEstMode {
    Exact,
    Supplied(f64),
    /// Exact count times the factor.
    LowerBound(f64),
}

impl TEstMode {
    pub fn resolve(self, exact: f64) -> f64 {
        let t = match self {
            TEstMode::Exact => exact,
            TEstMode::Supplied(v) => v,
            TEstMode::LowerBound(f) => f * exact,
        };
        t.max(1.0)
    }
}

impl FromStr for TEstMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("invalid T estimate `{s}`"));
        if s == "exact" {
            return Ok(TEstMode::Exact);
        }
        if let Some(f) = s.strip_prefix("lb:") {
            let f: f64 = f.parse().map_err(|_| bad())?;
            return if f > 0.0 && f <= 1.0 { Ok(TEstMode::LowerBound(f)) } else { Err(bad()) };
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        if v > 0.0 && v.is_finite() {
            Ok(TEstMode::Supplied(v))
        } else {
            Err(bad())
        }
    }
}

/// Edge order for arbitrary-order models.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StreamOrder {
    #[default]
    Random,
    Timestamp,
}

impl FromStr for StreamOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "random" => Ok(StreamOrder::Random),
            "timestamp" => Ok(StreamOrder::Timestamp),
            _ => Err(Error::Config(format!("unknown stream order `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub name: String,
    pub graph: Graph,
}

impl Dataset {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        Dataset { name: name.into(), graph }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub model: Model,
    pub oracle: OracleSpec,
    pub space: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub t_est: TEstMode,
    pub order: StreamOrder,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Record wall time per pass. When off, `wall_ms` is 0 and output is
    /// byte-for-byte reproducible.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(model: Model, oracle: OracleSpec) -> Self {
        ExperimentConfig {
            model,
            oracle,
            space: vec![1.0],
            trials: 1,
            seed: crate::rng::DEFAULT_SEED,
            epsilon: 0.5,
            t_est: TEstMode::Exact,
            order: StreamOrder::Random,
            workers: None,
            timing: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.space.is_empty() {
            return Err(Error::Config("no space fractions given".into()));
        }
        if let Some(f) = self.space.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
            return Err(Error::Config(format!("space fraction {f} is outside (0, 1]")));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::Config(format!("epsilon {} is outside (0, 1]", self.epsilon)));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        self.model.check_oracle(&self.oracle)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub model: Model,
    pub dataset: String,
    pub space_fraction: f64,
    pub trial: usize,
    pub seed: u64,
    pub estimate: f64,
    pub exact: f64,
    pub rel_error: f64,
    pub peak_edges: usize,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConfigSummary {
    pub dataset: String,
    pub space_fraction: f64,
    pub trials: usize,
    pub median_error: f64,
    pub std_error: f64,
    pub median_peak: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentResult {
    pub records: Vec<TrialRecord>,
    pub summaries: Vec<ConfigSummary>,
}

/// `|1 - estimate / exact|`; 0 when both are 0 and infinite when only the
/// exact count is.
pub fn relative_error(estimate: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        if estimate == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (1.0 - estimate / exact).abs()
    }
}

/// Exact quantities computed once per dataset.
struct Prepared<'a> {
    data: &'a Dataset,
    exact: f64,
    /// Per-edge triangle or four-cycle counts, for arbitrary-order oracles.
    per_edge: Option<EdgeScores>,
    predictor: Option<EdgeScores>,
}

fn prepare<'a>(
    config: &ExperimentConfig,
    data: &'a Dataset,
    shared_predictor: Option<&EdgeScores>,
) -> Result<Prepared<'a>> {
    let g = &data.graph;
    let model = config.model;
    let exact = if model.counts_four_cycles() { exact_four_cycle_count(g) } else { exact_triangle_count(g) } as f64;
    let needs_per_edge = !model.is_adjacency() && model != Model::BaselineMvv && config.oracle != OracleSpec::None;
    let per_edge = needs_per_edge.then(|| {
        let counts = if model.counts_four_cycles() { per_edge_four_cycle_counts(g) } else { per_edge_triangle_counts(g) };
        EdgeScores::from_counts(g, &counts)
    });
    let predictor = match &config.oracle {
        OracleSpec::Prefix { split } => Some(prefix_predictor(g, *split)?),
        OracleSpec::Snapshot { .. } => shared_predictor.cloned(),
        _ => None,
    };
    if matches!(config.oracle, OracleSpec::Snapshot { .. }) && predictor.is_none() {
        return Err(Error::Config("snapshot oracle needs a training graph".into()));
    }
    if config.order == StreamOrder::Timestamp && !model.is_adjacency() && g.timestamps().is_none() {
        return Err(Error::MissingTimestamps);
    }
    Ok(Prepared { data, exact, per_edge, predictor })
}

struct TrialOutput {
    estimate: f64,
    peak: usize,
}

fn heavy_oracle<'s>(
    spec: &OracleSpec,
    scores: &'s EdgeScores,
    predictor: Option<&'s EdgeScores>,
    default_threshold: f64,
    rule: ThresholdRule,
    g: &Graph,
    rng: StreamRng,
) -> Result<Box<dyn HeavyOracle + 's>> {
    let mut rng = rng;
    Ok(match *spec {
        OracleSpec::None => Box::new(ConstantOracle(Verdict::Light)),
        OracleSpec::Perfect { rho } => Box::new(PerfectOracle::new(scores, rho, rule)?),
        OracleSpec::KNoisy { rho } => Box::new(KNoisyOracle::new(scores, rho, rng)?),
        OracleSpec::Flip { rho, delta } => Box::new(FlipNoiseOracle::new(scores, rho, rule, delta, rng)?),
        OracleSpec::Snapshot { .. } | OracleSpec::Prefix { .. } => {
            Box::new(PerfectOracle::new(predictor.expect("predictor prepared"), default_threshold, rule)?)
        }
        OracleSpec::FirstPass { rho, epsilon } => Box::new(FirstPassOracle::build(g, rho, epsilon, &mut rng)?),
        OracleSpec::ValueExp { .. } | OracleSpec::ValueLin { .. } => {
            return Err(Error::Config(format!("`{spec}` is not a heavy-edge oracle")))
        }
    })
}

fn value_oracle<'s>(
    spec: &OracleSpec,
    truth: &'s EdgeScores,
    predictor: Option<&'s EdgeScores>,
    zero: &'s EdgeScores,
    rng: StreamRng,
) -> Result<(Box<dyn ValueOracle + 's>, f64, f64, f64)> {
    Ok(match *spec {
        OracleSpec::ValueExp { alpha, beta } => {
            (Box::new(ExpTailOracle::new(truth, alpha, beta, rng)?), alpha, beta, EXP_TAIL_K)
        }
        OracleSpec::ValueLin { alpha, beta } => {
            (Box::new(LinearTailOracle::new(truth, alpha, beta, rng)?), alpha, beta, LINEAR_TAIL_K)
        }
        OracleSpec::Perfect { .. } => (Box::new(truth), 1.0, 1.0, 1.0),
        OracleSpec::Snapshot { .. } | OracleSpec::Prefix { .. } => {
            (Box::new(predictor.expect("predictor prepared")), 1.0, 1.0, 1.0)
        }
        OracleSpec::None => (Box::new(zero), 1.0, 1.0, 1.0),
        _ => return Err(Error::Config(format!("`{spec}` is not a value oracle"))),
    })
}

fn arbitrary_stream(config: &ExperimentConfig, g: &Graph, seed: u64) -> Result<ArbitraryStream> {
    match config.order {
        StreamOrder::Random => Ok(ArbitraryStream::seeded(g, seed)),
        StreamOrder::Timestamp => ArbitraryStream::by_timestamp(g),
    }
}

fn run_trial(config: &ExperimentConfig, prep: &Prepared<'_>, f: f64, seed: u64) -> Result<TrialOutput> {
    let g = &prep.data.graph;
    let (m, n) = (g.m(), g.n());
    let t_est = config.t_est.resolve(prep.exact);
    let eps = config.epsilon;
    let oracle_rng = derived(seed, 1);
    let order_seed = derive_seed(seed, 2);
    let mut rng = derived(seed, 3);
    let zero = EdgeScores::new();

    if config.model.is_adjacency() {
        let order = VertexOrder::random(n, &mut derived(order_seed, 0));
        let truth = EdgeScores::from_counts(g, &r_counts(g, &order));
        let stream = adjacency_stream(g, &order);
        return match config.model {
            Model::AdjList => {
                let base = AdjParams::new(m.max(1), n.max(2), eps, t_est)?;
                let params = if f >= 1.0 { base.saturated() } else { base.scaled(f) };
                let mut oracle = heavy_oracle(
                    &config.oracle,
                    &truth,
                    prep.predictor.as_ref(),
                    params.oracle_threshold(),
                    ThresholdRule::AtLeast,
                    g,
                    oracle_rng,
                )?;
                let out = run_adjlist(stream, &mut oracle, &params, &mut rng)?;
                Ok(TrialOutput { estimate: out.estimate, peak: out.peak_space })
            }
            Model::AdjListErv => {
                let (mut oracle, alpha, beta, k) =
                    value_oracle(&config.oracle, &truth, prep.predictor.as_ref(), &zero, oracle_rng)?;
                let beta = if beta > 0.0 { beta } else { 1.0 };
                let copies = ErvParams::new(eps, alpha, beta, k, m, t_est)?.copies;
                let per_copy = ((f * m as f64).ceil() as usize).max(1);
                let params = ErvParams::explicit(copies, per_copy * copies, beta)?;
                let out = run_erv(stream, &mut oracle, &params, &mut rng)?;
                Ok(TrialOutput { estimate: out.estimate, peak: out.peak_space })
            }
            _ => {
                let (mut oracle, _, beta, _) =
                    value_oracle(&config.oracle, &truth, prep.predictor.as_ref(), &zero, oracle_rng)?;
                if !(beta > 0.0) {
                    return Err(Error::Config("adjlist-multilayer needs beta > 0".into()));
                }
                let base = LayerParams::new(n.max(2), eps, beta, t_est)?;
                let params = if f >= 1.0 { base.saturated() } else { base.scaled(f) };
                let out = run_multilayer(stream, &mut oracle, &params, &mut rng)?;
                Ok(TrialOutput { estimate: out.estimate, peak: out.peak_space })
            }
        };
    }

    let stream = arbitrary_stream(config, g, order_seed)?;
    let per_edge = prep.per_edge.as_ref().unwrap_or(&zero);
    match config.model {
        Model::Arbitrary => {
            let theory = ArbParams::theory(m.max(1), eps, t_est)?;
            let params = ArbParams { p: f, ..theory };
            let mut oracle = heavy_oracle(
                &config.oracle,
                per_edge,
                prep.predictor.as_ref(),
                theory.rho,
                ThresholdRule::Above,
                g,
                oracle_rng,
            )?;
            let out = run_arbitrary(&stream, &mut oracle, &params, &mut rng)?;
            Ok(TrialOutput { estimate: out.estimate, peak: out.peak_space })
        }
        Model::ArbitraryPractical => {
            let (mut oracle, ..) = value_oracle(&config.oracle, per_edge, prep.predictor.as_ref(), &zero, oracle_rng)?;
            let params = PracticalParams::from_fraction(f, m)?;
            let out = run_arbitrary_practical(&stream, &mut oracle, &params, &mut rng)?;
            Ok(TrialOutput { estimate: out.estimate, peak: out.peak_space })
        }
        Model::FourCycle => {
            let params = FourCycleParams::explicit(f, t_est)?;
            let mut oracle = heavy_oracle(
                &config.oracle,
                per_edge,
                None,
                params.heavy_edge_threshold,
                ThresholdRule::AtLeast,
                g,
                oracle_rng,
            )?;
            let out = run_fourcycle(&stream, n, &mut oracle, &params, &mut rng)?;
            Ok(TrialOutput { estimate: out.estimate, peak: out.peak_space })
        }
        Model::BaselineMvv => {
            let out = run_baseline_mvv(&stream, f, &mut rng)?;
            Ok(TrialOutput { estimate: out.estimate, peak: out.peak_space })
        }
        _ => unreachable!("adjacency models handled above"),
    }
}

/// Builds the snapshot predictor once, from `training` or else from the
/// first dataset.
fn shared_predictor(config: &ExperimentConfig, datasets: &[Dataset], training: Option<&Graph>) -> Result<Option<EdgeScores>> {
    match &config.oracle {
        OracleSpec::Snapshot { keep, .. } => {
            let g = training.or_else(|| datasets.first().map(|d| &d.graph)).ok_or(Error::EmptyInput)?;
            Ok(Some(snapshot_predictor(g, *keep)?))
        }
        _ => Ok(None),
    }
}

/// Seed of one trial: distinct per (dataset, space fraction, trial).
pub fn trial_seed(master: u64, dataset: usize, space: usize, trial: usize) -> u64 {
    derive_seed(derive_seed(derive_seed(master, dataset as u64), space as u64), trial as u64)
}

pub fn run_experiment(config: &ExperimentConfig, datasets: &[Dataset], training: Option<&Graph>) -> Result<ExperimentResult> {
    config.validate()?;
    if datasets.is_empty() {
        return Err(Error::Config("no datasets given".into()));
    }
    let shared = shared_predictor(config, datasets, training)?;
    let prepared: Vec<Prepared<'_>> =
        datasets.iter().map(|d| prepare(config, d, shared.as_ref())).collect::<Result<_>>()?;

    let pool = match config.workers {
        Some(k) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?,
        ),
        None => None,
    };

    let mut result = ExperimentResult::default();
    for (di, prep) in prepared.iter().enumerate() {
        for (si, &f) in config.space.iter().enumerate() {
            let job = || {
                (0..config.trials)
                    .into_par_iter()
                    .map(|trial| {
                        let seed = trial_seed(config.seed, di, si, trial);
                        let start = Instant::now();
                        let out = run_trial(config, prep, f, seed)?;
                        let wall_ms = if config.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
                        Ok(TrialRecord {
                            model: config.model,
                            dataset: prep.data.name.clone(),
                            space_fraction: f,
                            trial,
                            seed,
                            estimate: out.estimate,
                            exact: prep.exact,
                            rel_error: relative_error(out.estimate, prep.exact),
                            peak_edges: out.peak,
                            wall_ms,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            };
            let records = match &pool {
                Some(p) => p.install(job)?,
                None => job()?,
            };
            let errors: Vec<f64> = records.iter().map(|r| r.rel_error).collect();
            let peaks: Vec<f64> = records.iter().map(|r| r.peak_edges as f64).collect();
            let summary = ConfigSummary {
                dataset: prep.data.name.clone(),
                space_fraction: f,
                trials: records.len(),
                median_error: median(&errors)?,
                std_error: sample_variance(&errors).sqrt(),
                median_peak: median(&peaks)?,
            };
            info!(
                "{} on {} at space {}: median error {:.4} (sd {:.4})",
                config.model, summary.dataset, f, summary.median_error, summary.std_error
            );
            result.summaries.push(summary);
            result.records.extend(records);
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, petersen};

    #[test]
    fn parse_modes() {
        assert_eq!("exact".parse::<TEstMode>().unwrap(), TEstMode::Exact);
        assert_eq!("12.5".parse::<TEstMode>().unwrap(), TEstMode::Supplied(12.5));
        assert_eq!("lb:0.5".parse::<TEstMode>().unwrap(), TEstMode::LowerBound(0.5));
        assert!("lb:2".parse::<TEstMode>().is_err());
        assert!("-1".parse::<TEstMode>().is_err());
        for m in Model::ALL {
            assert_eq!(m.name().parse::<Model>().unwrap(), m);
        }
        assert!("triangles".parse::<Model>().is_err());
    }

    #[test]
    fn relative_error_edge_cases() {
        assert_eq!(relative_error(0.0, 0.0), 0.0);
        assert_eq!(relative_error(1.0, 0.0), f64::INFINITY);
        assert_eq!(relative_error(5.0, 10.0), 0.5);
    }

    #[test]
    fn incompatible_oracle_is_rejected() {
        let config = ExperimentConfig::new(Model::FourCycle, "value-exp:1,0".parse().unwrap());
        let data = [Dataset::new("k4", complete(4))];
        assert!(matches!(run_experiment(&config, &data, None), Err(Error::Config(_))));
        let config = ExperimentConfig::new(Model::BaselineMvv, "perfect:1".parse().unwrap());
        assert!(run_experiment(&config, &data, None).is_err());
    }

    #[test]
    fn full_space_arbitrary_is_exact() {
        let mut config = ExperimentConfig::new(Model::Arbitrary, "perfect:1".parse().unwrap());
        config.trials = 5;
        let data = [Dataset::new("k5", complete(5)), Dataset::new("petersen", petersen())];
        let res = run_experiment(&config, &data, None).unwrap();
        assert_eq!(res.records.len(), 10);
        assert!(res.records.iter().all(|r| r.rel_error == 0.0));
        assert_eq!(res.summaries.len(), 2);
    }
}
