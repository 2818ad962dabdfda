use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use streamcount::graph::{
    exact_four_cycle_count, exact_triangle_count, load_edge_list_with, load_snapshot_dir, EdgeListFormat, Labels,
};
use streamcount::harness::{
    emit_csv, generate_clv, run_experiment, ClvConfig, Dataset, ExperimentConfig, Model, StreamOrder, TEstMode,
};
use streamcount::oracle::OracleSpec;
use streamcount::rng::DEFAULT_SEED;
use streamcount::Graph;

#[derive(Parser)]
#[command(name = "streamcount", version, about = "Streaming triangle and four-cycle estimators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an estimator sweep and write one CSV row per trial.
    Run(RunArgs),
    /// Print exact counts for an edge list.
    Exact {
        #[arg(long)]
        input: PathBuf,
        /// Also count four-cycles.
        #[arg(long)]
        fourcycle: bool,
    },
    /// Sample a Chung-Lu power-law graph.
    GenClv {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = ClvConfig::DEFAULT_EXPONENT)]
        exponent: f64,
        #[arg(long, default_value_t = ClvConfig::DEFAULT_AVG_DEGREE)]
        avg_degree: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    model: String,
    /// Edge list; may be repeated.
    #[arg(long)]
    input: Vec<PathBuf>,
    /// Directory of `graph_*` files, processed in name order.
    #[arg(long)]
    snapshot_dir: Option<PathBuf>,
    #[arg(long, default_value = "none")]
    oracle: String,
    /// Space fractions in (0, 1].
    #[arg(long, value_delimiter = ',', default_value = "1")]
    space: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// `exact`, a number, or `lb:FACTOR`.
    #[arg(long, default_value = "exact")]
    t_est: String,
    /// `random` or `timestamp`.
    #[arg(long, default_value = "random")]
    order: String,
    #[arg(long)]
    workers: Option<usize>,
    /// Write zero wall times so output is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: PathBuf,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Failure { code: 1, message: format!("{}: {err}", path.display()) }
    }
}

impl From<streamcount::Error> for Failure {
    fn from(err: streamcount::Error) -> Self {
        let code = if err.is_parse_error() {
            3
        } else if err.is_config_error() {
            2
        } else {
            1
        };
        Failure { code, message: err.to_string() }
    }
}

type CliResult<T> = Result<T, Failure>;

fn load(path: &Path, labels: &mut Labels) -> CliResult<Graph> {
    let file = File::open(path).map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })?;
    let (graph, report) = load_edge_list_with(BufReader::new(file), EdgeListFormat::Auto, labels)
        .map_err(|e| Failure { message: format!("{}: {e}", path.display()), ..e.into() })?;
    if report.duplicates + report.self_loops > 0 {
        warn!(
            "{}: dropped {} duplicate edges and {} self-loops",
            path.display(),
            report.duplicates,
            report.self_loops
        );
    }
    Ok(graph)
}

fn dataset_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

fn run(args: RunArgs) -> CliResult<()> {
    let model: Model = args.model.parse()?;
    let oracle: OracleSpec = args.oracle.parse()?;
    let t_est: TEstMode = args.t_est.parse()?;
    let order: StreamOrder = args.order.parse()?;
    if args.input.is_empty() && args.snapshot_dir.is_none() {
        return Err(Failure::config("give at least one --input or a --snapshot-dir"));
    }

    let mut labels = Labels::new();
    let mut datasets = Vec::new();
    let mut paths = Vec::new();
    if let Some(dir) = &args.snapshot_dir {
        for (path, graph) in load_snapshot_dir(dir, EdgeListFormat::Auto, &mut labels)? {
            datasets.push(Dataset::new(dataset_name(&path), graph));
            paths.push(path);
        }
    }
    for path in &args.input {
        datasets.push(Dataset::new(dataset_name(path), load(path, &mut labels)?));
        paths.push(path.clone());
    }

    let training = match &oracle {
        OracleSpec::Snapshot { path, .. } => match paths.iter().position(|p| same_file(p, path)) {
            Some(i) => Some(datasets[i].graph.clone()),
            None => Some(load(path, &mut labels)?),
        },
        _ => None,
    };

    let config = ExperimentConfig {
        space: args.space,
        trials: args.trials,
        seed: args.seed,
        epsilon: args.epsilon,
        t_est,
        order,
        workers: args.workers,
        timing: !args.no_timing,
        ..ExperimentConfig::new(model, oracle)
    };
    let result = run_experiment(&config, &datasets, training.as_ref())?;
    for s in &result.summaries {
        info!(
            "{} space={} median_error={:.4} std={:.4} median_peak={}",
            s.dataset, s.space_fraction, s.median_error, s.std_error, s.median_peak
        );
    }

    let file = File::create(&args.out).map_err(|e| Failure::io(&args.out, e))?;
    let mut sink = BufWriter::new(file);
    emit_csv(&result.records, &mut sink).map_err(|e| match e {
        streamcount::Error::Io(e) => Failure::io(&args.out, e),
        e => e.into(),
    })?;
    sink.flush().map_err(|e| Failure::io(&args.out, e))?;
    Ok(())
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

fn exact(input: &Path, fourcycle: bool) -> CliResult<()> {
    let g = load(input, &mut Labels::new())?;
    println!("vertices {}", g.n());
    println!("edges {}", g.m());
    println!("triangles {}", exact_triangle_count(&g));
    if fourcycle {
        println!("four_cycles {}", exact_four_cycle_count(&g));
    }
    Ok(())
}

fn gen_clv(config: ClvConfig, seed: u64, out: &Path) -> CliResult<()> {
    let clv = generate_clv(config, seed)?;
    let write = || -> std::io::Result<()> {
        let mut w = BufWriter::new(File::create(out)?);
        writeln!(w, "# clv n={} exponent={} seed={}", config.n, config.exponent, seed)?;
        for e in clv.graph.edges() {
            writeln!(w, "{} {}", e.lo(), e.hi())?;
        }
        w.flush()
    };
    write().map_err(|e| Failure::io(out, e))?;
    info!("wrote {} edges to {}", clv.graph.m(), out.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Exact { input, fourcycle } => exact(&input, fourcycle),
        Command::GenClv { n, seed, exponent, avg_degree, out } => {
            gen_clv(ClvConfig { n, exponent, avg_degree }, seed, &out)
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
