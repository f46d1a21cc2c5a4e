//! Command-line harness for the bounded-degree graph toolkit: graph
//! generation, neighborhood statistics, partition/cut experiments, and
//! seeded tester runs.
//!
//! Exit codes: 0 on success, 2 when an experiment runs to completion but
//! violates a derived bound (or calibration finds no admissible profile),
//! 3 on input or usage errors.

mod basic;
mod experiments;
mod report;
mod testing;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] graph_core::GraphError),
    #[error(transparent)]
    Stats(#[from] neighborhood_stats::StatsError),
    #[error(transparent)]
    Minor(#[from] minor_engine::MinorError),
    #[error(transparent)]
    Hyperfinite(#[from] hyperfinite_engine::HyperfiniteError),
    #[error(transparent)]
    Tester(#[from] testers::TesterError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionMode {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TesterKind {
    Planarity,
    MinorFree,
    Hyperfinite,
}

#[derive(Parser)]
#[command(name = "harness", version, about = "Experiment harness for constant-query graph property testing")]
struct Cli {
    /// Base seed; trial t uses a stream derived from (seed, t).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel trials (0 = automatic).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write machine-readable output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file with defaults for the test command.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a spec string and save it as an edge list.
    Generate {
        /// Generator spec, e.g. "grid(50,50)" or "random_planar(2000,4)".
        spec: String,
    },
    /// Exact neighborhood-type frequency vector of a graph.
    Stats {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        radius: usize,
    },
    /// Exact neighborhood-statistics distance between two graphs.
    Rho {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1)]
        radius: usize,
    },
    /// Partition a graph into small components and report the cut.
    Partition {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = PartitionMode::Greedy)]
        mode: PartitionMode,
    },
    /// Sample randomized local cuts and check the expected-size bound.
    CutExperiment {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Replay one graph's cut rule on another and compare cut densities.
    TransferExperiment {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Search tester parameters against labeled accept/reject corpora.
    Calibrate {
        #[arg(long)]
        accept_dir: PathBuf,
        #[arg(long)]
        reject_dir: PathBuf,
        /// Proximity parameters to calibrate, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.1")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        /// Output path for the frozen profile list (JSON).
        #[arg(long)]
        profiles_out: PathBuf,
    },
    /// Run seeded tester trials on a graph and report verdicts.
    Test {
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Generator spec alternative to --graph.
        #[arg(long)]
        spec: Option<String>,
        /// Seed for --spec generation (separate from trial seeds).
        #[arg(long)]
        gen_seed: Option<u64>,
        #[arg(long, value_enum)]
        tester: Option<TesterKind>,
        /// "v1" for the built-in frozen profile, or a JSON file path.
        #[arg(long)]
        profile: Option<String>,
        /// Forbidden patterns for the minor-free tester, comma separated.
        #[arg(long)]
        patterns: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        /// Re-declare the input under this degree bound before testing.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| HarnessError::Usage(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Generate { spec } => basic::cmd_generate(&spec, cli.seed, &cli.out),
        Command::Stats { graph, radius } => basic::cmd_stats(&graph, radius, &cli.out),
        Command::Rho { a, b, radius } => basic::cmd_rho(&a, &b, radius, &cli.out),
        Command::Partition { graph, k, mode } => basic::cmd_partition(&graph, k, mode),
        Command::CutExperiment { graph, k, eps, trials } => {
            experiments::cmd_cut_experiment(&graph, k, eps, trials, cli.seed, &cli.out)
        }
        Command::TransferExperiment { source, target, k, eps, trials } => {
            experiments::cmd_transfer_experiment(&source, &target, k, eps, trials, cli.seed, &cli.out)
        }
        Command::Calibrate { accept_dir, reject_dir, eps, trials, profiles_out } => {
            testing::cmd_calibrate(testing::CalibrateRun {
                accept_dir,
                reject_dir,
                eps,
                trials,
                seed: cli.seed,
                out: profiles_out,
            })
        }
        Command::Test {
            graph,
            spec,
            gen_seed,
            tester,
            profile,
            patterns,
            trials,
            degree_bound,
        } => {
            let defaults = match &cli.config {
                Some(path) => testing::ExperimentConfig::load(path)?,
                None => testing::ExperimentConfig::default(),
            };
            testing::cmd_test(testing::TestRun {
                graph: graph.or(defaults.graph),
                spec: spec.or(defaults.spec),
                gen_seed: gen_seed.or(defaults.gen_seed).unwrap_or(0),
                tester: tester.or(defaults.tester).unwrap_or(TesterKind::Planarity),
                profile: profile.or(defaults.profile).unwrap_or_else(|| "v1".into()),
                patterns: patterns.or(defaults.patterns).unwrap_or_else(|| "k5,k33".into()),
                trials: trials.or(defaults.trials).unwrap_or(100),
                degree_bound: degree_bound.or(defaults.degree_bound),
                seed: defaults.seed.map_or(cli.seed, |s| if cli.seed != 0 { cli.seed } else { s }),
                out: cli.out.or(defaults.out),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
