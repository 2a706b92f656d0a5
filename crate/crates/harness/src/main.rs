use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use streamboost_harness::config::{
    Algorithm, DataFormat, DataSource, ExperimentConfig, FeedModeCfg, LearnerKind,
};
use streamboost_harness::protocol::{run_experiment, run_lower_bound_sim, LowerBoundSim, SimKind};
use streamboost_harness::report::ExperimentReport;
use streamboost_harness::synth::{write_svmlight, BundledDataset};

/// Online boosting experiments over streaming weak learners.
#[derive(Parser)]
#[command(name = "streamboost", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a dataset file through shuffle, split, progressive validation,
    /// and held-out evaluation.
    Run(RunArgs),
    /// Run an adversarial coin-learner simulation on uniform random labels.
    Simulate(SimulateArgs),
    /// Write the bundled synthetic datasets as svmlight files.
    GenData(GenDataArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Boosting algorithm.
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// Weak learner driven by the booster.
    #[arg(long, value_enum)]
    weak_learner: LearnerKind,
    /// Number of weak learners.
    #[arg(long, default_value_t = 20)]
    num_learners: usize,
    /// Edge parameter; required by online-bbm, rejected by adaboost-ol.
    #[arg(long)]
    gamma: Option<f64>,
    /// Weighted or sampled feeds (default weighted).
    #[arg(long, value_enum)]
    feed_mode: Option<FeedModeCfg>,
    /// Seed for every random stream of the run.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dataset file.
    #[arg(long)]
    data: PathBuf,
    /// Dataset format.
    #[arg(long, value_enum, default_value = "svmlight")]
    format: DataFormat,
    /// Which CSV column holds the label (csv only).
    #[arg(long)]
    label_column: Option<usize>,
    /// Training fraction of the shuffled data.
    #[arg(long, default_value_t = 0.8)]
    split: f64,
    /// Checkpoint spacing for the progressive loss curve
    /// (default: every 1% of the training stream).
    #[arg(long)]
    checkpoint_interval: Option<usize>,
    /// Base step size of the linear weak learner.
    #[arg(long, default_value_t = streamboost_core::linear::DEFAULT_LEARNING_RATE)]
    learning_rate: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report_out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Coin construction: constant-edge or two-phase.
    #[arg(long, value_enum)]
    kind: SimKind,
    /// Boosting algorithm.
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// Edge of the constructed weak learners, in (0, 0.25).
    #[arg(long)]
    gamma: f64,
    /// Excess-loss budget S; sets the two-phase boundary floor(S / (4 gamma)).
    #[arg(long)]
    excess_loss: Option<f64>,
    #[arg(long, default_value_t = 20)]
    num_learners: usize,
    /// Length of the simulated stream.
    #[arg(long, default_value_t = 10_000)]
    rounds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    feed_mode: Option<FeedModeCfg>,
    #[arg(long)]
    checkpoint_interval: Option<usize>,
    /// Override the coins' correctness probability directly.
    #[arg(long)]
    coin_p: Option<f64>,
    /// Override the phase-1 length directly (two-phase only).
    #[arg(long)]
    coin_phase1: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report_out: Option<PathBuf>,
}

#[derive(Args)]
struct GenDataArgs {
    /// Directory the svmlight files are written into.
    #[arg(long)]
    out_dir: PathBuf,
    /// Generate just this dataset (default: all bundled ones).
    #[arg(long)]
    name: Option<String>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

fn emit_report(report: &ExperimentReport, out: Option<&PathBuf>) -> Result<()> {
    let json = report.to_json();
    match out {
        Some(path) => fs::write(path, &json)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => std::io::stdout().write_all(json.as_bytes())?,
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let config = ExperimentConfig {
        algorithm: args.algorithm,
        weak_learner: args.weak_learner,
        num_learners: args.num_learners,
        gamma: args.gamma,
        feed_mode: args.feed_mode,
        seed: args.seed,
        source: DataSource::File {
            path: args.data,
            format: args.format,
            label_column: args.label_column,
        },
        split: args.split,
        checkpoint_interval: args.checkpoint_interval,
        learning_rate: args.learning_rate,
        coin: None,
    };
    let report = run_experiment(&config)?;
    emit_report(&report, args.report_out.as_ref())
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let sim = LowerBoundSim {
        kind: args.kind,
        algorithm: args.algorithm,
        gamma: args.gamma,
        excess_loss: args.excess_loss,
        num_learners: args.num_learners,
        rounds: args.rounds,
        seed: args.seed,
        feed_mode: args.feed_mode,
        checkpoint_interval: args.checkpoint_interval,
        coin_p: args.coin_p,
        coin_phase1: args.coin_phase1,
    };
    let report = run_lower_bound_sim(&sim)?;
    emit_report(&report, args.report_out.as_ref())
}

fn gen_data(args: GenDataArgs) -> Result<()> {
    let datasets: Vec<BundledDataset> = match &args.name {
        Some(name) => vec![BundledDataset::from_name(name).with_context(|| {
            let known: Vec<&str> = BundledDataset::ALL.iter().map(|d| d.name()).collect();
            format!("unknown dataset {name:?}; known: {}", known.join(", "))
        })?],
        None => BundledDataset::ALL.to_vec(),
    };
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    for dataset in datasets {
        let path = args.out_dir.join(format!("{}.svm", dataset.name()));
        let examples = dataset.generate(args.seed);
        let file = fs::File::create(&path)
            .with_context(|| format!("creating {}", path.display()))?;
        write_svmlight(&examples, std::io::BufWriter::new(file))
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {} ({} examples)", path.display(), examples.len());
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Simulate(args) => simulate(args),
        Command::GenData(args) => gen_data(args),
    }
}
