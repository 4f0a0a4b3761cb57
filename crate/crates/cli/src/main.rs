use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use legibench::commands::{cmd_baseline, cmd_benchmark, cmd_score, cmd_synth};
use legibench::HarnessError;

#[derive(Parser)]
#[command(
    name = "legibench",
    version,
    about = "Score reaching trajectories for legibility and benchmark the scores against observer guesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every (trajectory, fraction, viewpoint) item with the enabled frameworks
    Score {
        /// Directory holding scenes.json, trajectories.json, and optional
        /// viewpoints.json and responses.csv
        #[arg(long)]
        data_dir: PathBuf,
        /// JSON config selecting frameworks and hyperparameters
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated framework names overriding the enabled set
        #[arg(long)]
        frameworks: Option<String>,
        /// Output directory for scores.csv
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate per-item empirical legibility with bootstrap intervals
    Baseline {
        #[arg(long)]
        data_dir: PathBuf,
        /// Output directory for baseline.csv
        #[arg(long)]
        out: PathBuf,
        /// Bootstrap resample count
        #[arg(long, default_value_t = 2000)]
        bootstrap_samples: usize,
        /// Confidence level of the percentile interval
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Full pipeline: scores, baseline, correlation tables, JSON report
    Benchmark {
        #[arg(long)]
        data_dir: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        frameworks: Option<String>,
        /// Output directory for the five report files
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 2000)]
        bootstrap_samples: usize,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Generate a synthetic dataset from a JSON recipe
    Synth {
        /// Recipe file describing goals, trajectories, and the observer
        #[arg(long)]
        spec: PathBuf,
        /// Output directory for the dataset files
        #[arg(long)]
        out: PathBuf,
        /// Overrides the recipe's master seed
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Score { data_dir, config, frameworks, out } => {
            let outcome = cmd_score(&data_dir, config.as_deref(), frameworks.as_deref(), &out)?;
            println!(
                "wrote {} ({} scores, {} exclusions)",
                out.join("scores.csv").display(),
                outcome.records.len(),
                outcome.exclusions.len()
            );
        }
        Command::Baseline { data_dir, out, bootstrap_samples, level, seed } => {
            let estimates = cmd_baseline(&data_dir, &out, bootstrap_samples, level, seed)?;
            println!("wrote {} ({} items)", out.join("baseline.csv").display(), estimates.len());
        }
        Command::Benchmark { data_dir, config, frameworks, out, bootstrap_samples, level, seed } => {
            let report = cmd_benchmark(
                &data_dir,
                config.as_deref(),
                frameworks.as_deref(),
                &out,
                bootstrap_samples,
                level,
                seed,
            )?;
            println!(
                "wrote 5 report files to {} ({} scores, {} exclusions, {} baseline items)",
                out.display(),
                report.scores.len(),
                report.exclusions.len(),
                report.baseline.len()
            );
        }
        Command::Synth { spec, out, seed } => {
            let dataset = cmd_synth(&spec, &out, seed)?;
            println!(
                "wrote dataset to {} ({} trajectories, {} viewpoints, {} responses)",
                out.display(),
                dataset.trajectories().len(),
                dataset.viewpoints().len(),
                dataset.responses().len()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::FAILURE
        }
    }
}
