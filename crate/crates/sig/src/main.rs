//! Thin command-line front end over the library: signature computation
//! from CSV, shuffle products, moment-recovery functionals, and the two
//! seeded experiments. Everything here parses arguments, calls one
//! library function, and serializes the result.

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use sig::experiments::{
    run_classification_experiment, run_correlation_experiment, write_samples_csv,
    ExperimentConfig, SampleRow,
};
use sig::moments::{
    covariance_functional, power_sum_functional, rewrite_in_class, third_moment_functional,
    FunctionalReport,
};
use sig::stream::{stream_from_csv, PiecewiseLinearPath, StreamMode};
use sig::word::Word;
use sig::WordCombination;
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "sig",
    about = "Truncated path signatures, shuffle products, moment functionals, and seeded experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Each CSV row is one increment.
    Increments,
    /// CSV rows are sampled levels; consecutive differences are the increments.
    Levels,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the truncated signature of a stream read from CSV.
    Compute {
        /// CSV file with one row per time index and one column per coordinate.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Truncation depth of the signature.
        #[arg(long)]
        depth: usize,
        /// Sign the piecewise-linear path through the sampled points
        /// directly instead of the lead-lag embedding.
        #[arg(long)]
        raw_path: bool,
        /// Output JSON path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the shuffle product of two words as a word combination.
    Shuffle {
        /// First word, e.g. "1,2".
        left: String,
        /// Second word, e.g. "2".
        right: String,
    },
    /// Construct a certified moment-recovery functional.
    Moment {
        #[command(subcommand)]
        which: MomentCommand,
    },
    /// Rewrite a word functional as a combination of same-length words
    /// ending in a chosen letter, valid on lead-lag signatures.
    Rewrite {
        /// Word over the letters {1, 2}, e.g. "2,1".
        #[arg(long)]
        word: String,
        /// Class letter the rewritten words must end with.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        end: u8,
    },
    /// Run a seeded experiment and write its report.
    Experiment {
        #[command(subcommand)]
        which: ExperimentCommand,
    },
}

#[derive(Subcommand)]
enum MomentCommand {
    /// Sum of p-th powers of a one-dimensional stream's increments.
    Power {
        #[arg(long)]
        p: usize,
        /// Last letter (1 or 2) of every word in the support.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        class: u8,
    },
    /// Sum over steps of the product of two increment coordinates.
    Covariance {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Stream dimension.
        #[arg(long)]
        dim: usize,
    },
    /// Sum over steps of the product of three distinct increment coordinates.
    Third {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        /// Stream dimension.
        #[arg(long)]
        dim: usize,
    },
}

#[derive(clap::Args)]
struct ExperimentArgs {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long)]
    length: Option<usize>,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    train_frac: Option<f64>,
    /// Report JSON path; per-sample rows go to the same stem with a
    /// `.samples.csv` extension.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Regress the correlation of a 2-dimensional Gaussian walk on its
    /// signature features, against the empirical-correlation benchmark.
    Correlation {
        #[command(flatten)]
        common: ExperimentArgs,
        /// Per-step volatility of the simulated walks.
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Draw correlations from [-1, 1] instead of (0, 1].
        #[arg(long)]
        full_rho_range: bool,
        /// Pin every sample's correlation to this value.
        #[arg(long)]
        fixed_rho: Option<f64>,
    },
    /// Classify 3-dimensional random walks by whether the third
    /// coordinate is an independent Rademacher or the product of the
    /// first two.
    Classify {
        #[command(flatten)]
        common: ExperimentArgs,
    },
}

/// Wire format for functional-constructing subcommands.
#[derive(Serialize)]
struct FunctionalOutput {
    functional: serde_json::Value,
    report: FunctionalReport,
}

fn print_functional(combination: &WordCombination, report: FunctionalReport) -> anyhow::Result<()> {
    let out = FunctionalOutput {
        functional: combination.to_json(),
        report,
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn samples_path(report_path: &Path) -> PathBuf {
    report_path.with_extension("samples.csv")
}

fn write_experiment<R: Serialize>(
    out: &Path,
    report: &R,
    rows: &[SampleRow],
) -> anyhow::Result<PathBuf> {
    let json = serde_json::to_string_pretty(report)?;
    std::fs::write(out, json + "\n").with_context(|| format!("writing {}", out.display()))?;
    let csv_path = samples_path(out);
    write_samples_csv(&csv_path, rows)?;
    Ok(csv_path)
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute {
            input,
            mode,
            depth,
            raw_path,
            out,
        } => {
            let stream = stream_from_csv(
                &input,
                match mode {
                    Mode::Increments => StreamMode::Increments,
                    Mode::Levels => StreamMode::Levels,
                },
            )
            .with_context(|| format!("reading {}", input.display()))?;
            let signature = if raw_path {
                PiecewiseLinearPath::new(stream.dimension(), stream.partial_sums())?
                    .signature(depth)
            } else {
                stream.signature(depth)
            };
            let json = serde_json::to_string_pretty(&signature.to_json())?;
            std::fs::write(&out, json + "\n")
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "signature of {} increments (dimension {}, alphabet {}, depth {}) -> {}",
                stream.len(),
                stream.dimension(),
                signature.alphabet_size(),
                depth,
                out.display()
            );
        }
        Command::Shuffle { left, right } => {
            let left: Word = left.parse()?;
            let right: Word = right.parse()?;
            let product = sig::shuffle(&left, &right);
            println!("{}", serde_json::to_string_pretty(&product.to_json())?);
        }
        Command::Moment { which } => match which {
            MomentCommand::Power { p, class } => {
                let (combination, report) = power_sum_functional(p, class)?;
                print_functional(&combination, report)?;
            }
            MomentCommand::Covariance { i, j, dim } => {
                let (combination, report) = covariance_functional(i, j, dim)?;
                print_functional(&combination, report)?;
            }
            MomentCommand::Third { i, j, k, dim } => {
                let (combination, report) = third_moment_functional(i, j, k, dim)?;
                print_functional(&combination, report)?;
            }
        },
        Command::Rewrite { word, end } => {
            let word: Word = word.parse()?;
            let (combination, report) = rewrite_in_class(&word, end)?;
            print_functional(&combination, report)?;
        }
        Command::Experiment { which } => match which {
            ExperimentCommand::Correlation {
                common,
                sigma,
                full_rho_range,
                fixed_rho,
            } => {
                let mut config = ExperimentConfig::correlation_defaults(common.seed);
                config.sample_count = common.samples;
                config.stream_length = common.length.unwrap_or(config.stream_length);
                config.truncation_depth = common.depth;
                config.sigma = sigma;
                config.train_fraction = common.train_frac.unwrap_or(config.train_fraction);
                config.full_rho_range = full_rho_range;
                config.fixed_rho = fixed_rho;
                let (report, rows) = run_correlation_experiment(&config)?;
                let csv_path = write_experiment(&common.out, &report, &rows)?;
                println!(
                    "correlation experiment: test MSE {:.6} (benchmark {:.6}, fallback {}) -> {}, samples -> {}",
                    report.regression_test_mse,
                    report.benchmark_test_mse,
                    report.ols_fallback,
                    common.out.display(),
                    csv_path.display()
                );
            }
            ExperimentCommand::Classify { common } => {
                let mut config = ExperimentConfig::classification_defaults(common.seed);
                config.sample_count = common.samples;
                config.stream_length = common.length.unwrap_or(config.stream_length);
                config.truncation_depth = common.depth;
                config.train_fraction = common.train_frac.unwrap_or(config.train_fraction);
                let (report, rows) = run_classification_experiment(&config)?;
                let csv_path = write_experiment(&common.out, &report, &rows)?;
                println!(
                    "classification experiment: test error {:.4} over {} samples -> {}, samples -> {}",
                    report.test_error_rate,
                    report.test_samples,
                    common.out.display(),
                    csv_path.display()
                );
            }
        },
    }
    Ok(())
}
