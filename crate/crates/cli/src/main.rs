//! `bicirc`: sample, count, benchmark and verify bicircular matroid bases.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bicircular::Error;

#[derive(Parser, Debug)]
#[command(name = "bicirc", version, about = "Bicycle-popping sampler and basis counter")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw bases (or Gibbs arrow configurations) and print one record per sample.
    Sample(SampleArgs),
    /// Count bases exactly or approximately.
    Count(CountArgs),
    /// Run seeded samples and summarise resample counts.
    Bench(BenchArgs),
    /// Statistical self-check against the exact enumeration oracles.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Edge-list file: one "u v" pair per line, '#' starts a comment line.
    #[arg(long)]
    pub graph: PathBuf,
    /// Master seed; falls back to BICIRC_SEED, then to OS entropy.
    #[arg(long, env = "BICIRC_SEED")]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for independent samples.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub parallel: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Telescope,
    Anneal,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1)]
    pub samples: u64,
    /// 2-cycle retention weight, in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    pub gamma2: f64,
    /// Long-cycle retention weight, in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Method::Anneal)]
    pub method: Method,
    /// Relative error, in (0, 1).
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    /// Report the median of this many independent runs.
    #[arg(long, default_value_t = 1)]
    pub median_of: usize,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 20_000)]
    pub trials: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Samples per distribution check.
    #[arg(long, default_value_t = 150_000)]
    pub samples: u64,
    /// Runs for the resample-mean and order-invariance checks.
    #[arg(long, default_value_t = 20_000)]
    pub trials: u64,
    /// Replace the basis sampler with a sign-blind stub (negative control).
    #[arg(long, hide = true)]
    pub biased_stub: bool,
}

/// A failure together with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(a) => commands::sample(&a),
        Command::Count(a) => commands::count(&a),
        Command::Bench(a) => commands::bench(&a),
        Command::Verify(a) => commands::verify(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("bicirc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
