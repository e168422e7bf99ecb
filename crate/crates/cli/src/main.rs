//! `disc`: discriminantal arrangements, their circuit-support metric and
//! random overlap experiments from the command line.

mod commands;
mod digest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::CliError;

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (format schema 1)");

#[derive(Parser, Debug)]
#[command(name = "disc", version = VERSION, about = "Exact lattices, support metrics and overlap statistics for discriminantal arrangements")]
struct Cli {
    /// Worker threads (default: all cores). Outputs do not depend on it.
    #[arg(long, global = true, value_name = "T")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Johnson graph on the circuits of B(n,k).
    Johnson(JohnsonArgs),
    /// Build the intersection lattice of B(n,k).
    Lattice(LatticeArgs),
    /// Check the support-metric claims on FREE or GEOMETRIC mode.
    Verify(VerifyArgs),
    /// Count geodesic toggle sequences between two supports.
    Geodesics(GeodesicsArgs),
    /// Check that an interval [X, Y] is a convex cube.
    Interval(IntervalArgs),
    /// Sample overlaps of two uniform r-subsets.
    Sample(SampleArgs),
    /// Exact and empirical intersection probabilities for r = ⌊N^e⌋.
    Threshold(ThresholdArgs),
    /// Total-variation distance to the Poisson law on a grid.
    Tv(TvArgs),
    /// Digest of verify reports and threshold/tv/sample CSV files.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct JohnsonArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Print the full statistics record as JSON.
    #[arg(long)]
    stats: bool,
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Free,
    Geometric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphArg {
    Hasse,
    Toggle,
}

/// Arrangement and mode selection shared by verify, geodesics and interval.
#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Cover graph: lattice covers (hasse) or one-circuit toggles (toggle).
    #[arg(long, value_enum, default_value = "hasse")]
    graph: GraphArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// FREE mode circuit count; defaults to C(n, k+1).
    #[arg(long = "N", value_name = "N")]
    width: Option<usize>,
    /// Comma-separated: cover,distance,partialcube,median,geodesic,interval or all.
    #[arg(long, default_value = "all")]
    claims: String,
    #[arg(long, value_name = "FILE")]
    report: PathBuf,
    /// Also build the lattice for this seed and report whether the labelled
    /// lattices coincide.
    #[arg(long, value_name = "S")]
    compare_seed: Option<u64>,
}

#[derive(Args, Debug)]
struct GeodesicsArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Start support as a bitstring, index 0 leftmost.
    #[arg(long, value_name = "BITS")]
    from: String,
    #[arg(long, value_name = "BITS")]
    to: String,
    /// List every geodesic.
    #[arg(long)]
    list: bool,
    /// Write JSON here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IntervalArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_name = "BITS")]
    lo: String,
    #[arg(long, value_name = "BITS")]
    hi: String,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    /// Number of circuits; alternatively give --n and --k.
    #[arg(long = "N", value_name = "N")]
    circuits: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    r: u64,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_name = "FILE")]
    csv: PathBuf,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long = "N", value_name = "N")]
    circuits: u64,
    #[arg(long, default_value = "0.3,0.4,0.5,0.6,0.7")]
    exponents: String,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_name = "FILE")]
    csv: PathBuf,
}

#[derive(Args, Debug)]
struct TvArgs {
    #[arg(long, default_value = "100,1000,10000")]
    grid: String,
    #[arg(long, default_value = "0.3,0.4,0.45")]
    alpha: String,
    #[arg(long, value_name = "FILE")]
    csv: PathBuf,
}

#[derive(Args, Debug)]
struct ReportArgs {
    files: Vec<PathBuf>,
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    }
    match cli.command {
        Command::Johnson(a) => commands::johnson(&a),
        Command::Lattice(a) => commands::lattice(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Geodesics(a) => commands::geodesics(&a),
        Command::Interval(a) => commands::interval(&a),
        Command::Sample(a) => commands::sample(&a),
        Command::Threshold(a) => commands::threshold(&a),
        Command::Tv(a) => commands::tv(&a),
        Command::Report(a) => digest::report(&a.files),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_valid() {
        Cli::command().debug_assert();
    }

    #[test]
    fn version_names_the_format_schema() {
        assert!(VERSION.ends_with(&format!("(format schema {})", disc_core::FORMAT_SCHEMA_VERSION)));
    }
}
