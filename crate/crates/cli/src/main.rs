//! `pbc-dbscan`: cluster, generate, verify and benchmark point clouds in
//! domains with open or periodic boundaries.
//!
//! Exit status: 0 on success, 1 when `verify` finds a mismatch, 2 on usage or
//! input errors.

mod boundary;
mod commands;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::boundary::BoundaryFlags;

#[derive(Debug, Parser)]
#[command(name = "pbc-dbscan", version, about = "DBSCAN for open and periodic domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cluster a CSV point file and write one label per row.
    Cluster(ClusterArgs),
    /// Write a synthetic dataset from a preset or a blob file.
    Generate(GenerateArgs),
    /// Compare the periodic pipeline against the brute-force reference.
    Verify(VerifyArgs),
    /// Time the periodic pipeline on uniform data of increasing size.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
struct BoundaryArgs {
    /// Boundary of the next dimension: `open` or `periodic:LO:HI`. Repeat once per dimension.
    #[arg(long = "dim", value_name = "SPEC", allow_hyphen_values = true)]
    dims: Vec<String>,
    /// One boundary spec applied to every dimension.
    #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
    boundary: Option<String>,
    /// Shorthand for `--boundary periodic:LO:HI`.
    #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
    all_periodic: Option<String>,
}

impl From<BoundaryArgs> for BoundaryFlags {
    fn from(a: BoundaryArgs) -> Self {
        BoundaryFlags {
            dims: a.dims,
            boundary: a.boundary,
            all_periodic: a.all_periodic,
        }
    }
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Headerless CSV, one point per row.
    #[arg(short, long)]
    input: PathBuf,
    /// Label file; `-` or omitted writes labels to stdout and the summary to stderr.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(short, long, allow_hyphen_values = true)]
    eps: f64,
    #[arg(short, long, default_value_t = 5)]
    min_points: usize,
    #[command(flatten)]
    boundaries: BoundaryArgs,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Bundled preset name.
    #[arg(long, conflicts_with = "blobs")]
    preset: Option<String>,
    /// JSON file with `{"blobs": [{"center": [..], "sigma": [..], "count": n}, ..]}`;
    /// the domain comes from the boundary flags.
    #[arg(long)]
    blobs: Option<PathBuf>,
    /// Random seed; defaults to the preset's own seed (or 0 for blob files).
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// List presets and exit.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    boundaries: BoundaryArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Point file to verify; omit when using `--sweep`.
    #[arg(short, long, required_unless_present = "sweep")]
    input: Option<PathBuf>,
    #[arg(short, long, allow_hyphen_values = true, required_unless_present = "sweep")]
    eps: Option<f64>,
    #[arg(short, long, default_value_t = 5)]
    min_points: usize,
    /// Run the reference with a different epsilon (produces a deliberate mismatch).
    #[arg(long, allow_hyphen_values = true)]
    oracle_eps: Option<f64>,
    /// Verify this many randomized instances instead of a file.
    #[arg(long, conflicts_with = "input")]
    sweep: Option<u64>,
    /// First seed of the sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    boundaries: BoundaryArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Ascending comma-separated sizes.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "10000,30000,100000,300000,1000000"
    )]
    sizes: Vec<usize>,
    /// Repetitions per size; the median time is reported.
    #[arg(short, long, default_value_t = 3)]
    repetitions: usize,
    #[arg(short, long, default_value_t = 0.01)]
    eps: f64,
    #[arg(short, long, default_value_t = 5)]
    min_points: usize,
    /// Dimensions of the periodic unit box.
    #[arg(long, default_value_t = 3)]
    dims: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Table CSV; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cluster(args) => commands::cluster(args),
        Command::Generate(args) => commands::generate(args),
        Command::Verify(args) => commands::verify(args),
        Command::Bench(args) => commands::bench(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
