//! `galinv`: special-Galilean invariants of space-time curves from the
//! command line.
//!
//! Exit codes: 0 success or equivalent, 1 not equivalent, 2 bad arguments or
//! input, 3 degenerate curve, 4 signatures do not overlap, 5 no group element
//! relates the curves.

// `!(x > y)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galinv_core::invariants::TOL_FD;
use galinv_core::Error;

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "galinv",
    version,
    about = "Special-Galilean differential invariants of space-time curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a built-in curve family to CSV
    Generate(GenerateArgs),
    /// Compute the signature (w1, w2, w3) of a curve
    Invariants(InvariantsArgs),
    /// Decide whether two sampled curves are related by a group element
    Equiv(EquivArgs),
    /// Recover the group element carrying curve A onto curve B
    Recover(RecoverArgs),
    /// Print the pullback matrix at one point of a curve
    Pullback(PullbackArgs),
    /// Integrate a curve with constant invariants
    Reconstruct(ReconstructArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    /// Helix of radius a and pitch 2πb, traversed at unit speed
    Helix,
    /// Straight line (degenerate)
    Line,
    /// Twisted cubic (t, t², t³)
    Cubic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Fd,
    Analytic,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(value_enum, default_value = "helix")]
    family: Family,
    /// Helix radius
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Helix pitch over 2π
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Number of samples
    #[arg(long, default_value_t = 4001)]
    n: usize,
    #[arg(long, default_value_t = 0.005)]
    dt: f64,
    /// Parameter of the first sample
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    /// Apply the random group element drawn from this seed
    #[arg(long)]
    transform_seed: Option<u64>,
    /// Where to write the applied element [default: OUTPUT with extension transform.json]
    #[arg(long, value_name = "FILE")]
    transform_out: Option<PathBuf>,
    /// Output CSV [default: stdout]
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    /// Curve CSV (required for --method fd)
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "fd")]
    method: MethodArg,
    /// Tabulate against spatial arc length instead of time
    #[arg(long)]
    arclength: bool,
    /// Node count for arc-length resampling or the analytic grid
    #[arg(long, value_parser = clap::value_parser!(u64).range(11..))]
    m: Option<u64>,
    /// Analytic family
    #[arg(long, value_enum, default_value = "helix")]
    family: Family,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Analytic parameter range start
    #[arg(long, default_value_t = 0.0)]
    start: f64,
    /// Analytic parameter range length
    #[arg(long, default_value_t = 10.0)]
    length: f64,
    /// Also write a plot table `s,w1,w2,w3`
    #[arg(long, value_name = "FILE")]
    plot: Option<PathBuf>,
    /// Output JSON [default: stdout]
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EquivArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, env = "GALINV_TOL", default_value_t = TOL_FD)]
    tol: f64,
    /// Compare signatures tabulated against spatial arc length
    #[arg(long)]
    arclength: bool,
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RecoverArgs {
    a: PathBuf,
    b: PathBuf,
    /// Sample index at which the frames are compared [default: middle]
    #[arg(long)]
    at: Option<usize>,
    /// Largest accepted frame residual
    #[arg(long, env = "GALINV_TOL", default_value_t = TOL_FD)]
    tol: f64,
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PullbackArgs {
    input: PathBuf,
    /// Position on the signature grid (time, or arc length with --arclength)
    #[arg(long, default_value_t = 0.0)]
    at: f64,
    #[arg(long)]
    arclength: bool,
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    #[arg(long)]
    w1: f64,
    #[arg(long)]
    w2: f64,
    /// Arc length to integrate over
    #[arg(long, default_value_t = 10.0)]
    length: f64,
    /// Integration step (at most 1e-2)
    #[arg(long, default_value_t = 1e-3)]
    h: f64,
    /// Output curve CSV
    #[arg(short, long, value_name = "FILE")]
    output: PathBuf,
    /// Sidecar JSON [default: OUTPUT with extension json]
    #[arg(long, value_name = "FILE")]
    sidecar: Option<PathBuf>,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::DegenerateJet { .. } | Error::Regularity { .. }) => 3,
        Some(Error::NoOverlap { .. }) => 4,
        Some(Error::NotInGroup { .. }) => 5,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => commands::generate(&args),
        Command::Invariants(args) => commands::invariants(&args),
        Command::Equiv(args) => commands::equiv(&args),
        Command::Recover(args) => commands::recover(&args),
        Command::Pullback(args) => commands::pullback(&args),
        Command::Reconstruct(args) => commands::reconstruct(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let code = exit_code(&err);
            if code != 2 {
                // domain failures also go to stdout as JSON for scripts
                if let Some(e) = err.downcast_ref::<Error>() {
                    print!("{}", commands::error_json(e));
                }
            }
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}
