#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod error;
mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const FILE_FORMATS: &str = "\
Input files:
  Cayley table (--group cayley:PATH): first line the order m, then m lines of
    m whitespace-separated zero-based indices; row a, column b holds a*b.
  Group state (--psi PATH): one line `re im` per group element, in index order.
  Atoms (--nu atoms:PATH): one line `angle weight` per atom; weights sum to 1.
  Lines starting with # are ignored in all three.

Exit codes: 0 success, 1 verification failure, 2 invalid input.";

#[derive(Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Cut-off bounds for random walks on free unitary quantum groups and free wreath products",
    after_help = FILE_FORMATS
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Upper and lower distance bounds along a grid of steps.
    Profile(ProfileArgs),
    /// Everything known at a single step, as JSON.
    Bound(BoundArgs),
    /// Thresholds on N and the nominal cut-off, as JSON.
    Thresholds(ThresholdArgs),
    /// Circle moments of a phase law and λ-moments of the Porod law, as JSON.
    Moments(MomentArgs),
    /// Grid checks of the analytic inequalities.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Unitary,
    UnitaryEval,
    Mixture,
    Wreath,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct WalkArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Matrix size N.
    #[arg(long = "N")]
    n: u64,
    /// Parameter τ of the state φ_{N-τ} (unitary and wreath).
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<f64>,
    /// Rotation angle θ of the evaluation state (unitary-eval).
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// cyclic:s, dihedral:n or cayley:PATH (wreath).
    #[arg(long)]
    group: Option<String>,
    /// trivial, haar, character:j or PATH (wreath).
    #[arg(long, default_value = "trivial")]
    psi: String,
    /// haar, delta:θ, atoms:PATH or porod (unitary).
    #[arg(long)]
    nu: Option<String>,
    /// Gauss–Legendre nodes for the Porod mixture (8 per panel).
    #[arg(long, default_value_t = 16384)]
    quad_points: usize,
    /// Largest number of blocks (or group letters) kept explicitly.
    #[arg(long)]
    max_p: Option<u32>,
    /// Largest total block length (or index) kept explicitly.
    #[arg(long)]
    max_total: Option<u32>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct KGrid {
    /// A single step count.
    #[arg(long)]
    k: Option<f64>,
    /// A single offset: k = N ln N / r + c N.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// Steps a:b:step.
    #[arg(long)]
    k_range: Option<String>,
    /// Offsets a:b:step.
    #[arg(long, allow_hyphen_values = true)]
    c_range: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct KPoint {
    #[arg(long)]
    k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    walk: WalkArgs,
    #[command(flatten)]
    grid: KGrid,
    /// Round every k to the nearest integer.
    #[arg(long)]
    round_k: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads; the output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    walk: WalkArgs,
    #[command(flatten)]
    point: KPoint,
    #[arg(long)]
    round_k: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    tau: f64,
    /// Size used for the reported nominal cut-off.
    #[arg(long = "N", default_value_t = 100)]
    n: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MomentArgs {
    /// Porod parameter for the λ-moments (and for --nu porod).
    #[arg(long = "N")]
    n: Option<u64>,
    /// Phase law whose moments m_ε are reported.
    #[arg(long)]
    nu: Option<String>,
    #[arg(long, default_value_t = 3)]
    eps_max: i64,
    #[arg(long, default_value_t = 6)]
    l_max: u64,
    #[arg(long, default_value_t = 16384)]
    quad_points: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`. May be repeated.
    #[arg(long, default_value = "all")]
    suite: Vec<String>,
    /// File receiving the full report.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Profile(a) => commands::profile(a),
        Command::Bound(a) => commands::bound(a),
        Command::Thresholds(a) => commands::thresholds(a),
        Command::Moments(a) => commands::moments(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qwalk: {e}");
            ExitCode::from(2)
        }
    }
}
