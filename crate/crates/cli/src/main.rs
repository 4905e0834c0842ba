//! `qslforge`: gate analysis, optimal protocol synthesis, bound verification,
//! randomized sweeps and eigenvalue trajectory export.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Failure;

#[derive(Parser)]
#[command(name = "qslforge", version, about = "Minimum energetic cost of unitary gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenphases, covering arc and minimum cost of a gate.
    Analyze(AnalyzeArgs),
    /// Build the minimum-cost Hamiltonian schedule for a gate.
    Synthesize(SynthesizeArgs),
    /// Check a schedule against a gate and evaluate every gate bound.
    Verify(VerifyArgs),
    /// Randomized audit of all bounds.
    Sweep(SweepArgs),
    /// Export instantaneous eigenvalues of a schedule as CSV.
    Trajectories(TrajectoriesArgs),
}

#[derive(Args)]
struct GateSource {
    /// Registry gate: I, X, Y, Z, H, S, T, RX, RY, RZ, CNOT, CZ, SWAP, TOFFOLI.
    #[arg(long, conflicts_with = "gate", required_unless_present = "gate")]
    named: Option<String>,
    /// Parameters of a named gate, e.g. `--params 0.5` for RX.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<f64>,
    /// Gate JSON file.
    #[arg(long)]
    gate: Option<PathBuf>,
    /// Project a nearly unitary gate (within 10x tolerance) onto the closest unitary.
    #[arg(long)]
    project: bool,
    #[arg(long, default_value_t = qslforge::tolerance::UNITARITY)]
    unitarity_tol: f64,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: GateSource,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthesizeArgs {
    #[command(flatten)]
    source: GateSource,
    /// Protocol duration.
    #[arg(long)]
    tau: f64,
    /// Time profile `name:M` with name in {constant, triangular, sin2, bang}.
    #[arg(long)]
    shape: Option<String>,
    /// Reproduce the gate including its global phase.
    #[arg(long)]
    exact_phase: bool,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Schedule JSON destination; without it the schedule is printed.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Metadata JSON destination.
    #[arg(long)]
    meta_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Schedule JSON file.
    #[arg(long)]
    schedule: PathBuf,
    #[command(flatten)]
    source: GateSource,
    /// Norm orders for the Lebesgue and Schatten bounds.
    #[arg(long, value_delimiter = ',', value_parser = output::parse_p, default_value = "1,2,inf")]
    p: Vec<f64>,
    /// Also check the Schatten bound, which needs the exact gate.
    #[arg(long)]
    exact_phase: bool,
    /// Report costs for the schedule with every ground energy shifted to zero.
    #[arg(long)]
    shift_ground: bool,
    #[arg(long, default_value_t = qslforge::tolerance::ALLOWED_PROTOCOL)]
    fidelity_threshold: f64,
    #[arg(long, default_value_t = qslforge::tolerance::HERMITICITY)]
    hermiticity_tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,4")]
    dims: Vec<usize>,
    #[arg(long, env = "QSLFORGE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    max_segments: usize,
    /// Bound families to audit (default: all).
    #[arg(long, value_delimiter = ',')]
    bounds: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrajectoriesArgs {
    #[arg(long)]
    schedule: PathBuf,
    /// Grid intervals per segment.
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[arg(long, default_value_t = qslforge::tolerance::HERMITICITY)]
    hermiticity_tol: f64,
    /// CSV destination; without it the CSV is printed.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Synthesize(args) => commands::synthesize(args),
        Command::Verify(args) => commands::verify(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Trajectories(args) => commands::trajectories(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            if !message.is_empty() {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}
