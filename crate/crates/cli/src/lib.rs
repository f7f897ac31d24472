//! Command-line front end: spectrum tables, state sampling, ladder
//! application and verification reports (JSON Lines or CSV).

pub mod commands;
pub mod record;
pub mod suites;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use record::{Status, VerificationRecord};
pub use suites::{run_suites, Suite, SuiteConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] landau::Error),
    #[error("failed to write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 1 for runtime failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(e) => match e {
                landau::Error::NoConvergence(_) | landau::Error::NonFinite { .. } => 1,
                _ => 2,
            },
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "landau", version, about = "Landau levels and their all-variable ladder operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy table E(n, m) for one field strength.
    Spectrum(SpectrumArgs),
    /// Evaluate ψ_{n,m} at points, on a grid, or its radial factor at ζ values.
    Eval(EvalArgs),
    /// Apply L± to ψ_{n,m} and compare with the closed-form action.
    Ladder(LadderArgs),
    /// Run verification suites and emit one record per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Raise,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Analytic,
    Fd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Laguerre,
    Quadrature,
    States,
    Ladder,
    Velocity,
    All,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Magnetic field strength B (atomic units).
    #[arg(short = 'B', long = "field", default_value_t = 1.0, allow_negative_numbers = true)]
    pub field: f64,
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    pub n_max: i64,
    #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
    pub m_min: i64,
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    pub m_max: i64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(short = 'B', long = "field", default_value_t = 1.0, allow_negative_numbers = true)]
    pub field: f64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m: i64,
    /// Radial-factor mode: comma-separated ζ values.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub zeta: Vec<f64>,
    /// Point mode: comma-separated ρ values (combined with every --phi).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub rho: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0")]
    pub phi: Vec<f64>,
    /// Grid mode: half extent L of [−L, L]².
    #[arg(long = "grid-L", allow_negative_numbers = true)]
    pub grid_l: Option<f64>,
    /// Grid mode: odd number of points per axis (>= 33).
    #[arg(long = "grid-N", allow_negative_numbers = true)]
    pub grid_n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct LadderArgs {
    #[arg(short = 'B', long = "field", default_value_t = 1.0, allow_negative_numbers = true)]
    pub field: f64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, value_enum, default_value_t = DirectionArg::Raise)]
    pub direction: DirectionArg,
    /// Comma-separated ζ values; defaults to the Gauss–Laguerre nodes used by `verify`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub zeta: Vec<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Analytic)]
    pub mode: ModeArg,
    /// Largest accepted pointwise deviation.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    /// Field strengths (repeatable); defaults to 0.5, 1, 2.
    #[arg(short = 'B', long = "field", allow_negative_numbers = true)]
    pub fields: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub n_max: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m_max: Option<i64>,
    #[arg(long = "grid-L", allow_negative_numbers = true)]
    pub grid_l: Option<f64>,
    /// Points per axis of the fine velocity grid; must be 1 mod 4.
    #[arg(long = "grid-N", allow_negative_numbers = true)]
    pub grid_n: Option<usize>,
    /// Tolerance override: `VALUE` for every check, or `CHECK=VALUE` (repeatable).
    #[arg(long)]
    pub tol: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Record wall time per check (makes output non-reproducible).
    #[arg(long)]
    pub timings: bool,
    /// Random samples for the Laguerre identity sweep.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    pub seed: u64,
}

/// Runs a parsed command, writing results to `out`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Spectrum(a) => commands::spectrum(&a, out),
        Command::Eval(a) => commands::eval(&a, out),
        Command::Ladder(a) => commands::ladder(&a, out),
        Command::Verify(a) => commands::verify(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
