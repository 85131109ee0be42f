//! Command-line front end: every library capability behind file-based I/O.
//!
//! Physical inputs always carry their unit in the flag name (--t0-s,
//! --lambda-nm, --spot-um, ...). Structured results go to stdout as JSON
//! tagged "schema": "phason/1"; tabular results as CSV. Warnings go to
//! stderr; stdout stays machine-consumable.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};

/// Exit codes: 0 success, 2 validation error, 3 physics-regime error under
/// --strict, 4 photon budget exceeded, 5 numerical failure.
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_REGIME: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_NUMERIC: i32 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: msg.into(),
        }
    }
    pub fn regime(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_REGIME,
            message: msg.into(),
        }
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_NUMERIC,
            message: msg.into(),
        }
    }
}

impl From<phason::Error> for CliError {
    fn from(e: phason::Error) -> Self {
        let code = match &e {
            phason::Error::BudgetExceeded { .. } => EXIT_BUDGET,
            phason::Error::IntegrationFailure { .. } | phason::Error::NonUnitary { .. } => {
                EXIT_NUMERIC
            }
            _ => EXIT_VALIDATION,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "phason",
    version,
    about = "Two-level optical qubit toolkit: pulse dynamics, gates, dressed-state \
             phase shifts, photon budgets, QFT schedules",
    after_help = "Config precedence: command-line flags > --config file values > built-in \
                  defaults. The --config file is a JSON object keyed by long flag names \
                  without dashes, e.g. {\"t0-s\": 1e-7}.\n\
                  Scenario lookup: built-in presets first, then <name>.json in each \
                  directory listed in PHASON_SCENARIO_DIR (colon-separated)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct CommonOpts {
    /// JSON config file; flags override its values
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<std::path::PathBuf>,

    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<std::path::PathBuf>,

    /// Treat physics-regime violations as errors (exit 3) instead of warnings
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the qubit through a pulse; writes a trajectory CSV
    /// (columns t_s, re_c0, im_c0, re_c1, im_c1, pop0, pop1)
    Evolve(commands::evolve::EvolveArgs),
    /// Extract the realized gate from a pulse and name its nearest match (JSON)
    GateExtract(commands::gate_extract::GateExtractArgs),
    /// Dressed-state structure and phase shifts for a photon beam (JSON)
    Dressed(commands::dressed_cmd::DressedArgs),
    /// Photon budget for a target phase in a named scenario (JSON)
    Plan(commands::plan::PlanArgs),
    /// QFT verification and per-gate photon schedule (JSON or CSV)
    Qft(commands::qft_cmd::QftArgs),
    /// Sweep one or two beam parameters and tabulate dressed-state outputs (CSV)
    Sweep(commands::sweep::SweepArgs),
    /// Print the physical constants in use (JSON)
    Constants(commands::constants::ConstantsArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evolve(args) => commands::evolve::run(args),
        Command::GateExtract(args) => commands::gate_extract::run(args),
        Command::Dressed(args) => commands::dressed_cmd::run(args),
        Command::Plan(args) => commands::plan::run(args),
        Command::Qft(args) => commands::qft_cmd::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
        Command::Constants(args) => commands::constants::run(args),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
