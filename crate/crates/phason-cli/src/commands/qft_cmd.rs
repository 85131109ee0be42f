//! `phason qft` — circuit verification against the direct DFT and the
//! photon schedule of the dyadic phase gates.

use clap::Args;
use phason::planner::PlanOptions;
use phason::qft;
use serde::Serialize;

use crate::commands::plan::{load_scenario, resolve_sources, SourceArg};
use crate::config::Config;
use crate::output;
use crate::{CliError, CliResult, CommonOpts};

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct QftArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    /// Qubit count
    #[arg(long, value_name = "N")]
    pub n: Option<u64>,

    /// Verify the materialized circuit against the direct DFT (n ≤ 10)
    #[arg(long)]
    pub verify: bool,

    /// Scenario for the photon schedule (with --spot-um and --t0-s)
    #[arg(long, value_name = "NAME")]
    pub scenario: Option<String>,

    /// Scenario JSON file (alternative to --scenario)
    #[arg(long, value_name = "FILE")]
    pub scenario_file: Option<std::path::PathBuf>,

    /// Focus side d in µm
    #[arg(long, value_name = "UM")]
    pub spot_um: Option<f64>,

    /// Beam duration t₀ in s
    #[arg(long, value_name = "S")]
    pub t0_s: Option<f64>,

    /// Detuning Δ in rad/s
    #[arg(long, value_name = "RAD_S")]
    pub delta_rad_s: Option<f64>,

    /// Dipole provenance for the schedule
    #[arg(long, value_enum)]
    pub dipole_source: Option<SourceArg>,

    /// Field provenance for the schedule
    #[arg(long, value_enum)]
    pub field_model: Option<SourceArg>,

    /// Photon cap per gate
    #[arg(long, value_name = "N")]
    pub cap: Option<u64>,

    /// Output format (csv carries the schedule only)
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Serialize)]
struct QftReport {
    n_qubits: usize,
    verification: Option<qft::VerificationReport>,
    schedule: Option<qft::PhaseSchedule>,
}

pub fn run(args: QftArgs) -> CliResult<()> {
    let cfg = Config::load(args.common.config.as_deref())?;
    let n = cfg.u64_required(args.n, "n")? as usize;
    let wants_schedule =
        args.scenario.is_some() || args.scenario_file.is_some() || cfg
            .string_opt(None, "scenario")?
            .is_some();

    if !args.verify && !wants_schedule {
        return Err(CliError::validation(
            "nothing to do: pass --verify and/or a scenario (--scenario, --spot-um, --t0-s) \
             for a photon schedule",
        ));
    }

    let verification = if args.verify {
        let circuit = qft::build_qft(n)?;
        Some(qft::verify_circuit(&circuit)?)
    } else {
        None
    };

    let schedule = if wants_schedule {
        let scenario = load_scenario(&cfg, args.scenario.clone(), &args.scenario_file)?;
        let spot = cfg.f64_required(args.spot_um, "spot-um")? * 1e-6;
        let t0 = cfg.f64_required(args.t0_s, "t0-s")?;
        let delta = cfg.f64_default(args.delta_rad_s, "delta-rad-s", 0.0)?;
        let (dipole_source, field_model) =
            resolve_sources(&cfg, &scenario, args.dipole_source, args.field_model)?;
        let cap = cfg.u64_default(args.cap, "cap", phason::planner::DEFAULT_PHOTON_CAP)?;
        let options = PlanOptions {
            dipole_source,
            field_model,
            cap,
        };
        // the materialized-circuit path keeps the schedule tied to the same
        // gate list --verify checks; beyond the matrix cap only the
        // combinatorial schedule is available
        let schedule = if n <= qft::MAX_MATRIX_QUBITS {
            let circuit = qft::build_qft(n)?;
            qft::phase_schedule(&circuit, &scenario, spot, t0, delta, &options)?
        } else {
            qft::phase_schedule_for(n, &scenario, spot, t0, delta, &options)?
        };
        Some(schedule)
    } else {
        None
    };

    match args.format {
        Format::Json => output::write_json(
            &args.common,
            &QftReport {
                n_qubits: n,
                verification,
                schedule,
            },
        ),
        Format::Csv => {
            let schedule = schedule.ok_or_else(|| {
                CliError::validation(
                    "--format csv carries the schedule only; provide scenario inputs",
                )
            })?;
            if args.verify {
                return Err(CliError::validation(
                    "--format csv cannot carry the verification report; use --format json",
                ));
            }
            let mut bytes = output::csv_schema_line().into_bytes();
            schedule
                .write_csv(&mut bytes)
                .map_err(|e| CliError::numeric(format!("csv serialization failed: {e}")))?;
            output::write_bytes(&args.common, &bytes)
        }
    }
}
