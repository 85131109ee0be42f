//! `phason plan` — photon budget for a target phase in a scenario.

use clap::Args;
use phason::planner::{self, BudgetRequest, PlanOptions, Provenance, Scenario};
use serde::Serialize;

use crate::config::{self, Config};
use crate::output;
use crate::{CliError, CliResult, CommonOpts};

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq)]
pub enum SourceArg {
    Formula,
    Paper,
}

impl From<SourceArg> for Provenance {
    fn from(s: SourceArg) -> Provenance {
        match s {
            SourceArg::Formula => Provenance::Formula,
            SourceArg::Paper => Provenance::Paper,
        }
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct PlanArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    /// Built-in preset name (CaF2_Tm, SiV_diamond, Ca_plus_397, Ca_plus_393)
    /// or a name resolvable via PHASON_SCENARIO_DIR
    #[arg(long, value_name = "NAME")]
    pub scenario: Option<String>,

    /// Scenario JSON file (alternative to --scenario)
    #[arg(long, value_name = "FILE")]
    pub scenario_file: Option<std::path::PathBuf>,

    /// Target phase θ in rad
    #[arg(long, value_name = "RAD")]
    pub theta_rad: Option<f64>,

    /// Focus side d in µm
    #[arg(long, value_name = "UM")]
    pub spot_um: Option<f64>,

    /// Beam duration t₀ in s
    #[arg(long, value_name = "S")]
    pub t0_s: Option<f64>,

    /// Detuning Δ in rad/s
    #[arg(long, value_name = "RAD_S")]
    pub delta_rad_s: Option<f64>,

    /// Refractive index at the focus
    #[arg(long, value_name = "N")]
    pub refraction: Option<f64>,

    /// Dipole provenance (default: paper when the scenario quotes one)
    #[arg(long, value_enum)]
    pub dipole_source: Option<SourceArg>,

    /// Field provenance (default: formula)
    #[arg(long, value_enum)]
    pub field_model: Option<SourceArg>,

    /// Photon cap for the search
    #[arg(long, value_name = "N")]
    pub cap: Option<u64>,
}

#[derive(Serialize)]
struct PlanReport {
    scenario: String,
    lambda_m: f64,
    request: BudgetRequest,
    budget: planner::PhotonBudget,
}

pub fn load_scenario(
    cfg: &Config,
    scenario: Option<String>,
    scenario_file: &Option<std::path::PathBuf>,
) -> CliResult<Scenario> {
    if let Some(path) = scenario_file {
        return Scenario::load_json(path).map_err(CliError::from);
    }
    let name = cfg.string_opt(scenario, "scenario")?.ok_or_else(|| {
        CliError::validation("missing required flag --scenario or --scenario-file")
    })?;
    config::find_scenario(&name)
}

pub fn resolve_sources(
    cfg: &Config,
    scenario: &Scenario,
    dipole_source: Option<SourceArg>,
    field_model: Option<SourceArg>,
) -> CliResult<(Provenance, Provenance)> {
    let parse = |s: &str| -> CliResult<Provenance> {
        match s {
            "formula" => Ok(Provenance::Formula),
            "paper" => Ok(Provenance::Paper),
            other => Err(CliError::validation(format!(
                "unknown provenance '{other}' (formula or paper)"
            ))),
        }
    };
    let dipole_default = if scenario.dipole_paper().is_some() {
        "paper"
    } else {
        "formula"
    };
    let dipole = parse(&cfg.string_default(
        dipole_source.map(|s| {
            match s {
                SourceArg::Formula => "formula",
                SourceArg::Paper => "paper",
            }
            .to_string()
        }),
        "dipole-source",
        dipole_default,
    )?)?;
    let field = parse(&cfg.string_default(
        field_model.map(|s| {
            match s {
                SourceArg::Formula => "formula",
                SourceArg::Paper => "paper",
            }
            .to_string()
        }),
        "field-model",
        "formula",
    )?)?;
    Ok((dipole, field))
}

pub fn run(args: PlanArgs) -> CliResult<()> {
    let cfg = Config::load(args.common.config.as_deref())?;
    let scenario = load_scenario(&cfg, args.scenario.clone(), &args.scenario_file)?;
    let theta = cfg.f64_required(args.theta_rad, "theta-rad")?;
    let spot = cfg.f64_required(args.spot_um, "spot-um")? * 1e-6;
    let t0 = cfg.f64_required(args.t0_s, "t0-s")?;
    let delta = cfg.f64_default(args.delta_rad_s, "delta-rad-s", 0.0)?;
    let refraction = cfg.f64_default(args.refraction, "refraction", 1.0)?;
    let (dipole_source, field_model) =
        resolve_sources(&cfg, &scenario, args.dipole_source, args.field_model)?;
    let cap = cfg.u64_default(args.cap, "cap", planner::DEFAULT_PHOTON_CAP)?;

    let request = BudgetRequest::new(theta, spot, t0, delta, refraction)?;
    let options = PlanOptions {
        dipole_source,
        field_model,
        cap,
    };
    let budget = planner::photons_required(&scenario, &request, &options)?;

    // post-check: the returned budget really meets the request
    if budget.achieved_phase < request.target_phase * (1.0 - 1e-12) {
        return Err(CliError::numeric(format!(
            "budget self-check failed: achieved {:.6e} < target {:.6e}",
            budget.achieved_phase, request.target_phase
        )));
    }

    let report = PlanReport {
        scenario: scenario.name.clone(),
        lambda_m: scenario.lambda,
        request,
        budget,
    };
    output::write_json(&args.common, &report)
}
