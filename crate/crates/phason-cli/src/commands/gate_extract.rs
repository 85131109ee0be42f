//! `phason gate-extract` — the realized gate of a pulse and its nearest
//! named match.

use clap::Args;
use phason::dynamics::{self, PulseSpec};
use phason::gates::{self, GateMatrix, GateName};
use serde::Serialize;

use crate::commands::evolve::Method;
use crate::config::Config;
use crate::output;
use crate::{CliError, CliResult, CommonOpts};

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct GateExtractArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    /// Evolution path the propagator is extracted from
    #[arg(long, value_enum, default_value = "rwa-resonant")]
    pub method: Method,

    #[command(flatten)]
    pub system: super::SystemArgs,

    #[command(flatten)]
    pub envelope: super::EnvelopeArgs,

    /// Pulse initial phase φ in rad
    #[arg(long, value_name = "RAD")]
    pub phi_rad: Option<f64>,

    /// Detuning Δ in rad/s
    #[arg(long, value_name = "RAD_S")]
    pub delta_rad_s: Option<f64>,

    /// Direct rotation angle Θ in rad (rwa-resonant)
    #[arg(long, value_name = "RAD")]
    pub theta_rad: Option<f64>,

    /// Direct near-resonant angle Θ̃ in rad (rwa-detuned)
    #[arg(long, value_name = "RAD")]
    pub theta_tilde_rad: Option<f64>,

    /// ODE local error tolerance
    #[arg(long, value_name = "TOL")]
    pub tol: Option<f64>,
}

#[derive(Serialize)]
struct Candidate {
    name: String,
    distance: f64,
}

#[derive(Serialize)]
struct DiagonalEquivalence {
    h: bool,
    x: bool,
}

#[derive(Serialize)]
struct GateReport {
    method: &'static str,
    matrix: GateMatrix,
    unitarity_defect: f64,
    nearest: Candidate,
    candidates: Vec<Candidate>,
    equivalent_up_to_diagonal_phase: DiagonalEquivalence,
}

/// The closest phase gate Z(θ*): θ* = arg(U₁₁/U₀₀) when both diagonal
/// entries carry weight.
fn best_z_angle(u: &GateMatrix) -> Option<f64> {
    let d0 = u.entry(0, 0);
    let d1 = u.entry(1, 1);
    if d0.norm() < 0.1 || d1.norm() < 0.1 {
        return None;
    }
    let mut theta = (d1 / d0).arg();
    if theta < 0.0 {
        theta += std::f64::consts::TAU;
    }
    Some(theta)
}

pub fn run(args: GateExtractArgs) -> CliResult<()> {
    let cfg = Config::load(args.common.config.as_deref())?;
    let sys = super::resolve_system(&cfg, &args.system)?;
    let phi = cfg.f64_default(args.phi_rad, "phi-rad", 0.0)?;
    let delta = cfg.f64_default(args.delta_rad_s, "delta-rad-s", 0.0)?;
    let env = super::resolve_envelope(&cfg, &args.envelope)?;

    let (matrix, method_name) = match args.method {
        Method::RwaResonant => {
            let theta = match (cfg.f64_opt(args.theta_rad, "theta-rad")?, &env) {
                (Some(t), _) => t,
                (None, Some(env)) => {
                    let pulse = PulseSpec::resonant(&sys, env.clone(), phi);
                    super::evolve::check_regime(args.common.strict, args.method, &sys, &pulse)?;
                    dynamics::rotation_angle_total(env, &sys)
                }
                (None, None) => {
                    return Err(CliError::validation(
                        "--method rwa-resonant needs --theta-rad or an envelope",
                    ))
                }
            };
            (gates::propagator_resonant(theta, phi), "rwa-resonant")
        }
        Method::RwaDetuned => {
            let theta_tilde = match (cfg.f64_opt(args.theta_tilde_rad, "theta-tilde-rad")?, &env)
            {
                (Some(t), _) => t,
                (None, Some(env)) => {
                    let pulse = PulseSpec::detuned(&sys, env.clone(), phi, delta)?;
                    super::evolve::check_regime(args.common.strict, args.method, &sys, &pulse)?;
                    dynamics::detuned_rotation_angle_total(env, &sys, delta)?
                }
                (None, None) => {
                    return Err(CliError::validation(
                        "--method rwa-detuned needs --theta-tilde-rad or an envelope",
                    ))
                }
            };
            (gates::propagator_detuned(theta_tilde, phi), "rwa-detuned")
        }
        Method::Ode => {
            let env = env.ok_or_else(|| {
                CliError::validation("--method ode needs an envelope")
            })?;
            let tol = cfg.f64_default(args.tol, "tol", 1e-9)?;
            let pulse = if delta == 0.0 {
                PulseSpec::resonant(&sys, env, phi)
            } else {
                PulseSpec::detuned(&sys, env, phi, delta)?
            };
            super::evolve::check_regime(args.common.strict, args.method, &sys, &pulse)?;
            (gates::propagator_full(&sys, &pulse, tol)?, "ode")
        }
    };

    let mut named: Vec<(String, GateMatrix)> = vec![
        ("I".into(), gates::named_gate(&GateName::I)),
        ("X".into(), gates::named_gate(&GateName::X)),
        ("Y".into(), gates::named_gate(&GateName::Y)),
        ("H".into(), gates::named_gate(&GateName::H)),
    ];
    if let Some(theta) = best_z_angle(&matrix) {
        named.push((
            format!("Z({theta:.4})"),
            gates::named_gate(&GateName::Z(theta)),
        ));
    }

    let candidates: Vec<Candidate> = named
        .iter()
        .map(|(name, g)| Candidate {
            name: name.clone(),
            distance: gates::distance_up_to_global_phase(&matrix, g),
        })
        .collect();
    let nearest = candidates
        .iter()
        .min_by(|a, b| a.distance.partial_cmp(&b.distance).unwrap())
        .map(|c| Candidate {
            name: c.name.clone(),
            distance: c.distance,
        })
        .expect("candidate list is non-empty");

    let report = GateReport {
        method: method_name,
        unitarity_defect: matrix.unitarity_defect(),
        nearest,
        equivalent_up_to_diagonal_phase: DiagonalEquivalence {
            h: gates::equivalent_up_to_diagonal_phase(
                &matrix,
                &gates::named_gate(&GateName::H),
                1e-6,
            ),
            x: gates::equivalent_up_to_diagonal_phase(
                &matrix,
                &gates::named_gate(&GateName::X),
                1e-6,
            ),
        },
        candidates,
        matrix,
    };
    output::write_json(&args.common, &report)
}
