//! `phason evolve` — trajectory of the amplitude pair through a pulse.

use clap::Args;
use num_complex::Complex64 as C64;
use phason::dynamics::{
    self, Envelope, PulseSpec, QubitState, Trajectory, TrajectoryPoint, TwoLevelSystem,
};

use crate::config::Config;
use crate::output;
use crate::{CliError, CliResult, CommonOpts};

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Carrier-resolved integration of the exact amplitude equations
    Ode,
    /// Resonant closed form driven by the rotation angle Θ
    RwaResonant,
    /// Near-resonant closed form driven by Θ̃ (requires --delta-rad-s ≠ 0)
    RwaDetuned,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    /// Evolution path
    #[arg(long, value_enum)]
    pub method: Method,

    #[command(flatten)]
    pub system: super::SystemArgs,

    #[command(flatten)]
    pub envelope: super::EnvelopeArgs,

    /// Pulse initial phase φ in rad
    #[arg(long, value_name = "RAD")]
    pub phi_rad: Option<f64>,

    /// Detuning Δ = ω − ω₁ in rad/s
    #[arg(long, value_name = "RAD_S")]
    pub delta_rad_s: Option<f64>,

    /// Direct rotation angle Θ in rad (rwa-resonant without an envelope)
    #[arg(long, value_name = "RAD")]
    pub theta_rad: Option<f64>,

    /// Direct near-resonant angle Θ̃ in rad (rwa-detuned without an envelope)
    #[arg(long, value_name = "RAD")]
    pub theta_tilde_rad: Option<f64>,

    /// Initial amplitude components (all four together; default ground state)
    #[arg(long, value_name = "X")]
    pub c0_re: Option<f64>,
    #[arg(long, value_name = "X")]
    pub c0_im: Option<f64>,
    #[arg(long, value_name = "X")]
    pub c1_re: Option<f64>,
    #[arg(long, value_name = "X")]
    pub c1_im: Option<f64>,

    /// ODE local error tolerance
    #[arg(long, value_name = "TOL")]
    pub tol: Option<f64>,

    /// Closed-form trajectory sample count
    #[arg(long, value_name = "N")]
    pub samples: Option<u64>,
}

pub fn resolve_state(cfg: &Config, args: &EvolveArgs) -> CliResult<QubitState> {
    let parts = [
        cfg.f64_opt(args.c0_re, "c0-re")?,
        cfg.f64_opt(args.c0_im, "c0-im")?,
        cfg.f64_opt(args.c1_re, "c1-re")?,
        cfg.f64_opt(args.c1_im, "c1-im")?,
    ];
    if parts.iter().all(|p| p.is_none()) {
        return Ok(QubitState::ground());
    }
    if parts.iter().any(|p| p.is_none()) {
        return Err(CliError::validation(
            "initial state needs all of --c0-re --c0-im --c1-re --c1-im",
        ));
    }
    Ok(QubitState::normalized(
        C64::new(parts[0].unwrap(), parts[1].unwrap()),
        C64::new(parts[2].unwrap(), parts[3].unwrap()),
    )?)
}

fn warn_or_strict(strict: bool, msg: &str) -> CliResult<()> {
    if strict {
        Err(CliError::regime(msg))
    } else {
        eprintln!("warning: {msg}");
        Ok(())
    }
}

/// Regime checks for the chosen method; violations warn, or fail under
/// --strict.
pub fn check_regime(
    strict: bool,
    method: Method,
    sys: &TwoLevelSystem,
    pulse: &PulseSpec,
) -> CliResult<()> {
    let report = dynamics::rwa_regime_check(sys, pulse);
    if !report.quasi_monochromatic {
        warn_or_strict(
            strict,
            "envelope is not quasi-monochromatic (max slope exceeds 0.01·ω·peak)",
        )?;
    }
    match method {
        Method::RwaResonant => {
            if !report.resonant_ok {
                warn_or_strict(
                    strict,
                    &format!(
                        "resonant closed form outside its regime: κℰ/ω = {:.3e}",
                        report.carrier_ratio
                    ),
                )?;
            }
        }
        Method::RwaDetuned => {
            if !report.detuned_ok {
                warn_or_strict(
                    strict,
                    &format!(
                        "near-resonant map needs |Δ| > κℰ_peak; |Δ|/(κℰ) = {:.3e}",
                        report.detuning_ratio
                    ),
                )?;
            }
        }
        Method::Ode => {}
    }
    Ok(())
}

fn closed_form_trajectory(
    state0: &QubitState,
    phi: f64,
    samples: u64,
    span: (f64, f64),
    angle_at: impl Fn(f64) -> CliResult<f64>,
    map: impl Fn(&QubitState, f64, f64) -> QubitState,
) -> CliResult<Trajectory> {
    let n = samples.max(2);
    let (a, b) = span;
    let mut points = Vec::with_capacity(n as usize);
    for i in 0..n {
        let t = a + (b - a) * i as f64 / (n - 1) as f64;
        let angle = angle_at(t)?;
        points.push(TrajectoryPoint {
            t,
            state: map(state0, angle, phi),
        });
    }
    Ok(Trajectory {
        points,
        max_norm_drift: 0.0,
    })
}

pub fn run(args: EvolveArgs) -> CliResult<()> {
    let cfg = Config::load(args.common.config.as_deref())?;
    let sys = super::resolve_system(&cfg, &args.system)?;
    let state0 = resolve_state(&cfg, &args)?;
    let phi = cfg.f64_default(args.phi_rad, "phi-rad", 0.0)?;
    let delta = cfg.f64_default(args.delta_rad_s, "delta-rad-s", 0.0)?;
    let samples = cfg.u64_default(args.samples, "samples", 201)?;
    let env = super::resolve_envelope(&cfg, &args.envelope)?;

    let traj = match args.method {
        Method::Ode => {
            let env = env.ok_or_else(|| {
                CliError::validation(
                    "--method ode needs an envelope: --amplitude-v-per-m with \
                     --duration-s (rect) or --sigma-s (gaussian)",
                )
            })?;
            let tol = cfg.f64_default(args.tol, "tol", 1e-9)?;
            let pulse = if delta == 0.0 {
                PulseSpec::resonant(&sys, env, phi)
            } else {
                PulseSpec::detuned(&sys, env, phi, delta)?
            };
            check_regime(args.common.strict, args.method, &sys, &pulse)?;
            dynamics::evolve_full(&state0, &sys, &pulse, tol)?
        }
        Method::RwaResonant => match (cfg.f64_opt(args.theta_rad, "theta-rad")?, env) {
            (Some(theta), _) => {
                let duration = cfg.f64_default(args.envelope.duration_s, "duration-s", 1.0)?;
                closed_form_trajectory(
                    &state0,
                    phi,
                    samples,
                    (0.0, duration),
                    |t| Ok(theta * t / duration),
                    dynamics::evolve_resonant,
                )?
            }
            (None, Some(env)) => {
                let pulse = PulseSpec::resonant(&sys, env.clone(), phi);
                check_regime(args.common.strict, args.method, &sys, &pulse)?;
                closed_form_trajectory(
                    &state0,
                    phi,
                    samples,
                    env.support(),
                    |t| Ok(dynamics::rotation_angle(&env, &sys, t)),
                    dynamics::evolve_resonant,
                )?
            }
            (None, None) => {
                return Err(CliError::validation(
                    "--method rwa-resonant needs --theta-rad or an envelope",
                ))
            }
        },
        Method::RwaDetuned => {
            if delta == 0.0 && cfg.f64_opt(args.theta_tilde_rad, "theta-tilde-rad")?.is_none() {
                return Err(CliError::validation(
                    "--method rwa-detuned needs --delta-rad-s ≠ 0 (or a direct --theta-tilde-rad)",
                ));
            }
            match (cfg.f64_opt(args.theta_tilde_rad, "theta-tilde-rad")?, env) {
                (Some(tt), _) => {
                    let duration =
                        cfg.f64_default(args.envelope.duration_s, "duration-s", 1.0)?;
                    closed_form_trajectory(
                        &state0,
                        phi,
                        samples,
                        (0.0, duration),
                        |t| Ok(tt * t / duration),
                        dynamics::evolve_detuned,
                    )?
                }
                (None, Some(env)) => {
                    let pulse = PulseSpec::detuned(&sys, env.clone(), phi, delta)?;
                    check_regime(args.common.strict, args.method, &sys, &pulse)?;
                    let env2: Envelope = env.clone();
                    closed_form_trajectory(
                        &state0,
                        phi,
                        samples,
                        env.support(),
                        move |t| {
                            dynamics::detuned_rotation_angle(&env2, &sys, delta, t)
                                .map_err(CliError::from)
                        },
                        dynamics::evolve_detuned,
                    )?
                }
                (None, None) => {
                    return Err(CliError::validation(
                        "--method rwa-detuned needs --theta-tilde-rad or an envelope",
                    ))
                }
            }
        }
    };

    let mut bytes = output::csv_schema_line().into_bytes();
    traj.write_csv(&mut bytes)
        .map_err(|e| CliError::numeric(format!("csv serialization failed: {e}")))?;
    output::write_bytes(&args.common, &bytes)
}
