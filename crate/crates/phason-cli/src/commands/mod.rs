//! Subcommand implementations and the input plumbing they share.

pub mod constants;
pub mod dressed_cmd;
pub mod evolve;
pub mod gate_extract;
pub mod plan;
pub mod qft_cmd;
pub mod sweep;

use clap::Args;
use phason::dynamics::{Envelope, TwoLevelSystem};
use phason::units;

use crate::config::Config;
use crate::{CliError, CliResult};

/// Two-level system inputs shared by the pulse commands.
#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Transition frequency ω₁ in rad/s (alternative to --lambda-nm)
    #[arg(long, value_name = "RAD_S")]
    pub omega1_rad_s: Option<f64>,

    /// Transition wavelength in nm (alternative to --omega1-rad-s)
    #[arg(long, value_name = "NM")]
    pub lambda_nm: Option<f64>,

    /// Dipole matrix element as a length in cm
    #[arg(long, value_name = "CM")]
    pub dipole_cm: Option<f64>,
}

pub fn resolve_system(cfg: &Config, args: &SystemArgs) -> CliResult<TwoLevelSystem> {
    let omega1 = match cfg.f64_opt(args.omega1_rad_s, "omega1-rad-s")? {
        Some(w) => w,
        None => {
            let lambda_nm = cfg.f64_required(args.lambda_nm, "lambda-nm").map_err(|_| {
                CliError::validation(
                    "missing required flag --omega1-rad-s or --lambda-nm (or config keys \
                     \"omega1-rad-s\"/\"lambda-nm\")",
                )
            })?;
            units::wavelength_to_angular_frequency(lambda_nm * 1e-9)?
        }
    };
    let dipole_cm = cfg.f64_required(args.dipole_cm, "dipole-cm")?;
    let dipole = units::dipole_from_length_cm(dipole_cm)?;
    Ok(TwoLevelSystem::new(omega1, dipole)?)
}

/// Envelope inputs shared by the pulse commands.
#[derive(Args, Debug, Clone)]
pub struct EnvelopeArgs {
    /// Envelope shape
    #[arg(long, value_enum)]
    pub envelope: Option<EnvelopeKind>,

    /// Envelope amplitude in V/m
    #[arg(long, value_name = "V_M")]
    pub amplitude_v_per_m: Option<f64>,

    /// Flat-top duration in s (rect envelope)
    #[arg(long, value_name = "S")]
    pub duration_s: Option<f64>,

    /// Raised-cosine edge width in s (rect envelope; default 5% of duration)
    #[arg(long, value_name = "S")]
    pub edge_s: Option<f64>,

    /// Gaussian width σ in s (gaussian envelope)
    #[arg(long, value_name = "S")]
    pub sigma_s: Option<f64>,
}

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq)]
pub enum EnvelopeKind {
    Rect,
    Gaussian,
}

/// Build the envelope if its inputs are present; None when the caller may
/// fall back to a direct rotation angle.
pub fn resolve_envelope(cfg: &Config, args: &EnvelopeArgs) -> CliResult<Option<Envelope>> {
    let kind_str = cfg.string_opt(
        args.envelope.map(|k| {
            match k {
                EnvelopeKind::Rect => "rect",
                EnvelopeKind::Gaussian => "gaussian",
            }
            .to_string()
        }),
        "envelope",
    )?;
    let amplitude = cfg.f64_opt(args.amplitude_v_per_m, "amplitude-v-per-m")?;
    let Some(amplitude) = amplitude else {
        return Ok(None);
    };
    let kind = kind_str.as_deref().unwrap_or("rect");
    let env = match kind {
        "rect" => {
            let duration = cfg.f64_required(args.duration_s, "duration-s")?;
            match cfg.f64_opt(args.edge_s, "edge-s")? {
                Some(edge) => Envelope::rectangular_with_edges(amplitude, duration, edge)?,
                None => Envelope::rectangular(amplitude, duration)?,
            }
        }
        "gaussian" => {
            let sigma = cfg.f64_required(args.sigma_s, "sigma-s")?;
            Envelope::gaussian(amplitude, sigma)?
        }
        other => {
            return Err(CliError::validation(format!(
                "unknown envelope kind '{other}' (rect or gaussian)"
            )))
        }
    };
    Ok(Some(env))
}
