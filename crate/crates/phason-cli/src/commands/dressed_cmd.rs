//! `phason dressed` — dressed pair, phase shifts and adiabaticity for one
//! beam configuration.

use clap::Args;
use phason::dressed::{self, PhotonBeam};
use phason::dynamics::TwoLevelSystem;
use serde::Serialize;

use crate::config::Config;
use crate::output;
use crate::{CliResult, CommonOpts};

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct DressedArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    #[command(flatten)]
    pub system: super::SystemArgs,

    /// Photon number N₀ (0 = vacuum probe)
    #[arg(long, value_name = "N")]
    pub n_photons: Option<u64>,

    /// Beam duration t₀ in s
    #[arg(long, value_name = "S")]
    pub t0_s: Option<f64>,

    /// Focus side d in µm
    #[arg(long, value_name = "UM")]
    pub spot_um: Option<f64>,

    /// Refractive index at the focus
    #[arg(long, value_name = "N")]
    pub refraction: Option<f64>,

    /// Detuning Δ in rad/s (beam carrier = ω₁ + Δ)
    #[arg(long, value_name = "RAD_S")]
    pub delta_rad_s: Option<f64>,

    /// t₀·Ω threshold for the adiabaticity verdict
    #[arg(long, value_name = "X")]
    pub adiabatic_threshold: Option<f64>,
}

#[derive(Serialize)]
struct SystemEcho {
    omega1_rad_s: f64,
    dipole_c_m: f64,
    kappa: f64,
}

#[derive(Serialize)]
struct DressedReport {
    system: SystemEcho,
    beam: PhotonBeam,
    delta_rad_s: f64,
    field: dressed::PhotonField,
    rabi_rad_s: f64,
    dressed: Option<dressed::DressedPair>,
    phase_shifts: dressed::PhaseShifts,
    phase_difference: dressed::PhaseDifference,
    adiabaticity: dressed::Adiabaticity,
}

pub fn run(args: DressedArgs) -> CliResult<()> {
    let cfg = Config::load(args.common.config.as_deref())?;
    let sys: TwoLevelSystem = super::resolve_system(&cfg, &args.system)?;
    let n_photons = cfg.u64_required(args.n_photons, "n-photons")?;
    let t0 = cfg.f64_required(args.t0_s, "t0-s")?;
    let spot = cfg.f64_required(args.spot_um, "spot-um")? * 1e-6;
    let refraction = cfg.f64_default(args.refraction, "refraction", 1.0)?;
    let delta = cfg.f64_default(args.delta_rad_s, "delta-rad-s", 0.0)?;
    let threshold = cfg.f64_default(
        args.adiabatic_threshold,
        "adiabatic-threshold",
        dressed::DEFAULT_ADIABATIC_THRESHOLD,
    )?;

    let beam = PhotonBeam::new(n_photons, sys.omega1() + delta, t0, spot, refraction)?;
    let report = DressedReport {
        system: SystemEcho {
            omega1_rad_s: sys.omega1(),
            dipole_c_m: sys.dipole(),
            kappa: sys.kappa(),
        },
        beam,
        delta_rad_s: delta,
        field: dressed::photon_field(&beam),
        rabi_rad_s: dressed::rabi_frequency(&sys, &beam, delta),
        dressed: if n_photons >= 1 {
            Some(dressed::dressed_states(&sys, &beam, delta)?)
        } else {
            None
        },
        phase_shifts: dressed::state_phase_shifts(&sys, &beam, delta),
        phase_difference: dressed::phase_difference(&sys, &beam, delta),
        adiabaticity: dressed::adiabaticity_check(&sys, &beam, delta, threshold),
    };
    output::write_json(&args.common, &report)
}
