//! `phason sweep` — tabulate dressed-state outputs over a 1D or 2D
//! parameter grid.

use clap::Args;
use phason::dressed::{self, PhotonBeam};
use phason::dynamics::TwoLevelSystem;

use crate::config::Config;
use crate::output;
use crate::{CliError, CliResult, CommonOpts};

const SWEEPABLE: [&str; 4] = ["n-photons", "spot-um", "t0-s", "delta-rad-s"];
const ALL_OUTPUTS: [&str; 7] = [
    "field_v_per_m",
    "rabi_rad_s",
    "phi0_rad",
    "phi1_rad",
    "phase_exact_rad",
    "phase_estimate_rad",
    "adiabatic_ratio",
];

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonOpts,

    #[command(flatten)]
    pub system: super::SystemArgs,

    /// Sweep spec `name=min:max:points:scale`, up to twice; names:
    /// n-photons, spot-um, t0-s, delta-rad-s; scale: linear|log
    #[arg(long, value_name = "SPEC")]
    pub sweep: Vec<String>,

    /// Base photon number N₀ (overridden when swept)
    #[arg(long, value_name = "N")]
    pub n_photons: Option<u64>,

    /// Base beam duration t₀ in s
    #[arg(long, value_name = "S")]
    pub t0_s: Option<f64>,

    /// Base focus side d in µm
    #[arg(long, value_name = "UM")]
    pub spot_um: Option<f64>,

    /// Refractive index at the focus
    #[arg(long, value_name = "N")]
    pub refraction: Option<f64>,

    /// Base detuning Δ in rad/s
    #[arg(long, value_name = "RAD_S")]
    pub delta_rad_s: Option<f64>,

    /// Comma-separated outputs to tabulate (default: all)
    #[arg(long, value_name = "LIST")]
    pub outputs: Option<String>,
}

#[derive(Debug, Clone)]
struct SweepSpec {
    name: String,
    values: Vec<f64>,
}

fn parse_sweep(spec: &str) -> CliResult<SweepSpec> {
    let (name, rest) = spec.split_once('=').ok_or_else(|| {
        CliError::validation(format!("sweep spec '{spec}' must be name=min:max:points:scale"))
    })?;
    if !SWEEPABLE.contains(&name) {
        return Err(CliError::validation(format!(
            "cannot sweep '{name}'; sweepable: {}",
            SWEEPABLE.join(", ")
        )));
    }
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::validation(format!(
            "sweep spec '{spec}' must be name=min:max:points:scale"
        )));
    }
    let min: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::validation(format!("bad sweep min '{}'", parts[0])))?;
    let max: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::validation(format!("bad sweep max '{}'", parts[1])))?;
    let points: usize = parts[2]
        .parse()
        .map_err(|_| CliError::validation(format!("bad sweep points '{}'", parts[2])))?;
    if points == 0 {
        return Err(CliError::validation("sweep needs at least one grid point"));
    }
    let values = match parts[3] {
        "linear" => (0..points)
            .map(|i| {
                if points == 1 {
                    min
                } else {
                    min + (max - min) * i as f64 / (points - 1) as f64
                }
            })
            .collect(),
        "log" => {
            if min <= 0.0 || max <= 0.0 {
                return Err(CliError::validation("log sweeps need positive bounds"));
            }
            let (la, lb) = (min.log10(), max.log10());
            (0..points)
                .map(|i| {
                    if points == 1 {
                        min
                    } else {
                        10f64.powf(la + (lb - la) * i as f64 / (points - 1) as f64)
                    }
                })
                .collect()
        }
        other => {
            return Err(CliError::validation(format!(
                "unknown sweep scale '{other}' (linear or log)"
            )))
        }
    };
    Ok(SweepSpec {
        name: name.to_string(),
        values,
    })
}

struct BasePoint {
    n_photons: u64,
    t0: f64,
    spot: f64,
    delta: f64,
    refraction: f64,
}

fn evaluate(
    sys: &TwoLevelSystem,
    base: &BasePoint,
    overrides: &[(&str, f64)],
) -> CliResult<Vec<(&'static str, f64)>> {
    let mut n_photons = base.n_photons;
    let mut t0 = base.t0;
    let mut spot = base.spot;
    let mut delta = base.delta;
    for &(name, v) in overrides {
        match name {
            "n-photons" => n_photons = v.round().max(0.0) as u64,
            "t0-s" => t0 = v,
            "spot-um" => spot = v * 1e-6,
            "delta-rad-s" => delta = v,
            _ => unreachable!("validated sweep name"),
        }
    }
    let beam = PhotonBeam::new(n_photons, sys.omega1() + delta, t0, spot, base.refraction)?;
    let field = dressed::photon_field(&beam);
    let shifts = dressed::state_phase_shifts(sys, &beam, delta);
    let pd = dressed::phase_difference(sys, &beam, delta);
    let ad = dressed::adiabaticity_check(sys, &beam, delta, dressed::DEFAULT_ADIABATIC_THRESHOLD);
    Ok(vec![
        ("field_v_per_m", field.amplitude),
        ("rabi_rad_s", dressed::rabi_frequency(sys, &beam, delta)),
        ("phi0_rad", shifts.phi0),
        ("phi1_rad", shifts.phi1),
        ("phase_exact_rad", pd.exact),
        ("phase_estimate_rad", pd.estimate),
        ("adiabatic_ratio", ad.ratio),
    ])
}

pub fn run(args: SweepArgs) -> CliResult<()> {
    let cfg = Config::load(args.common.config.as_deref())?;
    let sys = super::resolve_system(&cfg, &args.system)?;

    if args.sweep.is_empty() || args.sweep.len() > 2 {
        return Err(CliError::validation(
            "pass one or two --sweep specs (name=min:max:points:scale)",
        ));
    }
    let specs: Vec<SweepSpec> = args
        .sweep
        .iter()
        .map(|s| parse_sweep(s))
        .collect::<CliResult<_>>()?;
    if specs.len() == 2 && specs[0].name == specs[1].name {
        return Err(CliError::validation("the two sweeps must differ"));
    }

    // base values are required only for parameters that are not swept
    let swept = |name: &str| specs.iter().any(|s| s.name == name);
    let base = BasePoint {
        n_photons: if swept("n-photons") {
            cfg.u64_default(args.n_photons, "n-photons", 1)?
        } else {
            cfg.u64_required(args.n_photons, "n-photons")?
        },
        t0: if swept("t0-s") {
            cfg.f64_default(args.t0_s, "t0-s", 1e-7)?
        } else {
            cfg.f64_required(args.t0_s, "t0-s")?
        },
        spot: if swept("spot-um") {
            cfg.f64_default(args.spot_um, "spot-um", 1.0)? * 1e-6
        } else {
            cfg.f64_required(args.spot_um, "spot-um")? * 1e-6
        },
        delta: cfg.f64_default(args.delta_rad_s, "delta-rad-s", 0.0)?,
        refraction: cfg.f64_default(args.refraction, "refraction", 1.0)?,
    };

    let selected: Vec<String> = match cfg.string_opt(args.outputs.clone(), "outputs")? {
        None => ALL_OUTPUTS.iter().map(|s| s.to_string()).collect(),
        Some(list) => {
            let cols: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
            for c in &cols {
                if !ALL_OUTPUTS.contains(&c.as_str()) {
                    return Err(CliError::validation(format!(
                        "unknown output '{c}'; available: {}",
                        ALL_OUTPUTS.join(", ")
                    )));
                }
            }
            cols
        }
    };

    let mut text = output::csv_schema_line();
    let mut header: Vec<String> = specs.iter().map(|s| s.name.clone()).collect();
    header.extend(selected.iter().cloned());
    text.push_str(&header.join(","));
    text.push_str("\r\n");

    // lexicographic grid order: first spec outer, second inner
    let inner: &[f64] = if specs.len() == 2 { &specs[1].values } else { &[0.0] };
    for &a in &specs[0].values {
        for &b in inner {
            let mut overrides = vec![(specs[0].name.as_str(), a)];
            if specs.len() == 2 {
                overrides.push((specs[1].name.as_str(), b));
            }
            let row = evaluate(&sys, &base, &overrides)?;
            let mut fields: Vec<String> =
                overrides.iter().map(|(_, v)| format!("{v:.16e}")).collect();
            for name in &selected {
                let value = row
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, v)| *v)
                    .expect("validated output name");
                fields.push(format!("{value:.16e}"));
            }
            text.push_str(&fields.join(","));
            text.push_str("\r\n");
        }
    }
    output::write_bytes(&args.common, text.as_bytes())
}
