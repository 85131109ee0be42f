//! Physical scenario presets and inverse design: photons needed for a
//! target phase, and the full estimate chain for each preset.
//!
//! Several presets bundle two values for the same quantity: the number as
//! published for that system, and the number the radiative-rate formula
//! actually yields. The two disagree for the Tm³⁺:CaF₂ preset (see
//! [`crate::discrepancy`]), so every result is labeled with the provenance
//! of the dipole and of the field scale that produced it. Nothing here
//! silently picks one side.

use serde::{Deserialize, Serialize};

use crate::dressed;
use crate::dynamics::TwoLevelSystem;
use crate::error::{Error, Result};
use crate::units::{self, ALPHA, C, HBAR, Z0};

/// Default photon cap for budget searches.
pub const DEFAULT_PHOTON_CAP: u64 = 1_000_000_000;

/// Where a dipole (or field) number comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Evaluated from the governing formula with this crate's constants.
    Formula,
    /// Taken as published / as stated for the system.
    Paper,
}

/// Dipole length |⟨0|r|1⟩| from the radiative rate: √(3γ/(4αck³)), k = 2π/λ.
/// Returns metres.
pub fn dipole_length_from_rate(gamma: f64, lambda: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::domain("radiative rate must be positive"));
    }
    if !(lambda > 0.0) {
        return Err(Error::domain("wavelength must be positive"));
    }
    let k = 2.0 * std::f64::consts::PI / lambda;
    Ok((3.0 * gamma / (4.0 * ALPHA * C * k * k * k)).sqrt())
}

/// Dipole moment from the radiative rate, C·m.
pub fn dipole_from_rate(gamma: f64, lambda: f64) -> Result<f64> {
    Ok(units::E_CHARGE * dipole_length_from_rate(gamma, lambda)?)
}

/// Largest field a diffraction-limited single-photon beam of duration t₀
/// produces: ℰ₁ᵐᵃˣ = 2.4·√(ħωZ/(t₀λ²)) with ω = 2πc/λ. V/m.
pub fn max_field(lambda: f64, t0: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::domain("wavelength must be positive"));
    }
    if !(t0 > 0.0) {
        return Err(Error::domain("pulse duration must be positive"));
    }
    let omega = units::wavelength_to_angular_frequency(lambda)?;
    Ok(2.4 * (HBAR * omega * Z0 / (t0 * lambda * lambda)).sqrt())
}

/// A published single-photon field value with the focus and duration it was
/// quoted for; other geometries scale as √N·(d₀/d)·√(t₀ᶜᵃˡ/t₀), the same
/// scaling the field formula obeys.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FieldCalibration {
    /// ℰ₁ in V/m at the calibration point.
    pub field: f64,
    /// Spot side d₀ of the calibration, m.
    pub spot_side: f64,
    /// Duration t₀ of the calibration, s.
    pub t0: f64,
}

impl FieldCalibration {
    /// ℰ₁ at another focus/duration/index.
    pub fn single_photon_field(&self, spot_side: f64, t0: f64, refraction: f64) -> f64 {
        self.field * (self.spot_side / spot_side) * (self.t0 / t0).sqrt() / refraction
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
enum DipoleInput {
    /// Radiative rate γ in 1/s; the dipole follows from the rate formula.
    Rate(f64),
    /// Dipole length in metres, taken as stated.
    Length(f64),
}

/// A named physical system: wavelength plus either a radiative rate or a
/// directly stated dipole length, with optional published reference values.
#[derive(Debug, Clone, Serialize)]
pub struct Scenario {
    pub name: String,
    /// Transition wavelength, m.
    pub lambda: f64,
    input: DipoleInput,
    /// Published dipole length, m, when one is quoted for the system.
    paper_dipole_length: Option<f64>,
    /// Published single-photon field, when one is quoted.
    paper_field: Option<FieldCalibration>,
    pub notes: String,
}

impl Scenario {
    pub fn from_rate(
        name: impl Into<String>,
        lambda: f64,
        gamma: f64,
        notes: impl Into<String>,
    ) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::domain("wavelength must be positive"));
        }
        if !(gamma > 0.0) {
            return Err(Error::domain("radiative rate must be positive"));
        }
        Ok(Scenario {
            name: name.into(),
            lambda,
            input: DipoleInput::Rate(gamma),
            paper_dipole_length: None,
            paper_field: None,
            notes: notes.into(),
        })
    }

    pub fn from_dipole_length_cm(
        name: impl Into<String>,
        lambda: f64,
        r_cm: f64,
        notes: impl Into<String>,
    ) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::domain("wavelength must be positive"));
        }
        if !(r_cm > 0.0) {
            return Err(Error::domain("dipole length must be positive"));
        }
        Ok(Scenario {
            name: name.into(),
            lambda,
            input: DipoleInput::Length(r_cm * 1e-2),
            paper_dipole_length: None,
            paper_field: None,
            notes: notes.into(),
        })
    }

    pub fn with_paper_dipole_cm(mut self, r_cm: f64) -> Self {
        self.paper_dipole_length = Some(r_cm * 1e-2);
        self
    }

    pub fn with_paper_field(mut self, cal: FieldCalibration) -> Self {
        self.paper_field = Some(cal);
        self
    }

    /// Transition angular frequency, rad/s.
    pub fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI * C / self.lambda
    }

    /// Radiative rate, if the scenario was built from one.
    pub fn gamma(&self) -> Option<f64> {
        match self.input {
            DipoleInput::Rate(g) => Some(g),
            DipoleInput::Length(_) => None,
        }
    }

    /// Rate-formula dipole, C·m. Present only when a rate is known.
    pub fn dipole_formula(&self) -> Option<f64> {
        match self.input {
            DipoleInput::Rate(g) => Some(
                dipole_from_rate(g, self.lambda).expect("validated at construction"),
            ),
            DipoleInput::Length(_) => None,
        }
    }

    /// As-stated dipole, C·m: the published value when quoted, otherwise the
    /// directly supplied length.
    pub fn dipole_paper(&self) -> Option<f64> {
        match (self.paper_dipole_length, self.input) {
            (Some(len), _) => Some(units::E_CHARGE * len),
            (None, DipoleInput::Length(len)) => Some(units::E_CHARGE * len),
            (None, DipoleInput::Rate(_)) => None,
        }
    }

    pub fn dipole(&self, source: Provenance) -> Result<f64> {
        match source {
            Provenance::Formula => self.dipole_formula().ok_or_else(|| {
                Error::domain(format!(
                    "scenario '{}' has no radiative rate to derive a formula dipole from",
                    self.name
                ))
            }),
            Provenance::Paper => self.dipole_paper().ok_or_else(|| {
                Error::domain(format!(
                    "scenario '{}' has no published dipole value",
                    self.name
                ))
            }),
        }
    }

    /// All dipole values the scenario carries, in (Formula, Paper) order.
    pub fn available_dipoles(&self) -> Vec<(Provenance, f64)> {
        let mut out = Vec::new();
        if let Some(d) = self.dipole_formula() {
            out.push((Provenance::Formula, d));
        }
        if let Some(d) = self.dipole_paper() {
            out.push((Provenance::Paper, d));
        }
        out
    }

    pub fn paper_field(&self) -> Option<FieldCalibration> {
        self.paper_field
    }

    /// The two-level system for a chosen dipole provenance.
    pub fn system(&self, source: Provenance) -> Result<TwoLevelSystem> {
        TwoLevelSystem::new(self.omega(), self.dipole(source)?)
    }

    /// Built-in presets.
    pub fn presets() -> Vec<Scenario> {
        vec![
            Scenario::from_rate(
                "CaF2_Tm",
                472.3e-9,
                0.91e3,
                "Tm3+ 3H6 -> 1G4 in CaF2; 2.63 eV transition, weakly allowed by \
                 the low-symmetry crystal field. Published chain: dipole length \
                 6.0e-10 cm, single-photon field 28.9 V/cm at the diffraction \
                 limit for t0 = 1e-7 s.",
            )
            .expect("preset")
            .with_paper_dipole_cm(6.0e-10)
            .with_paper_field(FieldCalibration {
                field: 2890.0,
                spot_side: 472.3e-9 / 2.0,
                t0: 1e-7,
            }),
            Scenario::from_dipole_length_cm(
                "SiV_diamond",
                737e-9,
                6.0e-7,
                "SiV- center in diamond, 737 nm zero-phonon line; dipole length \
                 6e-7 cm as published, three orders beyond the rare-earth line.",
            )
            .expect("preset"),
            Scenario::from_rate(
                "Ca_plus_397",
                396.847e-9,
                1.0 / 7.7e-9,
                "Ca+ 4S1/2 -> 4P1/2, 396.847 nm, 7.7 ns upper-state lifetime.",
            )
            .expect("preset"),
            Scenario::from_rate(
                "Ca_plus_393",
                393.366e-9,
                1.0 / 7.4e-9,
                "Ca+ 4S1/2 -> 4P3/2, 393.366 nm, 7.4 ns upper-state lifetime.",
            )
            .expect("preset"),
        ]
    }

    pub fn preset(name: &str) -> Option<Scenario> {
        Self::presets().into_iter().find(|s| s.name == name)
    }

    /// Parse a scenario from its JSON file form:
    /// `{name, lambda_nm, gamma_per_s | dipole_cm, notes?,
    ///   paper_dipole_cm?, paper_field_v_per_cm?, paper_field_spot_m?,
    ///   paper_field_t0_s?}`.
    pub fn from_json_str(text: &str) -> Result<Scenario> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        file.into_scenario()
    }

    pub fn load_json(path: &std::path::Path) -> Result<Scenario> {
        Scenario::from_json_str(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    lambda_nm: f64,
    #[serde(default)]
    gamma_per_s: Option<f64>,
    #[serde(default)]
    dipole_cm: Option<f64>,
    #[serde(default)]
    notes: Option<String>,
    #[serde(default)]
    paper_dipole_cm: Option<f64>,
    #[serde(default)]
    paper_field_v_per_cm: Option<f64>,
    #[serde(default)]
    paper_field_spot_m: Option<f64>,
    #[serde(default)]
    paper_field_t0_s: Option<f64>,
}

impl ScenarioFile {
    fn into_scenario(self) -> Result<Scenario> {
        let lambda = self.lambda_nm * 1e-9;
        let notes = self.notes.unwrap_or_default();
        let mut scenario = match (self.gamma_per_s, self.dipole_cm) {
            (Some(gamma), None) => Scenario::from_rate(self.name, lambda, gamma, notes)?,
            (None, Some(r_cm)) => {
                Scenario::from_dipole_length_cm(self.name, lambda, r_cm, notes)?
            }
            _ => {
                return Err(Error::domain(
                    "scenario file must provide exactly one of gamma_per_s or dipole_cm",
                ))
            }
        };
        if let Some(cm) = self.paper_dipole_cm {
            scenario = scenario.with_paper_dipole_cm(cm);
        }
        if let Some(v_per_cm) = self.paper_field_v_per_cm {
            let spot = self
                .paper_field_spot_m
                .unwrap_or(scenario.lambda / 2.0);
            let t0 = self.paper_field_t0_s.unwrap_or(1e-7);
            scenario = scenario.with_paper_field(FieldCalibration {
                field: v_per_cm * 100.0,
                spot_side: spot,
                t0,
            });
        }
        Ok(scenario)
    }
}

/// What a budget run should aim for.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BudgetRequest {
    /// Target phase magnitude, rad.
    pub target_phase: f64,
    /// Focus side, m.
    pub spot_side: f64,
    /// Beam duration, s.
    pub t0: f64,
    /// Detuning, rad/s.
    pub delta: f64,
    /// Refractive index at the focus.
    pub refraction: f64,
}

impl BudgetRequest {
    pub fn new(target_phase: f64, spot_side: f64, t0: f64, delta: f64, refraction: f64) -> Result<Self> {
        if !(target_phase > 0.0) {
            return Err(Error::domain("target phase must be positive"));
        }
        if !(spot_side > 0.0) {
            return Err(Error::domain("spot side must be positive"));
        }
        if !(t0 > 0.0) {
            return Err(Error::domain("duration must be positive"));
        }
        if !(refraction >= 1.0) {
            return Err(Error::domain("refractive index must be at least 1"));
        }
        Ok(BudgetRequest {
            target_phase,
            spot_side,
            t0,
            delta,
            refraction,
        })
    }
}

/// Dipole and field provenance for a budget run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PlanOptions {
    pub dipole_source: Provenance,
    pub field_model: Provenance,
    pub cap: u64,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions {
            dipole_source: Provenance::Formula,
            field_model: Provenance::Formula,
            cap: DEFAULT_PHOTON_CAP,
        }
    }
}

/// Result of a photon-budget search.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhotonBudget {
    /// Smallest photon number meeting the target.
    pub n_photons: u64,
    /// |phase| actually reached at that photon number, rad.
    pub achieved_phase: f64,
    /// Closed-form seed the integer search started from.
    pub seed: f64,
    /// Per-photon field used, V/m.
    pub single_photon_field: f64,
    /// t₀·Ω at the returned photon number.
    pub adiabatic_ratio: f64,
    pub adiabatic: bool,
    pub dipole_source: Provenance,
    pub field_model: Provenance,
}

fn single_photon_field_for(
    scenario: &Scenario,
    request: &BudgetRequest,
    model: Provenance,
) -> Result<f64> {
    match model {
        Provenance::Formula => Ok(dressed::single_photon_field(
            scenario.omega(),
            request.t0,
            request.spot_side,
            request.refraction,
        )),
        Provenance::Paper => {
            let cal = scenario.paper_field().ok_or_else(|| {
                Error::domain(format!(
                    "scenario '{}' has no published field calibration",
                    scenario.name
                ))
            })?;
            Ok(cal.single_photon_field(request.spot_side, request.t0, request.refraction))
        }
    }
}

/// Smallest integer N₀ ≥ 1 whose exact dressed phase difference meets the
/// target, found from a closed-form seed and a monotone bisection.
pub fn photons_required(
    scenario: &Scenario,
    request: &BudgetRequest,
    options: &PlanOptions,
) -> Result<PhotonBudget> {
    let d_min = scenario.lambda / (2.0 * request.refraction);
    if request.spot_side < d_min - 1e-12 {
        return Err(Error::domain(format!(
            "requested spot {:.3e} m is below the diffraction limit {:.3e} m",
            request.spot_side, d_min
        )));
    }
    let kappa = 2.0 * scenario.dipole(options.dipole_source)? / HBAR;
    let e1 = single_photon_field_for(scenario, request, options.field_model)?;
    let phase = |n: u64| -> f64 {
        dressed::phase_difference_from_field(kappa, e1, n, request.delta, request.t0).abs()
    };

    let cap = options.cap.max(1);
    let target = request.target_phase;
    if phase(cap) < target {
        return Err(Error::BudgetExceeded {
            cap,
            phase_at_cap: phase(cap),
        });
    }

    // closed-form seed from inverting Ω_N + Ω_{N+1} ≈ 2√(Δ²/4 + κ²ℰ₁²(N+½))
    let s = (target / request.t0 + request.delta.abs()) / 2.0;
    let seed = ((s * s - request.delta * request.delta / 4.0) / (kappa * kappa * e1 * e1)
        - 0.5)
        .max(1.0);

    // the phase is strictly monotone in N, so bisect for the first N ≥ target
    let (mut lo, mut hi) = (1u64, cap);
    if phase(lo) >= target {
        hi = lo;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if phase(mid) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let n = hi;

    let omega_n = dressed::rabi_from_field(kappa, e1 * (n as f64).sqrt(), request.delta);
    let ratio = request.t0 * omega_n;
    Ok(PhotonBudget {
        n_photons: n,
        achieved_phase: phase(n),
        seed,
        single_photon_field: e1,
        adiabatic_ratio: ratio,
        adiabatic: ratio >= dressed::DEFAULT_ADIABATIC_THRESHOLD,
        dipole_source: options.dipole_source,
        field_model: options.field_model,
    })
}

/// One provenance combination of the estimate chain.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChainEntry {
    pub dipole_source: Provenance,
    pub field_source: Provenance,
    /// Dipole length, cm (the spectroscopy convention).
    pub dipole_length_cm: f64,
    /// κ = 2d/ħ, rad/s per V/m.
    pub kappa: f64,
    /// Largest single-photon field at the diffraction limit, V/m.
    pub field_max: f64,
    /// Single-photon phase difference 2·κ·ℰᵐᵃˣ·t₀ (the √N₀+√(N₀+1) → 2
    /// estimate at N₀ = 1), rad.
    pub phase_max: f64,
    /// t₀·κ·ℰᵐᵃˣ.
    pub adiabatic_ratio: f64,
    pub adiabatic: bool,
}

/// The full estimate chain for a scenario at diffraction-limited focus, one
/// entry per available (dipole, field) provenance pair.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub lambda_m: f64,
    pub omega_rad_s: f64,
    pub t0_s: f64,
    /// Diffraction-limited spot side λ/2 (n = 1), m.
    pub spot_side_m: f64,
    pub entries: Vec<ChainEntry>,
}

/// Evaluate the scenario chain at duration t₀ and diffraction-limited
/// focus. Each entry records which provenance produced it; the phase uses
/// the same field and dipole throughout a chain, never a mixture.
pub fn scenario_report(scenario: &Scenario, t0: f64) -> Result<ScenarioReport> {
    if !(t0 > 0.0) {
        return Err(Error::domain("duration must be positive"));
    }
    let omega = scenario.omega();
    let d0 = scenario.lambda / 2.0;

    let mut fields = vec![(Provenance::Formula, max_field(scenario.lambda, t0)?)];
    if let Some(cal) = scenario.paper_field() {
        fields.push((Provenance::Paper, cal.single_photon_field(d0, t0, 1.0)));
    }

    let mut entries = Vec::new();
    for (dipole_source, dipole) in scenario.available_dipoles() {
        let kappa = 2.0 * dipole / HBAR;
        for &(field_source, field_max) in &fields {
            let phase_max = 2.0 * kappa * field_max * t0;
            let ratio = t0 * kappa * field_max;
            entries.push(ChainEntry {
                dipole_source,
                field_source,
                dipole_length_cm: units::dipole_to_length_cm(dipole)?,
                kappa,
                field_max,
                phase_max,
                adiabatic_ratio: ratio,
                adiabatic: ratio >= dressed::DEFAULT_ADIABATIC_THRESHOLD,
            });
        }
    }

    Ok(ScenarioReport {
        scenario: scenario.name.clone(),
        lambda_m: scenario.lambda,
        omega_rad_s: omega,
        t0_s: t0,
        spot_side_m: d0,
        entries,
    })
}

impl ScenarioReport {
    pub fn entry(&self, dipole: Provenance, field: Provenance) -> Option<&ChainEntry> {
        self.entries
            .iter()
            .find(|e| e.dipole_source == dipole && e.field_source == field)
    }
}
