//! Physical constants and unit conversions.
//!
//! Everything downstream works in one coherent SI system: seconds, angular
//! frequency in rad/s, joules, metres, V/m for fields, C·m for dipole
//! moments, radians for phases. Inputs quoted in eV, nm, cm or V/cm are
//! converted at the boundary by the helpers here, so no formula ever mixes
//! unit systems.

use serde::Serialize;

use crate::error::{Error, Result};

/// The constants every formula in the crate is evaluated with.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light in vacuum, m/s.
    pub c: f64,
    /// Elementary charge, C.
    pub e_charge: f64,
    /// Impedance of free space, Ω. Taken as the round 376.7 Ω used by the
    /// field formulas, not recomputed from μ₀.
    pub z0: f64,
    /// Fine-structure constant, dimensionless.
    pub alpha: f64,
}

pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    hbar: HBAR,
    c: C,
    e_charge: E_CHARGE,
    z0: Z0,
    alpha: ALPHA,
};

pub const HBAR: f64 = 1.054_571_817e-34;
pub const C: f64 = 2.997_924_58e8;
pub const E_CHARGE: f64 = 1.602_176_634e-19;
pub const Z0: f64 = 376.7;
pub const ALPHA: f64 = 7.297_352_569_3e-3;

/// Photon energy in eV to angular frequency in rad/s.
pub fn energy_ev_to_angular_frequency(ev: f64) -> Result<f64> {
    if !(ev > 0.0) {
        return Err(Error::domain(format!("energy must be positive, got {ev} eV")));
    }
    Ok(ev * E_CHARGE / HBAR)
}

/// Inverse of [`energy_ev_to_angular_frequency`].
pub fn angular_frequency_to_energy_ev(omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::domain(format!(
            "angular frequency must be positive, got {omega} rad/s"
        )));
    }
    Ok(omega * HBAR / E_CHARGE)
}

/// Vacuum wavelength in metres to angular frequency in rad/s.
pub fn wavelength_to_angular_frequency(lambda_m: f64) -> Result<f64> {
    if !(lambda_m > 0.0) {
        return Err(Error::domain(format!(
            "wavelength must be positive, got {lambda_m} m"
        )));
    }
    Ok(2.0 * std::f64::consts::PI * C / lambda_m)
}

/// Inverse of [`wavelength_to_angular_frequency`].
pub fn angular_frequency_to_wavelength(omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::domain(format!(
            "angular frequency must be positive, got {omega} rad/s"
        )));
    }
    Ok(2.0 * std::f64::consts::PI * C / omega)
}

/// Dipole matrix element quoted as a length in cm to a dipole moment in C·m.
///
/// Spectroscopy papers often quote ⟨0|r|1⟩ as a bare length; the implicit
/// factor of the elementary charge is made explicit here.
pub fn dipole_from_length_cm(r_cm: f64) -> Result<f64> {
    if r_cm < 0.0 {
        return Err(Error::domain(format!(
            "dipole length must be non-negative, got {r_cm} cm"
        )));
    }
    Ok(E_CHARGE * r_cm * 1e-2)
}

/// Inverse of [`dipole_from_length_cm`]: dipole moment in C·m back to a
/// matrix-element length in cm.
pub fn dipole_to_length_cm(dipole: f64) -> Result<f64> {
    if dipole < 0.0 {
        return Err(Error::domain(format!(
            "dipole moment must be non-negative, got {dipole} C·m"
        )));
    }
    Ok(dipole / E_CHARGE * 1e2)
}

/// The dimensions tracked by [`Quantity`]. Only what the formulas use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Time,
    Frequency,
    Energy,
    Length,
    Field,
    Dipole,
    Phase,
    Dimensionless,
}

pub const ALL_DIMENSIONS: [Dimension; 8] = [
    Dimension::Time,
    Dimension::Frequency,
    Dimension::Energy,
    Dimension::Length,
    Dimension::Field,
    Dimension::Dipole,
    Dimension::Phase,
    Dimension::Dimensionless,
];

impl Dimension {
    pub fn unit_symbol(self) -> &'static str {
        match self {
            Dimension::Time => "s",
            Dimension::Frequency => "rad/s",
            Dimension::Energy => "J",
            Dimension::Length => "m",
            Dimension::Field => "V/m",
            Dimension::Dipole => "C·m",
            Dimension::Phase => "rad",
            Dimension::Dimensionless => "",
        }
    }
}

/// A value tagged with its dimension. Addition and subtraction are checked;
/// mixing dimensions is an error rather than a silent unit bug.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dimension: Dimension) -> Self {
        Quantity { value, dimension }
    }

    pub fn seconds(value: f64) -> Self {
        Self::new(value, Dimension::Time)
    }
    pub fn radians_per_second(value: f64) -> Self {
        Self::new(value, Dimension::Frequency)
    }
    pub fn joules(value: f64) -> Self {
        Self::new(value, Dimension::Energy)
    }
    pub fn metres(value: f64) -> Self {
        Self::new(value, Dimension::Length)
    }
    pub fn volts_per_metre(value: f64) -> Self {
        Self::new(value, Dimension::Field)
    }
    pub fn coulomb_metres(value: f64) -> Self {
        Self::new(value, Dimension::Dipole)
    }
    pub fn radians(value: f64) -> Self {
        Self::new(value, Dimension::Phase)
    }
    pub fn scalar(value: f64) -> Self {
        Self::new(value, Dimension::Dimensionless)
    }

    pub fn try_add(self, other: Quantity) -> Result<Quantity> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: self.dimension,
                right: other.dimension,
            });
        }
        Ok(Quantity::new(self.value + other.value, self.dimension))
    }

    pub fn try_sub(self, other: Quantity) -> Result<Quantity> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                op: "subtract",
                left: self.dimension,
                right: other.dimension,
            });
        }
        Ok(Quantity::new(self.value - other.value, self.dimension))
    }

    /// Scale by a dimensionless factor.
    pub fn scale(self, factor: f64) -> Quantity {
        Quantity::new(self.value * factor, self.dimension)
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sym = self.dimension.unit_symbol();
        if sym.is_empty() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} {}", self.value, sym)
        }
    }
}
