//! Phase-gate physics for optical qubits driven by classical pulses and
//! few-photon beams.
//!
//! The library models a two-level optical qubit in several layers:
//!
//! - [`units`] — physical constants and the conversions needed to feed every
//!   formula in one coherent SI system.
//! - [`dynamics`] — time evolution of the amplitude pair under a classical
//!   pulse: the carrier-resolved ODE, the resonant closed form, and the
//!   near-resonant approximation.
//! - [`gates`] — single-qubit gate algebra, propagator extraction from pulse
//!   evolutions, and gate-equivalence metrics.
//! - [`dressed`] — dressed states of the qubit + photon-beam system and the
//!   phase shifts they accumulate.
//! - [`planner`] — named physical presets (Tm³⁺:CaF₂, SiV⁻, Ca⁺) and inverse
//!   design: how many photons buy a target phase at a given focus.
//! - [`qft`] — the quantum Fourier transform circuit, a direct-DFT
//!   verification harness, and per-gate photon schedules.
//!
//! Several published reference numbers bundled with the presets disagree with
//! direct evaluation of the formulas they are attributed to; the library keeps
//! both values, labeled by provenance, and [`discrepancy`] records each
//! mismatch with its ratio so nothing is silently reconciled.

// validation uses `!(x > 0.0)` rather than `x <= 0.0` so NaN inputs are
// rejected instead of slipping through the negated branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod discrepancy;
pub mod dressed;
pub mod dynamics;
pub mod error;
pub mod gates;
pub mod planner;
pub mod qft;
pub mod units;

pub use error::{Error, Result};
