//! The quantum Fourier transform as a circuit of Hadamard and
//! controlled-phase gates, a direct-DFT verification harness, and the
//! photon schedule of its dyadic phase family.
//!
//! Basis convention: qubit 0 is the most significant bit of the state
//! index. Qubit-reversal swaps are part of the circuit, so the materialized
//! matrix equals the DFT matrix F[j][k] = e^{2πi·jk/2ⁿ}/√2ⁿ literally, with
//! no index permutation.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::planner::{self, BudgetRequest, PlanOptions, Scenario};

/// Matrix materialization cap: 2¹⁰ × 2¹⁰ complex entries is desk scale,
/// beyond that only schedules make sense.
pub const MAX_MATRIX_QUBITS: usize = 10;

/// One gate of the circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QftGate {
    Hadamard { target: usize },
    ControlledPhase { control: usize, target: usize, theta: f64 },
    Swap { a: usize, b: usize },
}

/// The standard QFT circuit on n qubits.
#[derive(Debug, Clone, Serialize)]
pub struct QftCircuit {
    n_qubits: usize,
    gates: Vec<QftGate>,
}

/// Build the standard circuit: per qubit a Hadamard followed by
/// controlled-Z(2π/2^m) from each deeper qubit, then the qubit-reversal
/// swaps.
pub fn build_qft(n: usize) -> Result<QftCircuit> {
    if !(1..=MAX_MATRIX_QUBITS).contains(&n) {
        return Err(Error::QubitCount {
            n,
            min: 1,
            max: MAX_MATRIX_QUBITS,
        });
    }
    Ok(QftCircuit {
        n_qubits: n,
        gates: qft_gates(n),
    })
}

fn qft_gates(n: usize) -> Vec<QftGate> {
    let mut gates = Vec::new();
    for target in 0..n {
        gates.push(QftGate::Hadamard { target });
        for m in 2..=(n - target) {
            gates.push(QftGate::ControlledPhase {
                control: target + m - 1,
                target,
                theta: std::f64::consts::TAU / 2f64.powi(m as i32),
            });
        }
    }
    for a in 0..n / 2 {
        gates.push(QftGate::Swap { a, b: n - 1 - a });
    }
    gates
}

impl QftCircuit {
    /// A circuit from an explicit gate list (used by the verification
    /// harness to probe perturbed circuits).
    pub fn from_gates(n_qubits: usize, gates: Vec<QftGate>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::QubitCount {
                n: 0,
                min: 1,
                max: MAX_MATRIX_QUBITS,
            });
        }
        for g in &gates {
            let ok = match *g {
                QftGate::Hadamard { target } => target < n_qubits,
                QftGate::ControlledPhase { control, target, .. } => {
                    control < n_qubits && target < n_qubits && control != target
                }
                QftGate::Swap { a, b } => a < n_qubits && b < n_qubits && a != b,
            };
            if !ok {
                return Err(Error::domain("gate indices out of range"));
            }
        }
        Ok(QftCircuit { n_qubits, gates })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[QftGate] {
        &self.gates
    }

    /// Apply the circuit in place to a 2ⁿ state vector.
    pub fn apply(&self, state: &mut Array1<C64>) {
        let n = self.n_qubits;
        assert_eq!(state.len(), 1 << n, "state length must be 2^n");
        let bit = |q: usize| 1usize << (n - 1 - q); // qubit 0 = MSB
        for g in &self.gates {
            match *g {
                QftGate::Hadamard { target } => {
                    let mask = bit(target);
                    let s = std::f64::consts::FRAC_1_SQRT_2;
                    for i in 0..state.len() {
                        if i & mask == 0 {
                            let a = state[i];
                            let b = state[i | mask];
                            state[i] = (a + b) * s;
                            state[i | mask] = (a - b) * s;
                        }
                    }
                }
                QftGate::ControlledPhase { control, target, theta } => {
                    let mask = bit(control) | bit(target);
                    let phase = C64::from_polar(1.0, theta);
                    for i in 0..state.len() {
                        if i & mask == mask {
                            state[i] *= phase;
                        }
                    }
                }
                QftGate::Swap { a, b } => {
                    let (ma, mb) = (bit(a), bit(b));
                    for i in 0..state.len() {
                        if i & ma != 0 && i & mb == 0 {
                            state.swap(i, (i & !ma) | mb);
                        }
                    }
                }
            }
        }
    }

    /// Materialize the full matrix by applying the circuit to each basis
    /// state; capped at [`MAX_MATRIX_QUBITS`].
    pub fn matrix(&self) -> Result<Array2<C64>> {
        if self.n_qubits > MAX_MATRIX_QUBITS {
            return Err(Error::QubitCount {
                n: self.n_qubits,
                min: 1,
                max: MAX_MATRIX_QUBITS,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = Array2::zeros((dim, dim));
        for col in 0..dim {
            let mut v = Array1::zeros(dim);
            v[col] = C64::new(1.0, 0.0);
            self.apply(&mut v);
            for row in 0..dim {
                m[(row, col)] = v[row];
            }
        }
        Ok(m)
    }
}

/// The DFT matrix F[j][k] = e^{2πi·jk/2ⁿ}/√2ⁿ, constructed directly from
/// its definition — the reference the circuit is verified against.
pub fn dft_matrix(n: usize) -> Array2<C64> {
    let dim = 1usize << n;
    let norm = 1.0 / (dim as f64).sqrt();
    Array2::from_shape_fn((dim, dim), |(j, k)| {
        // reduce j*k mod 2^n before the float multiply to keep the phase
        // argument small
        let jk = (j * k) % dim;
        C64::from_polar(norm, std::f64::consts::TAU * jk as f64 / dim as f64)
    })
}

/// Deviation of a circuit from the DFT, plus its unitarity defect.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerificationReport {
    /// max elementwise |circuit − DFT|.
    pub max_deviation: f64,
    /// max elementwise |U†U − I|.
    pub unitarity_defect: f64,
}

pub fn verify_circuit(circuit: &QftCircuit) -> Result<VerificationReport> {
    let m = circuit.matrix()?;
    let f = dft_matrix(circuit.n_qubits());
    let max_deviation = m
        .iter()
        .zip(f.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let dim = m.nrows();
    let mut unitarity_defect = 0.0f64;
    let mh = m.mapv(|z| z.conj()).reversed_axes();
    let prod = mh.dot(&m);
    for i in 0..dim {
        for j in 0..dim {
            let target = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            unitarity_defect = unitarity_defect.max((prod[(i, j)] - target).norm());
        }
    }
    Ok(VerificationReport {
        max_deviation,
        unitarity_defect,
    })
}

/// Multiplicity of each distinct dyadic phase Z(2π/2^k), k = 2..n, in the
/// n-qubit QFT: the controlled-R_k count is n − k + 1. Scales to any n
/// without building the circuit.
pub fn phase_multiplicities(n: usize) -> Vec<(u32, u64)> {
    (2..=n as u32).map(|k| (k, (n as u64) - (k as u64) + 1)).collect()
}

/// One row of the phase schedule.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScheduleEntry {
    /// Dyadic index: θ = 2π/2^k.
    pub k: u32,
    pub theta_rad: f64,
    /// How many controlled-phase gates of this angle the circuit contains.
    pub multiplicity: u64,
    /// Photons for one gate at this angle.
    pub photons: u64,
    /// multiplicity × photons.
    pub total_photons: u64,
    /// Phase actually reached by that photon number, rad.
    pub achieved_phase: f64,
    pub adiabatic_ratio: f64,
}

/// Photon budgets for every dyadic phase in a circuit.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseSchedule {
    pub n_qubits: usize,
    pub scenario: String,
    pub dipole_source: planner::Provenance,
    pub field_model: planner::Provenance,
    pub spot_side_m: f64,
    pub t0_s: f64,
    pub delta_rad_s: f64,
    pub entries: Vec<ScheduleEntry>,
    /// Sum over entries of multiplicity × photons.
    pub grand_total_photons: u64,
    /// What the budgets cover.
    pub assumptions: String,
}

const SCHEDULE_ASSUMPTIONS: &str = "budgets cover the single-qubit phase rotation of each \
     controlled gate; the two-qubit control mechanism is modeled as ideal \
     and costed separately by whatever implements it";

/// Budget the dyadic phases of a built circuit.
pub fn phase_schedule(
    circuit: &QftCircuit,
    scenario: &Scenario,
    spot_side: f64,
    t0: f64,
    delta: f64,
    options: &PlanOptions,
) -> Result<PhaseSchedule> {
    // count distinct controlled-phase angles present in the gate list
    let mut counts: Vec<(u32, u64)> = Vec::new();
    for g in circuit.gates() {
        if let QftGate::ControlledPhase { theta, .. } = *g {
            let k = (std::f64::consts::TAU / theta).log2().round() as u32;
            match counts.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, c)) => *c += 1,
                None => counts.push((k, 1)),
            }
        }
    }
    counts.sort_unstable_by_key(|&(k, _)| k);
    schedule_from_counts(
        circuit.n_qubits(),
        &counts,
        scenario,
        spot_side,
        t0,
        delta,
        options,
    )
}

/// Budget the dyadic phases of the n-qubit QFT without materializing the
/// circuit; usable for any n.
pub fn phase_schedule_for(
    n: usize,
    scenario: &Scenario,
    spot_side: f64,
    t0: f64,
    delta: f64,
    options: &PlanOptions,
) -> Result<PhaseSchedule> {
    if n == 0 {
        return Err(Error::QubitCount {
            n: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let counts = phase_multiplicities(n);
    schedule_from_counts(n, &counts, scenario, spot_side, t0, delta, options)
}

fn schedule_from_counts(
    n: usize,
    counts: &[(u32, u64)],
    scenario: &Scenario,
    spot_side: f64,
    t0: f64,
    delta: f64,
    options: &PlanOptions,
) -> Result<PhaseSchedule> {
    let mut entries = Vec::new();
    let mut grand_total = 0u64;
    for &(k, multiplicity) in counts {
        let theta = std::f64::consts::TAU / 2f64.powi(k as i32);
        let request = BudgetRequest::new(theta, spot_side, t0, delta, 1.0)?;
        let budget = planner::photons_required(scenario, &request, options)?;
        let total = multiplicity * budget.n_photons;
        grand_total += total;
        entries.push(ScheduleEntry {
            k,
            theta_rad: theta,
            multiplicity,
            photons: budget.n_photons,
            total_photons: total,
            achieved_phase: budget.achieved_phase,
            adiabatic_ratio: budget.adiabatic_ratio,
        });
    }
    Ok(PhaseSchedule {
        n_qubits: n,
        scenario: scenario.name.clone(),
        dipole_source: options.dipole_source,
        field_model: options.field_model,
        spot_side_m: spot_side,
        t0_s: t0,
        delta_rad_s: delta,
        entries,
        grand_total_photons: grand_total,
        assumptions: SCHEDULE_ASSUMPTIONS.to_string(),
    })
}

impl PhaseSchedule {
    /// CSV export: k, theta_rad, multiplicity, photons, total_photons.
    pub fn write_csv<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        write!(w, "k,theta_rad,multiplicity,photons,total_photons\r\n")?;
        for e in &self.entries {
            write!(
                w,
                "{},{:.16e},{},{},{}\r\n",
                e.k, e.theta_rad, e.multiplicity, e.photons, e.total_photons
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::Provenance;

    #[test]
    fn gate_counts_follow_the_standard_structure() {
        for n in 1..=8 {
            let c = build_qft(n).unwrap();
            let h = c
                .gates()
                .iter()
                .filter(|g| matches!(g, QftGate::Hadamard { .. }))
                .count();
            let cp = c
                .gates()
                .iter()
                .filter(|g| matches!(g, QftGate::ControlledPhase { .. }))
                .count();
            let sw = c
                .gates()
                .iter()
                .filter(|g| matches!(g, QftGate::Swap { .. }))
                .count();
            assert_eq!(h, n);
            assert_eq!(cp, n * (n - 1) / 2);
            assert_eq!(sw, n / 2);
        }
    }

    #[test]
    fn qubit_range_is_enforced() {
        assert!(build_qft(0).is_err());
        assert!(build_qft(MAX_MATRIX_QUBITS).is_ok());
        assert!(build_qft(MAX_MATRIX_QUBITS + 1).is_err());
    }

    #[test]
    fn single_qubit_qft_is_hadamard() {
        let c = build_qft(1).unwrap();
        let m = c.matrix().unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m[(0, 0)].re - s).abs() < 1e-15);
        assert!((m[(1, 1)].re + s).abs() < 1e-15);
        assert!(m[(0, 1)].im.abs() < 1e-15);
    }

    #[test]
    fn matrix_matches_direct_dft_up_to_n5() {
        for n in 1..=5 {
            let c = build_qft(n).unwrap();
            let report = verify_circuit(&c).unwrap();
            assert!(
                report.max_deviation <= 1e-12,
                "n = {n}: deviation {:.3e}",
                report.max_deviation
            );
            assert!(report.unitarity_defect <= 1e-12);
        }
    }

    #[test]
    fn dft_entry_n2_by_hand() {
        // F[1][1] = e^{2πi/4}/2 = i/2
        let f = dft_matrix(2);
        assert!((f[(1, 1)] - C64::new(0.0, 0.5)).norm() < 1e-15);
        assert!((f[(0, 0)] - C64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn columns_are_orthonormal_up_to_n8() {
        for n in [2usize, 5, 8] {
            let m = build_qft(n).unwrap().matrix().unwrap();
            let dim = 1 << n;
            for i in 0..dim {
                for j in i..dim {
                    let dot: C64 = (0..dim)
                        .map(|r| m[(r, i)].conj() * m[(r, j)])
                        .sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (dot.norm() - expect).abs() < 1e-10,
                        "n={n} cols ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_state_maps_to_uniform_superposition() {
        for n in 1..=6 {
            let c = build_qft(n).unwrap();
            let dim = 1usize << n;
            let mut v: Array1<C64> = Array1::zeros(dim);
            v[0] = C64::new(1.0, 0.0);
            c.apply(&mut v);
            let amp = 1.0 / (dim as f64).sqrt();
            for z in v.iter() {
                assert!((z - C64::new(amp, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn periodic_exponential_concentrates_on_its_frequency_bin() {
        // a sampled exponential of period 2^m lands entirely in bin 2^{n−m}
        let n = 5usize;
        let m = 2usize;
        let dim = 1usize << n;
        let freq = 1usize << (n - m);
        let c = build_qft(n).unwrap();
        let norm = 1.0 / (dim as f64).sqrt();
        let mut v: Array1<C64> = Array1::from_shape_fn(dim, |j| {
            C64::from_polar(
                norm,
                -std::f64::consts::TAU * (freq * j % dim) as f64 / dim as f64,
            )
        });
        c.apply(&mut v);
        assert!(v[freq].norm() >= 0.99, "bin amplitude {}", v[freq].norm());
    }

    #[test]
    fn tampered_circuit_is_detected() {
        let n = 3;
        let mut gates = build_qft(n).unwrap().gates().to_vec();
        for g in gates.iter_mut() {
            if let QftGate::ControlledPhase { theta, .. } = g {
                *theta += 1e-3;
                break;
            }
        }
        let tampered = QftCircuit::from_gates(n, gates).unwrap();
        let report = verify_circuit(&tampered).unwrap();
        assert!(report.max_deviation > 1e-4);
        // still unitary, just not the DFT
        assert!(report.unitarity_defect < 1e-12);
    }

    #[test]
    fn identity_circuit_deviation() {
        // an empty circuit materializes to I; its deviation from the DFT
        // at n = 2 includes |1 − 1/2| = 0.5 at entry (0,0) and peaks at
        // |1 − i/2| on the diagonal
        let c = QftCircuit::from_gates(2, Vec::new()).unwrap();
        let m = c.matrix().unwrap();
        let f = dft_matrix(2);
        let at00 = (m[(0, 0)] - f[(0, 0)]).norm();
        assert!((at00 - 0.5).abs() < 1e-15);
        let report = verify_circuit(&c).unwrap();
        assert!(report.max_deviation >= 0.5);
        assert!((report.max_deviation - (1.0f64 + 0.25).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn schedule_multiplicities() {
        // n = 4: distinct phases π/2, π/4, π/8 with multiplicities 3, 2, 1
        assert_eq!(phase_multiplicities(4), vec![(2, 3), (3, 2), (4, 1)]);
        assert_eq!(phase_multiplicities(1), vec![]);

        let scenario = Scenario::preset("CaF2_Tm").unwrap();
        let options = PlanOptions {
            dipole_source: Provenance::Paper,
            field_model: Provenance::Paper,
            ..Default::default()
        };
        let circuit = build_qft(4).unwrap();
        let s = phase_schedule(&circuit, &scenario, 3e-6, 1e-7, 0.0, &options).unwrap();
        assert_eq!(s.entries.len(), 3);
        assert_eq!(
            s.entries.iter().map(|e| (e.k, e.multiplicity)).collect::<Vec<_>>(),
            vec![(2, 3), (3, 2), (4, 1)]
        );
        // consistency with the combinatorial path
        let s2 = phase_schedule_for(4, &scenario, 3e-6, 1e-7, 0.0, &options).unwrap();
        assert_eq!(
            s.entries.iter().map(|e| e.photons).collect::<Vec<_>>(),
            s2.entries.iter().map(|e| e.photons).collect::<Vec<_>>()
        );
        assert_eq!(s.grand_total_photons, s2.grand_total_photons);

        // empty schedule for one qubit
        let s1 = phase_schedule(&build_qft(1).unwrap(), &scenario, 3e-6, 1e-7, 0.0, &options)
            .unwrap();
        assert!(s1.entries.is_empty());
        assert_eq!(s1.grand_total_photons, 0);
    }

    #[test]
    fn budgets_shrink_with_the_phase() {
        let scenario = Scenario::preset("CaF2_Tm").unwrap();
        let options = PlanOptions {
            dipole_source: Provenance::Paper,
            field_model: Provenance::Paper,
            ..Default::default()
        };
        let s = phase_schedule_for(6, &scenario, 3e-6, 1e-7, 0.0, &options).unwrap();
        for w in s.entries.windows(2) {
            assert!(
                w[1].photons <= w[0].photons,
                "smaller angle needs fewer photons"
            );
        }
    }

    #[test]
    fn schedule_csv_columns() {
        let scenario = Scenario::preset("CaF2_Tm").unwrap();
        let options = PlanOptions {
            dipole_source: Provenance::Paper,
            field_model: Provenance::Paper,
            ..Default::default()
        };
        let s = phase_schedule_for(3, &scenario, 3e-6, 1e-7, 0.0, &options).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,theta_rad,multiplicity,photons,total_photons\r\n"));
        assert_eq!(text.trim_end().split("\r\n").count(), 1 + s.entries.len());
    }
}
