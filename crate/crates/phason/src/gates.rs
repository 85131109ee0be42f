//! Single-qubit gate algebra: named gates, dyadic phase gates R_k,
//! propagator extraction from pulse evolutions, and equivalence metrics.
//!
//! Gate equality is judged up to a global phase, the physics convention.
//! A stricter diagonal-phase equivalence is also provided for claims of the
//! form "this pulse realises H up to local phases".

use num_complex::Complex64 as C64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dynamics::{self, QubitState};
use crate::error::{Error, Result};

/// Unitarity tolerance for named gates and closed-form propagators.
pub const UNITARY_TOL_CLOSED: f64 = 1e-12;
/// Unitarity tolerance for propagators extracted from the ODE.
pub const UNITARY_TOL_ODE: f64 = 1e-8;

/// A 2×2 complex matrix, unitary within the tolerance it was checked at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateMatrix {
    m: [[C64; 2]; 2],
}

impl GateMatrix {
    fn raw(m: [[C64; 2]; 2]) -> Self {
        GateMatrix { m }
    }

    /// Build from entries, enforcing unitarity within `tol` elementwise.
    pub fn from_entries(m: [[C64; 2]; 2], tol: f64) -> Result<Self> {
        let g = GateMatrix::raw(m);
        let defect = g.unitarity_defect();
        if defect > tol {
            return Err(Error::NonUnitary { defect, tol });
        }
        Ok(g)
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m[row][col]
    }

    pub fn entries(&self) -> [[C64; 2]; 2] {
        self.m
    }

    pub fn identity() -> Self {
        GateMatrix::raw([
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        ])
    }

    pub fn dagger(&self) -> GateMatrix {
        GateMatrix::raw([
            [self.m[0][0].conj(), self.m[1][0].conj()],
            [self.m[0][1].conj(), self.m[1][1].conj()],
        ])
    }

    pub fn mul(&self, other: &GateMatrix) -> GateMatrix {
        let a = &self.m;
        let b = &other.m;
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        GateMatrix::raw(out)
    }

    /// max elementwise |G†G − I|.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.dagger().mul(self);
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                };
                worst = worst.max((p.m[i][j] - target).norm());
            }
        }
        worst
    }

    /// Apply to a state (column-vector convention).
    pub fn apply(&self, s: &QubitState) -> Result<QubitState> {
        QubitState::new(
            self.m[0][0] * s.c0() + self.m[0][1] * s.c1(),
            self.m[1][0] * s.c0() + self.m[1][1] * s.c1(),
        )
    }

    fn trace_of_dagger_product(&self, other: &GateMatrix) -> C64 {
        // tr(self† · other)
        let a = &self.m;
        let b = &other.m;
        a[0][0].conj() * b[0][0]
            + a[1][0].conj() * b[1][0]
            + a[0][1].conj() * b[0][1]
            + a[1][1].conj() * b[1][1]
    }
}

// Wire format: row-major array of [re, im] pairs.
impl Serialize for GateMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let flat: [[f64; 2]; 4] = [
            [self.m[0][0].re, self.m[0][0].im],
            [self.m[0][1].re, self.m[0][1].im],
            [self.m[1][0].re, self.m[1][0].im],
            [self.m[1][1].re, self.m[1][1].im],
        ];
        flat.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GateMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let flat = <[[f64; 2]; 4]>::deserialize(deserializer)?;
        let c = |p: [f64; 2]| C64::new(p[0], p[1]);
        GateMatrix::from_entries(
            [[c(flat[0]), c(flat[1])], [c(flat[2]), c(flat[3])]],
            UNITARY_TOL_CLOSED,
        )
        .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// The named single-qubit gates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateName {
    I,
    H,
    X,
    Y,
    /// Phase gate diag(1, e^{iθ}).
    Z(f64),
    /// Dyadic phase gate R_k = Z(2π/2^k), k ≥ 0 (R_0 = Z(2π) ≅ I).
    R(u32),
}

impl GateName {
    /// Parse "I", "H", "X", "Y", "Z(θ)" (θ in radians) or "R_k".
    pub fn parse(s: &str) -> Result<GateName> {
        let t = s.trim();
        match t {
            "I" => return Ok(GateName::I),
            "H" => return Ok(GateName::H),
            "X" => return Ok(GateName::X),
            "Y" => return Ok(GateName::Y),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("Z(").and_then(|r| r.strip_suffix(')')) {
            if let Ok(theta) = rest.trim().parse::<f64>() {
                return Ok(GateName::Z(theta));
            }
        }
        if let Some(rest) = t.strip_prefix("R_").or_else(|| t.strip_prefix('R')) {
            if let Ok(k) = rest.trim().parse::<u32>() {
                return Ok(GateName::R(k));
            }
        }
        Err(Error::UnknownGate(s.to_string()))
    }
}

impl std::fmt::Display for GateName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GateName::I => write!(f, "I"),
            GateName::H => write!(f, "H"),
            GateName::X => write!(f, "X"),
            GateName::Y => write!(f, "Y"),
            GateName::Z(theta) => write!(f, "Z({theta:.4})"),
            GateName::R(k) => write!(f, "R_{k}"),
        }
    }
}

/// The matrix of a named gate.
pub fn named_gate(name: &GateName) -> GateMatrix {
    let z = C64::new(0.0, 0.0);
    let o = C64::new(1.0, 0.0);
    match name {
        GateName::I => GateMatrix::identity(),
        GateName::H => {
            let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            GateMatrix::raw([[h, h], [h, -h]])
        }
        GateName::X => GateMatrix::raw([[z, o], [o, z]]),
        GateName::Y => GateMatrix::raw([
            [z, C64::new(0.0, -1.0)],
            [C64::new(0.0, 1.0), z],
        ]),
        GateName::Z(theta) => GateMatrix::raw([[o, z], [z, C64::from_polar(1.0, *theta)]]),
        GateName::R(k) => {
            let theta = std::f64::consts::TAU / 2f64.powi(*k as i32);
            named_gate(&GateName::Z(theta))
        }
    }
}

/// Extract the propagator of an evolution: the columns are the images of the
/// basis states. Unitarity is enforced within `unitarity_tol`; an ODE that
/// drifted past it reports an integration-quality error.
pub fn extract_propagator<E>(evolve: E, unitarity_tol: f64) -> Result<GateMatrix>
where
    E: Fn(&QubitState) -> Result<QubitState>,
{
    let col0 = evolve(&QubitState::ground())?;
    let col1 = evolve(&QubitState::excited())?;
    GateMatrix::from_entries(
        [[col0.c0(), col1.c0()], [col0.c1(), col1.c1()]],
        unitarity_tol,
    )
}

/// Propagator of the resonant closed form at (Θ, φ).
pub fn propagator_resonant(theta: f64, phi: f64) -> GateMatrix {
    extract_propagator(
        |s| Ok(dynamics::evolve_resonant(s, theta, phi)),
        UNITARY_TOL_CLOSED,
    )
    .expect("closed-form map is unitary")
}

/// Propagator of the near-resonant closed form at (Θ̃, φ).
pub fn propagator_detuned(theta_tilde: f64, phi: f64) -> GateMatrix {
    extract_propagator(
        |s| Ok(dynamics::evolve_detuned(s, theta_tilde, phi)),
        UNITARY_TOL_CLOSED,
    )
    .expect("closed-form map is unitary")
}

/// Propagator of the carrier-resolved ODE for a fixed pulse.
pub fn propagator_full(
    sys: &dynamics::TwoLevelSystem,
    pulse: &dynamics::PulseSpec,
    tol: f64,
) -> Result<GateMatrix> {
    extract_propagator(
        |s| dynamics::evolve_full(s, sys, pulse, tol).map(|t| t.final_state()),
        UNITARY_TOL_ODE,
    )
}

/// min over unit-modulus λ of ‖a − λb‖_F, in closed form:
/// λ = tr(b†a)/|tr(b†a)|, falling back to λ = 1 when the trace vanishes.
pub fn distance_up_to_global_phase(a: &GateMatrix, b: &GateMatrix) -> f64 {
    let tr = b.trace_of_dagger_product(a);
    let lambda = if tr.norm() > 0.0 {
        tr / tr.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let mut sum = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            sum += (a.m[i][j] - lambda * b.m[i][j]).norm_sqr();
        }
    }
    sum.sqrt()
}

/// Whether a = λ·diag(1,μ)·b·diag(1,ν) for some unit-modulus λ, μ, ν,
/// within `tol` elementwise. Solved from entry ratios; the zero pattern of a
/// unitary matrix (full, diagonal, or anti-diagonal) is handled by cases.
pub fn equivalent_up_to_diagonal_phase(a: &GateMatrix, b: &GateMatrix, tol: f64) -> bool {
    // phases cannot change magnitudes
    for i in 0..2 {
        for j in 0..2 {
            if (a.m[i][j].norm() - b.m[i][j].norm()).abs() > tol {
                return false;
            }
        }
    }
    let unit = |z: C64| if z.norm() > 0.0 { z / z.norm() } else { C64::new(1.0, 0.0) };
    // solve λ (and fold ν into it when the top-left entry vanishes)
    let (lambda, nu) = if b.m[0][0].norm() > tol {
        let lambda = unit(a.m[0][0] / b.m[0][0]);
        let nu = if b.m[0][1].norm() > tol {
            unit(a.m[0][1] / (lambda * b.m[0][1]))
        } else {
            C64::new(1.0, 0.0)
        };
        (lambda, nu)
    } else if b.m[0][1].norm() > tol {
        // anti-diagonal-ish: gauge ν = 1, take λ from the top-right entry
        (unit(a.m[0][1] / b.m[0][1]), C64::new(1.0, 0.0))
    } else {
        return false; // zero first row: not unitary
    };
    let mu = if b.m[1][0].norm() > tol {
        unit(a.m[1][0] / (lambda * b.m[1][0]))
    } else if b.m[1][1].norm() > tol {
        unit(a.m[1][1] / (lambda * nu * b.m[1][1]))
    } else {
        return false;
    };
    // residual check of all four entries
    let model = [
        [lambda * b.m[0][0], lambda * nu * b.m[0][1]],
        [lambda * mu * b.m[1][0], lambda * mu * nu * b.m[1][1]],
    ];
    (0..2).all(|i| (0..2).all(|j| (a.m[i][j] - model[i][j]).norm() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::evolve_resonant;

    const PI: f64 = std::f64::consts::PI;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    /// Deterministic pseudo-random unitary from three angles and a phase.
    fn random_unitary(rng: &mut u64) -> GateMatrix {
        let mut next = || {
            *rng = rng
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (*rng >> 11) as f64 / (1u64 << 53) as f64
        };
        let alpha = next() * std::f64::consts::TAU;
        let beta = next() * PI / 2.0;
        let gamma = next() * std::f64::consts::TAU;
        let delta = next() * std::f64::consts::TAU;
        let (sb, cb) = beta.sin_cos();
        let g = C64::from_polar(1.0, alpha);
        GateMatrix::from_entries(
            [
                [
                    g * C64::from_polar(cb, gamma),
                    g * C64::from_polar(sb, delta),
                ],
                [
                    g * C64::from_polar(-sb, -delta),
                    g * C64::from_polar(cb, -gamma),
                ],
            ],
            1e-12,
        )
        .unwrap()
    }

    #[test]
    fn named_gate_identities() {
        let h = named_gate(&GateName::H);
        let hh = h.mul(&h);
        assert!(distance_up_to_global_phase(&hh, &GateMatrix::identity()) < 1e-15);
        let x = named_gate(&GateName::X);
        assert!(distance_up_to_global_phase(&x.mul(&x), &GateMatrix::identity()) < 1e-15);
        let y = named_gate(&GateName::Y);
        assert!(distance_up_to_global_phase(&y.mul(&y), &GateMatrix::identity()) < 1e-15);
        // Z(0) = I
        let z0 = named_gate(&GateName::Z(0.0));
        assert_eq!(z0.entries(), GateMatrix::identity().entries());
        // R_1 = Z(π) = diag(1, −1)
        let r1 = named_gate(&GateName::R(1));
        assert!(close(r1.entry(1, 1), C64::new(-1.0, 0.0), 1e-15));
        // H = (X + Z_pauli)/√2 elementwise
        let zp = named_gate(&GateName::Z(PI));
        for i in 0..2 {
            for j in 0..2 {
                let sum = (x.entry(i, j) + zp.entry(i, j)) / C64::new(2f64.sqrt(), 0.0);
                assert!(close(sum, h.entry(i, j), 1e-15));
            }
        }
    }

    #[test]
    fn z_composes_mod_tau() {
        let mut rng = 42u64;
        let mut next = || {
            rng = rng
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (rng >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU
        };
        for _ in 0..20 {
            let (t1, t2) = (next(), next());
            let prod = named_gate(&GateName::Z(t1)).mul(&named_gate(&GateName::Z(t2)));
            let sum = named_gate(&GateName::Z((t1 + t2) % std::f64::consts::TAU));
            assert!(distance_up_to_global_phase(&prod, &sum) < 1e-12);
        }
    }

    #[test]
    fn gate_name_parsing() {
        assert_eq!(GateName::parse("H").unwrap(), GateName::H);
        assert_eq!(GateName::parse("Z(1.5)").unwrap(), GateName::Z(1.5));
        assert_eq!(GateName::parse("R_3").unwrap(), GateName::R(3));
        assert!(GateName::parse("Q").is_err());
    }

    #[test]
    fn propagator_of_identity_map() {
        let p = propagator_resonant(0.0, 0.0);
        assert!(distance_up_to_global_phase(&p, &GateMatrix::identity()) < 1e-15);
    }

    #[test]
    fn pi_pulse_propagator_is_diagonal_phase() {
        // Θ = π, φ = 0.7 → diag(−1, −e^{−0.7i})
        let p = propagator_resonant(PI, 0.7);
        assert!(close(p.entry(0, 0), C64::new(-1.0, 0.0), 1e-12));
        assert!(close(p.entry(1, 1), -C64::from_polar(1.0, -0.7), 1e-12));
        assert!(p.entry(0, 1).norm() < 1e-12);
        assert!(p.entry(1, 0).norm() < 1e-12);
    }

    #[test]
    fn phase_gate_synthesis_on_a_theta_grid() {
        // Θ = π with φ = −θ realises Z(θ) up to global phase
        for i in 0..64 {
            let theta = i as f64 / 64.0 * std::f64::consts::TAU;
            let p = propagator_resonant(PI, -theta);
            let z = named_gate(&GateName::Z(theta));
            assert!(distance_up_to_global_phase(&p, &z) <= 1e-12);
        }
    }

    #[test]
    fn distance_examples() {
        let g = random_unitary(&mut 7u64);
        assert!(distance_up_to_global_phase(&g, &g) < 1e-15);
        // global phase is removed
        let alpha = 1.234;
        let phase = C64::from_polar(1.0, alpha);
        let e = g.entries();
        let ge = GateMatrix::from_entries(
            [
                [e[0][0] * phase, e[0][1] * phase],
                [e[1][0] * phase, e[1][1] * phase],
            ],
            1e-10,
        )
        .unwrap();
        assert!(distance_up_to_global_phase(&g, &ge) < 1e-12);
        // (I, X): trace of X vanishes, λ = 1, ‖I − X‖_F = 2
        let d = distance_up_to_global_phase(&GateMatrix::identity(), &named_gate(&GateName::X));
        assert!((d - 2.0).abs() < 1e-15);
    }

    #[test]
    fn distance_closed_form_matches_phase_scan() {
        // the closed-form λ must beat a dense scan over 10⁴ phases
        let mut rng = 99u64;
        let a = random_unitary(&mut rng);
        let b = random_unitary(&mut rng);
        let closed = distance_up_to_global_phase(&a, &b);
        let mut best = f64::INFINITY;
        for i in 0..10_000 {
            let lam = C64::from_polar(1.0, i as f64 / 10_000.0 * std::f64::consts::TAU);
            let mut sum = 0.0;
            for r in 0..2 {
                for c in 0..2 {
                    sum += (a.entry(r, c) - lam * b.entry(r, c)).norm_sqr();
                }
            }
            best = best.min(sum.sqrt());
        }
        assert!(closed <= best + 1e-9);
        assert!((closed - best).abs() < 1e-6);
    }

    #[test]
    fn distance_is_a_pseudometric() {
        let mut rng = 2024u64;
        for _ in 0..200 {
            let a = random_unitary(&mut rng);
            let b = random_unitary(&mut rng);
            let c = random_unitary(&mut rng);
            let dab = distance_up_to_global_phase(&a, &b);
            let dba = distance_up_to_global_phase(&b, &a);
            assert!((dab - dba).abs() < 1e-9);
            let dac = distance_up_to_global_phase(&a, &c);
            let dbc = distance_up_to_global_phase(&b, &c);
            assert!(dac <= dab + dbc + 1e-9);
            assert!(dab <= 2.0 * 2f64.sqrt());
        }
    }

    #[test]
    fn diagonal_phase_equivalence() {
        let h = named_gate(&GateName::H);
        assert!(equivalent_up_to_diagonal_phase(&h, &h, 1e-10));
        // the resonant map at Θ = π/4, φ = −π/2 equals H·diag(1, −i),
        // so it is H up to diagonal phases but not literally H
        let p = propagator_resonant(PI / 4.0, -PI / 2.0);
        assert!(equivalent_up_to_diagonal_phase(&p, &h, 1e-10));
        assert!(distance_up_to_global_phase(&p, &h) > 0.1);
        // and (H, X) is not equivalent: magnitudes differ
        let x = named_gate(&GateName::X);
        assert!(!equivalent_up_to_diagonal_phase(&h, &x, 1e-2));
    }

    #[test]
    fn diagonal_phase_equivalence_scan_confirms_h_vs_x() {
        // exhaustive scan over discretised (λ, μ, ν) at 1e-2 granularity;
        // λ alone fixes the (0,0) entry, so mismatches prune early
        let h = named_gate(&GateName::H);
        let x = named_gate(&GateName::X);
        let steps = 629; // 2π / 0.01
        let tol = 0.05;
        let mut found = false;
        'outer: for i in 0..steps {
            let lam = C64::from_polar(1.0, i as f64 * 0.01);
            if (h.entry(0, 0) - lam * x.entry(0, 0)).norm() > tol {
                continue;
            }
            for j in 0..steps {
                let nu = C64::from_polar(1.0, j as f64 * 0.01);
                if (h.entry(0, 1) - lam * nu * x.entry(0, 1)).norm() > tol {
                    continue;
                }
                for k in 0..steps {
                    let mu = C64::from_polar(1.0, k as f64 * 0.01);
                    if (h.entry(1, 0) - lam * mu * x.entry(1, 0)).norm() <= tol
                        && (h.entry(1, 1) - lam * mu * nu * x.entry(1, 1)).norm() <= tol
                    {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(!found);
    }

    #[test]
    fn diagonal_equivalence_on_diagonal_pattern() {
        // diag(1, e^{iθ}) vs I differ only by ν
        let z = named_gate(&GateName::Z(0.9));
        assert!(equivalent_up_to_diagonal_phase(&z, &GateMatrix::identity(), 1e-10));
        // X vs Y differ by diagonal phases: Y = diag(1, i)·X·diag(−i, 1)·i...
        let x = named_gate(&GateName::X);
        let y = named_gate(&GateName::Y);
        assert!(equivalent_up_to_diagonal_phase(&y, &x, 1e-10));
    }

    #[test]
    fn extract_propagator_enforces_unitarity() {
        // a lossy "evolution" gets rejected
        let lossy = |_s: &QubitState| {
            QubitState::new(C64::new(0.9, 0.0), C64::new(0.0, 0.0))
                .or_else(|_| QubitState::normalized(C64::new(0.9, 0.0), C64::new(0.0, 0.0)))
        };
        // normalized columns that are not orthogonal
        let err = extract_propagator(lossy, 1e-8);
        assert!(err.is_err());
    }

    #[test]
    fn serde_round_trip() {
        let g = propagator_resonant(0.3, 0.8);
        let json = serde_json::to_string(&g).unwrap();
        let back: GateMatrix = serde_json::from_str(&json).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(g.entry(i, j), back.entry(i, j), 1e-14));
            }
        }
        // row-major [re, im] pairs
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert_eq!(v[0].as_array().unwrap().len(), 2);
    }

    #[test]
    fn apply_matches_evolution() {
        let p = propagator_resonant(0.77, -0.2);
        let s = QubitState::normalized(C64::new(0.6, 0.2), C64::new(0.1, -0.75)).unwrap();
        let via_matrix = p.apply(&s).unwrap();
        let via_map = evolve_resonant(&s, 0.77, -0.2);
        assert!(close(via_matrix.c0(), via_map.c0(), 1e-12));
        assert!(close(via_matrix.c1(), via_map.c1(), 1e-12));
    }
}
