//! Gate-list circuits over named registers, with exact simulation.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::{CMatrix, I, ONE, ZERO};
use crate::pauli::{Pauli, PauliString};
use crate::statevector::{hadamard, pauli_gate, Gate1, Statevector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegisterRole {
    /// The encoded lattice (or its logical stand-in).
    System,
    Ancilla,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub start: usize,
    pub len: usize,
    pub role: RegisterRole,
}

impl Register {
    pub fn qubits(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }

    pub fn contains(&self, q: usize) -> bool {
        self.qubits().contains(&q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Single {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
}

impl Single {
    fn matrix(self) -> Gate1 {
        match self {
            Single::H => hadamard(),
            Single::X => pauli_gate(Pauli::X),
            Single::Y => pauli_gate(Pauli::Y),
            Single::Z => pauli_gate(Pauli::Z),
            Single::S => [[ONE, ZERO], [ZERO, I]],
            Single::Sdg => [[ONE, ZERO], [ZERO, -I]],
        }
    }

    fn adjoint(self) -> Single {
        match self {
            Single::S => Single::Sdg,
            Single::Sdg => Single::S,
            other => other,
        }
    }
}

/// `W(t) = e^{−itX}`, so `W(t)|0⟩ = cos t|0⟩ − i sin t|1⟩`.
pub fn w_gate(t: f64) -> Gate1 {
    let c = Complex64::new(t.cos(), 0.0);
    let s = Complex64::new(0.0, -t.sin());
    [[c, s], [s, c]]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum Gate {
    Single { qubit: usize, op: Single },
    Cnot { control: usize, target: usize },
    /// Full-width Pauli string.
    Pauli { pauli: PauliString },
    /// `e^{iθP}`.
    ExpPauli { theta: f64, pauli: PauliString },
    /// `P` applied when `control` is `|1⟩`.
    ControlledPauli { control: usize, pauli: PauliString },
    W { qubit: usize, t: f64 },
    /// Toffoli computing a logical AND into a clean target. Counted.
    And { controls: [usize; 2], target: usize },
    /// Uncomputation of an [`Gate::And`]; measurement-based, not counted.
    AndUncompute { controls: [usize; 2], target: usize },
    /// Multi-controlled X.
    Mcx { controls: Vec<usize>, target: usize },
    /// `R = 2|0…0⟩⟨0…0| − 1` on the listed qubits.
    Reflect { qubits: Vec<usize> },
    /// Real state preparation `|0⟩ ↦ Σ_k a_k |k⟩` on the listed qubits,
    /// realized as a Householder reflection (self-inverse).
    Prepare { qubits: Vec<usize>, amplitudes: Vec<f64> },
    /// Multiplies the state by `e^{iφ}`.
    GlobalPhase { phase: f64 },
}

impl Gate {
    pub fn adjoint(&self) -> Gate {
        match self {
            Gate::Single { qubit, op } => Gate::Single {
                qubit: *qubit,
                op: op.adjoint(),
            },
            Gate::ExpPauli { theta, pauli } => Gate::ExpPauli {
                theta: -theta,
                pauli: pauli.clone(),
            },
            Gate::W { qubit, t } => Gate::W { qubit: *qubit, t: -t },
            Gate::And { controls, target } => Gate::AndUncompute {
                controls: *controls,
                target: *target,
            },
            Gate::AndUncompute { controls, target } => Gate::And {
                controls: *controls,
                target: *target,
            },
            Gate::GlobalPhase { phase } => Gate::GlobalPhase { phase: -phase },
            Gate::Pauli { pauli } => Gate::Pauli {
                pauli: pauli.adjoint(),
            },
            other => other.clone(),
        }
    }

    /// Qubits the gate acts on (controls included).
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Single { qubit, .. } | Gate::W { qubit, .. } => vec![*qubit],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Pauli { pauli } | Gate::ExpPauli { pauli, .. } => pauli.support(),
            Gate::ControlledPauli { control, pauli } => {
                let mut q = vec![*control];
                q.extend(pauli.support());
                q
            }
            Gate::And { controls, target } | Gate::AndUncompute { controls, target } => {
                vec![controls[0], controls[1], *target]
            }
            Gate::Mcx { controls, target } => {
                let mut q = controls.clone();
                q.push(*target);
                q
            }
            Gate::Reflect { qubits } | Gate::Prepare { qubits, .. } => qubits.clone(),
            Gate::GlobalPhase { .. } => vec![],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::Single { .. } => "single",
            Gate::Cnot { .. } => "cnot",
            Gate::Pauli { .. } => "pauli",
            Gate::ExpPauli { .. } => "exp_pauli",
            Gate::ControlledPauli { .. } => "controlled_pauli",
            Gate::W { .. } => "w",
            Gate::And { .. } => "and",
            Gate::AndUncompute { .. } => "and_uncompute",
            Gate::Mcx { .. } => "mcx",
            Gate::Reflect { .. } => "reflect",
            Gate::Prepare { .. } => "prepare",
            Gate::GlobalPhase { .. } => "global_phase",
        }
    }

    pub fn apply(&self, s: &mut Statevector) -> Result<()> {
        let x = pauli_gate(Pauli::X);
        match self {
            Gate::Single { qubit, op } => s.apply_gate(*qubit, &op.matrix()),
            Gate::Cnot { control, target } => s.cnot(*control, *target),
            Gate::Pauli { pauli } => s.apply_pauli(pauli),
            Gate::ExpPauli { theta, pauli } => s.apply_exp_pauli(*theta, pauli),
            Gate::ControlledPauli { control, pauli } => s.apply_controlled_pauli(*control, pauli),
            Gate::W { qubit, t } => s.apply_gate(*qubit, &w_gate(*t)),
            Gate::And { controls, target } | Gate::AndUncompute { controls, target } => {
                s.apply_controlled_gate(controls, *target, &x)
            }
            Gate::Mcx { controls, target } => s.apply_controlled_gate(controls, *target, &x),
            Gate::Reflect { qubits } => {
                s.reflect_all_zero(qubits)?;
                s.apply_phase(-ONE);
                Ok(())
            }
            Gate::Prepare { qubits, amplitudes } => apply_householder(s, qubits, amplitudes),
            Gate::GlobalPhase { phase } => {
                s.apply_phase(Complex64::from_polar(1.0, *phase));
                Ok(())
            }
        }
    }
}

/// `U = 1 − 2|w⟩⟨w|` with `w ∝ |0⟩ − a`, so `U|0⟩ = a`.
fn apply_householder(s: &mut Statevector, qubits: &[usize], amplitudes: &[f64]) -> Result<()> {
    let k = qubits.len();
    if amplitudes.len() != 1 << k {
        return Err(Error::Invalid(format!(
            "{} amplitudes for {k} qubits",
            amplitudes.len()
        )));
    }
    let norm: f64 = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Invalid(format!("preparation amplitudes have norm {norm}")));
    }
    let mut w: Vec<f64> = amplitudes.iter().map(|a| -a).collect();
    w[0] += 1.0;
    let wn: f64 = w.iter().map(|a| a * a).sum::<f64>().sqrt();
    if wn < 1e-15 {
        return Ok(());
    }
    w.iter_mut().for_each(|a| *a /= wn);

    let n = s.n_qubits();
    let bits: Vec<usize> = qubits.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let mask: usize = bits.iter().sum();
    let spread = |j: usize| {
        bits.iter()
            .enumerate()
            .filter(|(i, _)| (j >> (k - 1 - i)) & 1 == 1)
            .map(|(_, &m)| m)
            .sum::<usize>()
    };
    let amps = s.amps_mut();
    for base in (0..amps.len()).filter(|b| b & mask == 0) {
        let dot: Complex64 = (0..1 << k).map(|j| amps[base | spread(j)] * w[j]).sum();
        for j in 0..1 << k {
            amps[base | spread(j)] -= dot * (2.0 * w[j]);
        }
    }
    Ok(())
}

/// Ordered gate list with register layout, an optional success condition on
/// ancilla outcomes, and free-form metadata.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub n_qubits: usize,
    pub registers: Vec<Register>,
    pub gates: Vec<Gate>,
    /// Ancilla outcomes that herald success (empty for deterministic circuits).
    pub success: Vec<(usize, bool)>,
    pub metadata: BTreeMap<String, String>,
}

impl Circuit {
    pub fn new(registers: Vec<Register>) -> Self {
        let n_qubits = registers.iter().map(|r| r.start + r.len).max().unwrap_or(0);
        Circuit {
            n_qubits,
            registers,
            ..Circuit::default()
        }
    }

    /// Single system register of `n` qubits.
    pub fn system(n: usize) -> Self {
        Circuit::new(vec![Register {
            name: "system".into(),
            start: 0,
            len: n,
            role: RegisterRole::System,
        }])
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn system_qubits(&self) -> Vec<usize> {
        self.registers
            .iter()
            .filter(|r| r.role == RegisterRole::System)
            .flat_map(|r| r.qubits())
            .collect()
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    /// Reversed gate list with each gate inverted.
    pub fn adjoint_gates(&self) -> Vec<Gate> {
        self.gates.iter().rev().map(Gate::adjoint).collect()
    }

    pub fn count(&self, name: &str) -> usize {
        self.gates.iter().filter(|g| g.name() == name).count()
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            if let Some(&q) = g.qubits().iter().find(|&&q| q >= self.n_qubits) {
                return Err(Error::OutOfRange {
                    what: "circuit qubit",
                    index: q,
                    limit: self.n_qubits,
                });
            }
            let width = match g {
                Gate::Pauli { pauli } | Gate::ExpPauli { pauli, .. } | Gate::ControlledPauli { pauli, .. } => {
                    Some(pauli.n_qubits())
                }
                _ => None,
            };
            if let Some(w) = width.filter(|&w| w != self.n_qubits) {
                return Err(Error::DimensionMismatch {
                    left: self.n_qubits,
                    right: w,
                });
            }
        }
        for &(q, _) in &self.success {
            if !self
                .registers
                .iter()
                .any(|r| r.role == RegisterRole::Ancilla && r.contains(q))
            {
                return Err(Error::Invalid(format!("success condition on non-ancilla qubit {q}")));
            }
        }
        Ok(())
    }

    pub fn apply(&self, s: &mut Statevector) -> Result<()> {
        if s.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: s.n_qubits(),
            });
        }
        self.gates.iter().try_for_each(|g| g.apply(s))
    }

    /// Dense unitary, column by column.
    pub fn unitary(&self) -> Result<CMatrix> {
        let dim = 1usize << self.n_qubits;
        let mut u = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut s = Statevector::basis(self.n_qubits, col)?;
            self.apply(&mut s)?;
            for (row, a) in s.amplitudes().iter().enumerate() {
                u[(row, col)] = *a;
            }
        }
        Ok(u)
    }
}

/// Where a gate touching the system register falls outside the Clifford
/// group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliffordViolation {
    pub index: usize,
    pub gate: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliffordReport {
    pub gates_on_system: usize,
    pub violations: Vec<CliffordViolation>,
    pub passed: bool,
}

/// Checks that every gate touching a system qubit is Clifford: single-qubit
/// Cliffords, CNOT, Paulis and singly-controlled Paulis. Rotations, `W`,
/// Toffolis, reflections and state preparation must stay on ancillas.
pub fn check_clifford(c: &Circuit) -> CliffordReport {
    let system = c.system_qubits();
    let mut gates_on_system = 0;
    let mut violations = Vec::new();
    for (index, g) in c.gates.iter().enumerate() {
        if !g.qubits().iter().any(|q| system.contains(q)) {
            continue;
        }
        gates_on_system += 1;
        let clifford = matches!(
            g,
            Gate::Single { .. }
                | Gate::Cnot { .. }
                | Gate::Pauli { .. }
                | Gate::ControlledPauli { .. }
                | Gate::GlobalPhase { .. }
        );
        if !clifford {
            violations.push(CliffordViolation {
                index,
                gate: g.name().to_string(),
            });
        }
    }
    CliffordReport {
        gates_on_system,
        passed: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;

    #[test]
    fn w_rotation() {
        let w = w_gate(std::f64::consts::FRAC_PI_2);
        assert!((w[1][0] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        let id = w_gate(0.0);
        assert!((id[0][0] - ONE).norm() < 1e-15 && id[1][0].norm() < 1e-15);
        let mut c = Circuit::system(1);
        c.push(Gate::W { qubit: 0, t: 0.37 });
        assert!(dense::unitarity_error(&c.unitary().unwrap()) < 1e-12);
    }

    #[test]
    fn householder_prepares_and_inverts() {
        let amps = vec![0.6, 0.0, 0.0, 0.8];
        let mut c = Circuit::system(3);
        c.push(Gate::Prepare {
            qubits: vec![0, 2],
            amplitudes: amps.clone(),
        });
        let mut s = Statevector::zero(3).unwrap();
        c.apply(&mut s).unwrap();
        assert!((s.amplitude(0b000).re - 0.6).abs() < 1e-12);
        assert!((s.amplitude(0b101).re - 0.8).abs() < 1e-12);
        let u = c.unitary().unwrap();
        assert!(dense::max_abs_diff(&(&u * &u), &dense::identity(8)).unwrap() < 1e-12);
    }

    #[test]
    fn reflection_sign() {
        let mut c = Circuit::system(2);
        c.push(Gate::Reflect { qubits: vec![0] });
        let u = c.unitary().unwrap();
        assert!((u[(0, 0)] - ONE).norm() < 1e-15);
        assert!((u[(2, 2)] + ONE).norm() < 1e-15);
    }

    #[test]
    fn adjoint_round_trip() {
        let n = 3;
        let mut c = Circuit::system(n);
        c.extend([
            Gate::Single { qubit: 0, op: Single::S },
            Gate::W { qubit: 1, t: 0.4 },
            Gate::ExpPauli {
                theta: 0.3,
                pauli: "+XZY".parse().unwrap(),
            },
            Gate::And {
                controls: [0, 1],
                target: 2,
            },
            Gate::GlobalPhase { phase: 0.2 },
        ]);
        let mut inv = c.clone();
        inv.gates = c.adjoint_gates();
        let prod = inv.unitary().unwrap() * c.unitary().unwrap();
        assert!(dense::max_abs_diff(&prod, &dense::identity(8)).unwrap() < 1e-12);
    }

    #[test]
    fn clifford_checker_flags_rotations_on_system() {
        let mut c = Circuit::new(vec![
            Register {
                name: "system".into(),
                start: 0,
                len: 2,
                role: RegisterRole::System,
            },
            Register {
                name: "anc".into(),
                start: 2,
                len: 1,
                role: RegisterRole::Ancilla,
            },
        ]);
        c.push(Gate::W { qubit: 2, t: 0.1 });
        c.push(Gate::ControlledPauli {
            control: 2,
            pauli: "+XZI".parse().unwrap(),
        });
        assert!(check_clifford(&c).passed);
        c.push(Gate::ExpPauli {
            theta: 0.1,
            pauli: "+ZII".parse().unwrap(),
        });
        let r = check_clifford(&c);
        assert!(!r.passed);
        assert_eq!(r.violations[0].gate, "exp_pauli");
    }
}
