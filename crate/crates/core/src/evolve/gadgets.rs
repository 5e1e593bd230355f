//! Ancilla gadgets that apply `e^{itP}` to the system using only
//! controlled Paulis on the system register.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::circuit::{Circuit, Gate, Register, RegisterRole, Single};
use crate::dense::{self, CMatrix};
use crate::pauli::PauliString;
use crate::statevector::Statevector;
use crate::{Error, Result};

/// Gates of the probabilistic gadget on ancilla `a`, with `p` already
/// widened to the full register. Outcome `a = 0` applies `e^{itP}/√2`,
/// outcome `a = 1` applies `e^{−itP}/√2`.
fn lcu_gates(a: usize, t: f64, p: &PauliString) -> Vec<Gate> {
    vec![
        Gate::W { qubit: a, t },
        Gate::ControlledPauli {
            control: a,
            pauli: p.clone(),
        },
        Gate::Single { qubit: a, op: Single::Z },
        Gate::Single { qubit: a, op: Single::H },
    ]
}

/// `−V R V† R V` with `V` the gadget above plus a Hadamard on `b`.
fn oaa_gates(a: usize, b: usize, t: f64, p: &PauliString) -> Vec<Gate> {
    let mut v = lcu_gates(a, t, p);
    v.push(Gate::Single { qubit: b, op: Single::H });
    let v_dag: Vec<Gate> = v.iter().rev().map(Gate::adjoint).collect();
    let r = Gate::Reflect { qubits: vec![a, b] };
    let mut out = v.clone();
    out.push(r.clone());
    out.extend(v_dag);
    out.push(r);
    out.extend(v);
    out.push(Gate::GlobalPhase {
        phase: std::f64::consts::PI,
    });
    out
}

fn check_hermitian(p: &PauliString) -> Result<()> {
    if p.is_hermitian() {
        Ok(())
    } else {
        Err(Error::NonHermitian(p.to_string()))
    }
}

fn with_ancillas(n: usize, names: &[&str]) -> Circuit {
    let mut regs = vec![Register {
        name: "system".into(),
        start: 0,
        len: n,
        role: RegisterRole::System,
    }];
    for (i, name) in names.iter().enumerate() {
        regs.push(Register {
            name: (*name).into(),
            start: n + i,
            len: 1,
            role: RegisterRole::Ancilla,
        });
    }
    Circuit::new(regs)
}

/// One-ancilla gadget succeeding with probability exactly 1/2.
pub fn lcu_exp_pauli(t: f64, p: &PauliString) -> Result<Circuit> {
    check_hermitian(p)?;
    let n = p.n_qubits();
    let mut c = with_ancillas(n, &["a"]);
    c.extend(lcu_gates(n, t, &p.embed(n + 1, 0)));
    c.success = vec![(n, false)];
    Ok(c)
}

/// Bare `V` of the amplified gadget: success probability exactly 1/4.
pub fn lcu_exp_pauli_quarter(t: f64, p: &PauliString) -> Result<Circuit> {
    check_hermitian(p)?;
    let n = p.n_qubits();
    let mut c = with_ancillas(n, &["a", "b"]);
    c.extend(lcu_gates(n, t, &p.embed(n + 2, 0)));
    c.push(Gate::Single {
        qubit: n + 1,
        op: Single::H,
    });
    c.success = vec![(n, false), (n + 1, false)];
    Ok(c)
}

/// Deterministic gadget `S·V` on two ancillas.
pub fn oaa_exp_pauli(t: f64, p: &PauliString) -> Result<Circuit> {
    check_hermitian(p)?;
    let n = p.n_qubits();
    let mut c = with_ancillas(n, &["a", "b"]);
    c.extend(oaa_gates(n, n + 1, t, &p.embed(n + 2, 0)));
    c.success = vec![(n, false), (n + 1, false)];
    c.metadata.insert(
        "injection".into(),
        "W(t) acts on a directly; the state-injection ancilla is not simulated".into(),
    );
    Ok(c)
}

/// Replaces every `ExpPauli` that touches the system with an amplified
/// gadget on two fresh ancillas appended after the existing qubits. The
/// ancillas return to `|00⟩`, so they are shared by all gadgets.
pub fn lower_to_clifford(c: &Circuit) -> Result<Circuit> {
    let n = c.n_qubits;
    let (a, b) = (n, n + 1);
    let mut regs = c.registers.clone();
    for (i, name) in ["oaa_a", "oaa_b"].iter().enumerate() {
        regs.push(Register {
            name: (*name).into(),
            start: n + i,
            len: 1,
            role: RegisterRole::Ancilla,
        });
    }
    let mut out = Circuit::new(regs);
    let system = c.system_qubits();
    let widen = |p: &PauliString| p.embed(n + 2, 0);
    for g in &c.gates {
        match g {
            Gate::ExpPauli { theta, pauli } if pauli.support().iter().any(|q| system.contains(q)) => {
                out.extend(oaa_gates(a, b, *theta, &widen(pauli)));
            }
            Gate::ExpPauli { theta, pauli } => out.push(Gate::ExpPauli {
                theta: *theta,
                pauli: widen(pauli),
            }),
            Gate::Pauli { pauli } => out.push(Gate::Pauli { pauli: widen(pauli) }),
            Gate::ControlledPauli { control, pauli } => out.push(Gate::ControlledPauli {
                control: *control,
                pauli: widen(pauli),
            }),
            other => out.push(other.clone()),
        }
    }
    out.success = c.success.clone();
    out.success.extend([(a, false), (b, false)]);
    out.metadata = c.metadata.clone();
    out.metadata.insert("lowered".into(), "oaa".into());
    Ok(out)
}

fn full_index(n: usize, qubits: &[usize], j: usize) -> usize {
    let k = qubits.len();
    qubits
        .iter()
        .enumerate()
        .filter(|(i, _)| (j >> (k - 1 - i)) & 1 == 1)
        .map(|(_, &q)| 1usize << (n - 1 - q))
        .sum()
}

/// Action on the system register when ancillas start in `|0…0⟩` and the
/// success outcome is observed. Unnormalized.
pub fn success_block(c: &Circuit) -> Result<CMatrix> {
    let system = c.system_qubits();
    let n = c.n_qubits;
    let dim = 1usize << system.len();
    let herald = full_index(
        n,
        &c.success.iter().map(|(q, _)| *q).collect::<Vec<_>>(),
        c.success
            .iter()
            .fold(0usize, |acc, (_, v)| (acc << 1) | usize::from(*v)),
    );
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut s = Statevector::basis(n, full_index(n, &system, col))?;
        c.apply(&mut s)?;
        for row in 0..dim {
            m[(row, col)] = s.amplitude(full_index(n, &system, row) | herald);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GadgetReport {
    pub n_qubits: usize,
    /// Extremes of the success probability over all system input states.
    pub success_min: f64,
    pub success_max: f64,
    /// Success probability on a seeded random input, by direct simulation.
    pub success_random: f64,
    /// `|tr(U† M̂)| / dim` with `M̂` the success block rescaled to unit
    /// average norm.
    pub overlap: f64,
    /// Spectral distance between `M̂` and `U` after phase alignment.
    pub distance: f64,
}

/// Compares a heralded gadget against the target unitary `u`.
pub fn gadget_report(c: &Circuit, u: &CMatrix, seed: u64) -> Result<GadgetReport> {
    let m = success_block(c)?;
    if m.shape() != u.shape() {
        return Err(Error::Invalid("target shape does not match the system register".into()));
    }
    let dim = m.nrows() as f64;
    let probs = dense::eigenvalues(&(m.adjoint() * &m));
    let mean = (m.adjoint() * &m).trace().re / dim;
    let scaled = &m / dense::ONE.scale(mean.sqrt());
    let overlap = (u.adjoint() * &scaled).trace().norm() / dim;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let system = c.system_qubits();
    let input = Statevector::random(system.len(), &mut rng)?;
    let mut amps = vec![dense::ZERO; 1 << c.n_qubits];
    for (j, a) in input.amplitudes().iter().enumerate() {
        amps[full_index(c.n_qubits, &system, j)] = *a;
    }
    let mut s = Statevector::from_amplitudes(amps)?;
    c.apply(&mut s)?;

    Ok(GadgetReport {
        n_qubits: c.n_qubits,
        success_min: probs.iter().cloned().fold(f64::INFINITY, f64::min),
        success_max: probs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        success_random: s.probability_of(&c.success)?,
        overlap,
        distance: dense::phase_aligned_distance(&scaled, u)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::pauli_matrix;
    use crate::evolve::check_clifford;
    use crate::pauli::PauliSum;

    fn exp_itp(t: f64, p: &PauliString) -> CMatrix {
        let pm = pauli_matrix(p).unwrap();
        let id = dense::identity(pm.nrows());
        id * dense::ONE.scale(t.cos()) + pm * dense::I.scale(t.sin())
    }

    #[test]
    fn half_and_quarter_success() {
        let p: PauliString = "+XZ".parse().unwrap();
        let rep = gadget_report(&lcu_exp_pauli(0.7, &p).unwrap(), &exp_itp(0.7, &p), 1).unwrap();
        assert!((rep.success_min - 0.5).abs() < 1e-12 && (rep.success_max - 0.5).abs() < 1e-12);
        assert!(rep.overlap > 1.0 - 1e-12);
        let rep = gadget_report(&lcu_exp_pauli_quarter(0.7, &p).unwrap(), &exp_itp(0.7, &p), 1).unwrap();
        assert!((rep.success_random - 0.25).abs() < 1e-12);
    }

    #[test]
    fn failure_branch_applies_inverse_rotation() {
        let p: PauliString = "+Y".parse().unwrap();
        let mut c = lcu_exp_pauli(0.4, &p).unwrap();
        c.success = vec![(1, true)];
        let m = success_block(&c).unwrap() * dense::ONE.scale(2f64.sqrt());
        assert!(dense::max_abs_diff(&m, &exp_itp(-0.4, &p)).unwrap() < 1e-12);
    }

    #[test]
    fn z_example() {
        let t = std::f64::consts::FRAC_PI_3;
        let c = oaa_exp_pauli(t, &"+Z".parse().unwrap()).unwrap();
        let m = success_block(&c).unwrap();
        assert!((m[(0, 0)] - num_complex::Complex64::from_polar(1.0, t)).norm() < 1e-12);
    }

    #[test]
    fn amplified_gadget_is_deterministic_and_exact() {
        for p in ["+Z", "+XX", "+XZX", "-YZ"] {
            let p: PauliString = p.parse().unwrap();
            for t in [0.0, 0.1, 0.7, std::f64::consts::FRAC_PI_2] {
                let c = oaa_exp_pauli(t, &p).unwrap();
                let m = success_block(&c).unwrap();
                assert!(dense::max_abs_diff(&m, &exp_itp(t, &p)).unwrap() < 1e-12, "{p} {t}");
                assert!(check_clifford(&c).passed);
            }
        }
        assert!(oaa_exp_pauli(0.1, &"+iX".parse().unwrap()).is_err());
    }

    #[test]
    fn lowering_preserves_the_unitary() {
        let h = PauliSum::from_terms(
            2,
            [(0.8, "+ZZ".parse().unwrap()), (-0.3, "+XI".parse().unwrap()), (0.5, "+II".parse().unwrap())],
        )
        .unwrap();
        let c = super::super::trotter_circuit(&h, 0.6, 2, 2).unwrap();
        assert!(!check_clifford(&c).passed);
        let low = lower_to_clifford(&c).unwrap();
        assert!(check_clifford(&low).passed);
        let m = success_block(&low).unwrap();
        assert!(dense::max_abs_diff(&m, &c.unitary().unwrap()).unwrap() < 1e-12);
    }
}
