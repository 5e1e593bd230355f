//! Logical gates on a stabilizer code. Paulis are applied directly;
//! everything else goes through amplified `e^{iθP̄}` gadgets on logical
//! Pauli operators, so the system only ever sees controlled Paulis.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use super::circuit::{Circuit, Gate, Register, RegisterRole};
use super::gadgets::oaa_exp_pauli;
use crate::gauss_code::StabilizerCode;
use crate::pauli::{Pauli, PauliString};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum LogicalGate {
    Pauli { letter: Pauli },
    /// `e^{iθZ̄}`.
    Rz { theta: f64 },
    Hadamard,
    Cnot,
}

fn logical_pauli(code: &StabilizerCode, i: usize, letter: Pauli) -> PauliString {
    let x = &code.logical_x[i];
    let z = &code.logical_z[i];
    match letter {
        Pauli::I => PauliString::identity(code.n_physical),
        Pauli::X => x.clone(),
        Pauli::Z => z.clone(),
        Pauli::Y => {
            let xz = x * z;
            xz.clone().with_phase((xz.phase_exp() + 1) % 4)
        }
    }
}

/// Appends `e^{iθP}` as an amplified gadget on the two ancillas of `c`.
fn push_rotation(c: &mut Circuit, theta: f64, p: &PauliString) -> Result<()> {
    c.extend(oaa_exp_pauli(theta, p)?.gates);
    Ok(())
}

/// Circuit on the code's physical qubits plus two gadget ancillas.
pub fn logical_gate(code: &StabilizerCode, gate: LogicalGate, targets: &[usize]) -> Result<Circuit> {
    let k = code.logical_x.len();
    let arity = if gate == LogicalGate::Cnot { 2 } else { 1 };
    if targets.len() != arity {
        return Err(Error::Invalid(format!("{gate:?} takes {arity} target(s), got {}", targets.len())));
    }
    if let Some(&t) = targets.iter().find(|&&t| t >= k) {
        return Err(Error::OutOfRange {
            what: "logical qubit",
            index: t,
            limit: k,
        });
    }
    let n = code.n_physical;
    let mut c = Circuit::new(vec![
        Register {
            name: "system".into(),
            start: 0,
            len: n,
            role: RegisterRole::System,
        },
        Register {
            name: "a".into(),
            start: n,
            len: 1,
            role: RegisterRole::Ancilla,
        },
        Register {
            name: "b".into(),
            start: n + 1,
            len: 1,
            role: RegisterRole::Ancilla,
        },
    ]);
    let t = targets[0];
    match gate {
        LogicalGate::Pauli { letter } => c.push(Gate::Pauli {
            pauli: logical_pauli(code, t, letter).embed(n + 2, 0),
        }),
        LogicalGate::Rz { theta } => push_rotation(&mut c, theta, &code.logical_z[t])?,
        LogicalGate::Hadamard => {
            // H = X·e^{−iπ/4 Y}
            push_rotation(&mut c, -FRAC_PI_4, &logical_pauli(code, t, Pauli::Y))?;
            c.push(Gate::Pauli {
                pauli: code.logical_x[t].embed(n + 2, 0),
            });
        }
        LogicalGate::Cnot => {
            let u = targets[1];
            if t == u {
                return Err(Error::Invalid("CNOT control equals target".into()));
            }
            let zc = &code.logical_z[t];
            let xt = &code.logical_x[u];
            // CNOT = e^{iπ/4 (1 − Z_c)(1 − X_t)}
            push_rotation(&mut c, -FRAC_PI_4, zc)?;
            push_rotation(&mut c, -FRAC_PI_4, xt)?;
            push_rotation(&mut c, FRAC_PI_4, &(zc * xt))?;
            c.push(Gate::GlobalPhase { phase: FRAC_PI_4 });
        }
    }
    c.success = vec![(n, false), (n + 1, false)];
    c.metadata.insert("logical_gate".into(), format!("{gate:?} on {targets:?}"));
    Ok(c)
}

/// Qubit-wise CNOT from one code block onto a second copy of it. Requires
/// unsigned generators: a `−1` sign on a Z-type check would be copied onto
/// the target block as a flipped syndrome.
pub fn transversal_cnot(code: &StabilizerCode) -> Result<Circuit> {
    if let Some(g) = code.generators.iter().find(|g| g.phase_exp() != 0) {
        return Err(Error::Unsupported(format!("transversal CNOT with signed generator {g}")));
    }
    let n = code.n_physical;
    let mut c = Circuit::new(vec![
        Register {
            name: "control".into(),
            start: 0,
            len: n,
            role: RegisterRole::System,
        },
        Register {
            name: "target".into(),
            start: n,
            len: n,
            role: RegisterRole::System,
        },
    ]);
    c.extend((0..n).map(|q| Gate::Cnot {
        control: q,
        target: n + q,
    }));
    Ok(c)
}
