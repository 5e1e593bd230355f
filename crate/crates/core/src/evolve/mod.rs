//! Time evolution on the encoded lattice: Trotter schedules, the
//! probabilistic and amplified `e^{itP}` gadgets, PREP/SELECT block encoding
//! with Toffoli accounting, and logical gates on the Gauss'-law code.

mod circuit;
mod gadgets;
mod gates;
mod lcu;
mod trotter;

pub use circuit::{
    check_clifford, w_gate, Circuit, CliffordReport, CliffordViolation, Gate, Register, RegisterRole, Single,
};
pub use gadgets::{
    gadget_report, lcu_exp_pauli, lcu_exp_pauli_quarter, lower_to_clifford, oaa_exp_pauli, success_block, GadgetReport,
};
pub use gates::{logical_gate, transversal_cnot, LogicalGate};
pub use lcu::{toffoli_bounds, BlockEncodingReport, LcuFamily, LcuOracles};
pub use trotter::{trotter_circuit, trotter_error, trotter_unitary, TrotterReport};
