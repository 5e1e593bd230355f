//! Gauss'-law quantum error-correcting codes for Z₂ lattice gauge theories.
//!
//! The crate builds the lattice, the physical/logical/bosonic forms of the
//! Hamiltonian, the Gauss'-law stabilizer codes and their concatenations,
//! and checks the fault-tolerant evolution gadgets against an exact dense
//! statevector engine.
//!
//! Data-parallel inner loops (decode sweeps, dense matrix assembly,
//! amplitude updates) use rayon when the `parallel` feature is enabled
//! (default) and fall back to plain iterators otherwise; see [`par`].

pub mod dense;
pub mod evolve;
pub mod experiment;
pub mod gauss_code;
pub mod hamiltonian;
pub mod lattice;
pub mod par;
pub mod pauli;
pub mod statevector;
pub mod tolerances;

mod error;
mod gf2;
mod limits;

pub use error::{Error, Result};
pub use lattice::Lattice;
pub use limits::{max_qubits, MAX_QUBITS_ENV};
pub use pauli::{Pauli, PauliString, PauliSum};
pub use statevector::Statevector;
