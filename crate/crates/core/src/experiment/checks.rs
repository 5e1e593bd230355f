//! Numerical comparisons shared by configured experiments and the
//! acceptance suite.

use serde::{Deserialize, Serialize};

use crate::dense;
use crate::gauss_code::gauss_law_code;
use crate::hamiltonian::{
    self, boson_matrix, nonlocal_code, nonlocal_logical_form, nonlocal_matrix, to_bosonic, Couplings,
};
use crate::{Lattice, Result};

/// Outcome of comparing the codespace-restricted physical Hamiltonian with
/// the logical one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityCheck {
    /// Largest gap between sorted eigenvalues.
    pub spectrum_gap: f64,
    /// Max-norm difference of `E†HE` and the logical matrix.
    pub matrix_error: f64,
    pub dimension: usize,
}

pub fn duality(lattice: &Lattice, c: &Couplings) -> Result<DualityCheck> {
    let e = gauss_law_code(lattice).encoding_isometry()?;
    let restricted = dense::compress_sum(&hamiltonian::physical_hamiltonian(lattice, c)?, &e)?;
    let logical = dense::to_matrix(&hamiltonian::logical_hamiltonian(lattice, c)?)?;
    Ok(DualityCheck {
        spectrum_gap: dense::spectrum_gap(&dense::eigenvalues(&restricted), &dense::eigenvalues(&logical))?,
        matrix_error: dense::max_abs_diff(&restricted, &logical)?,
        dimension: logical.nrows(),
    })
}

/// Max-norm difference between the hardcore-boson and logical matrices.
pub fn boson_error(lattice: &Lattice, c: &Couplings) -> Result<f64> {
    let logical = hamiltonian::logical_hamiltonian(lattice, c)?;
    let bosonic = boson_matrix(&to_bosonic(&logical, true)?, logical.n_qubits())?;
    dense::max_abs_diff(&bosonic, &dense::to_matrix(&logical)?)
}

/// Max-norm difference between the string-mode Hamiltonian and the local
/// logical one carried over by `U = E_nl† E`.
pub fn nonlocal_error(lattice: &Lattice, c: &Couplings) -> Result<f64> {
    let form = nonlocal_logical_form(lattice, c)?;
    let e_local = gauss_law_code(lattice).encoding_isometry()?;
    let e_nl = nonlocal_code(lattice)?.encoding_isometry()?;
    let u = e_nl.adjoint() * &e_local;
    let local = dense::to_matrix(&hamiltonian::logical_hamiltonian(lattice, c)?)?;
    let mapped = &u * local * u.adjoint();
    dense::max_abs_diff(&nonlocal_matrix(&form.terms, lattice.n_links())?, &mapped)
}

/// Number of (term, generator) pairs of the physical Hamiltonian that
/// anticommute.
pub fn gauge_violations(lattice: &Lattice, c: &Couplings) -> Result<usize> {
    let h = hamiltonian::physical_hamiltonian(lattice, c)?;
    let gens = crate::gauss_code::gauss_generators(lattice);
    Ok(h
        .iter()
        .map(|(_, p)| gens.iter().filter(|g| !g.commutes_with(p)).count())
        .sum())
}
