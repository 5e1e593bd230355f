//! Product-formula circuits.

use serde::{Deserialize, Serialize};

use super::circuit::{Circuit, Gate};
use crate::dense::{self, CMatrix};
use crate::pauli::PauliSum;
use crate::statevector::exact_evolve;
use crate::{Error, Result};

/// Circuit approximating `e^{−iHt}` with `steps` slices. Terms are applied in
/// the order they appear in `h`; order 2 is the symmetric (Strang) splitting.
pub fn trotter_circuit(h: &PauliSum, t: f64, steps: usize, order: u8) -> Result<Circuit> {
    if steps == 0 {
        return Err(Error::Invalid("steps must be at least 1".into()));
    }
    let dt = t / steps as f64;
    let exp = |c: f64, scale: f64| {
        let theta = -c * dt * scale;
        move |p: &crate::PauliString| {
            if p.is_identity() {
                Gate::GlobalPhase { phase: theta }
            } else {
                Gate::ExpPauli {
                    theta,
                    pauli: p.clone(),
                }
            }
        }
    };
    let slice: Vec<Gate> = match order {
        1 => h.iter().map(|(c, p)| exp(*c, 1.0)(p)).collect(),
        2 => {
            let half: Vec<Gate> = h.iter().map(|(c, p)| exp(*c, 0.5)(p)).collect();
            half.iter().chain(half.iter().rev()).cloned().collect()
        }
        o => return Err(Error::Unsupported(format!("Trotter order {o}"))),
    };
    let mut c = Circuit::system(h.n_qubits());
    for _ in 0..steps {
        c.extend(slice.iter().cloned());
    }
    c.metadata.insert("t".into(), t.to_string());
    c.metadata.insert("steps".into(), steps.to_string());
    c.metadata.insert("order".into(), order.to_string());
    Ok(c)
}

pub fn trotter_unitary(h: &PauliSum, t: f64, steps: usize, order: u8) -> Result<CMatrix> {
    trotter_circuit(h, t, steps, order)?.unitary()
}

/// Spectral-norm distance between the product formula and `e^{−iHt}`.
pub fn trotter_error(h: &PauliSum, t: f64, steps: usize, order: u8) -> Result<f64> {
    let u = trotter_unitary(h, t, steps, order)?;
    Ok(dense::spectral_norm(&(u - exact_evolve(h, t)?)))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrotterReport {
    pub t: f64,
    pub order: u8,
    pub steps: Vec<usize>,
    pub errors: Vec<f64>,
    /// `errors[i+1] / errors[i]`.
    pub ratios: Vec<f64>,
}

impl TrotterReport {
    pub fn sweep(h: &PauliSum, t: f64, order: u8, steps: &[usize]) -> Result<Self> {
        let errors = steps
            .iter()
            .map(|&r| trotter_error(h, t, r, order))
            .collect::<Result<Vec<_>>>()?;
        let ratios = errors.windows(2).map(|w| w[1] / w[0]).collect();
        Ok(TrotterReport {
            t,
            order,
            steps: steps.to_vec(),
            errors,
            ratios,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{logical_hamiltonian, Couplings};
    use crate::Lattice;

    #[test]
    fn commuting_terms_are_exact() {
        let c = Couplings::new(0.7, 0.0, 1.3, 0.0);
        let h = logical_hamiltonian(&Lattice::new(&[3]).unwrap(), &c).unwrap();
        assert!(trotter_error(&h, 0.5, 1, 1).unwrap() < 1e-12);
    }

    #[test]
    fn error_shrinks_with_steps() {
        let h = logical_hamiltonian(&Lattice::new(&[3]).unwrap(), &Couplings::default()).unwrap();
        for order in [1, 2] {
            let rep = TrotterReport::sweep(&h, 0.5, order, &[4, 8, 16]).unwrap();
            assert!(rep.ratios.iter().all(|&r| r < 0.7), "{rep:?}");
        }
        assert!(trotter_circuit(&h, 0.5, 0, 1).is_err());
        assert!(trotter_circuit(&h, 0.5, 1, 3).is_err());
    }

    #[test]
    fn strang_slice_is_palindromic() {
        let h = logical_hamiltonian(&Lattice::new(&[3]).unwrap(), &Couplings::default()).unwrap();
        let c = trotter_circuit(&h, 1.0, 1, 2).unwrap();
        let g = &c.gates;
        assert!((0..g.len()).all(|i| g[i] == g[g.len() - 1 - i]));
    }
}
