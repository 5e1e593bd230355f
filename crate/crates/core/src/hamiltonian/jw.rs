//! Jordan–Wigner map for staggered fermions on the site qubits.

use num_complex::Complex64;

use super::{FermionicTerm, TermKind};
use crate::lattice::Lattice;
use crate::pauli::{PauliPolynomial, PauliString, PauliSum};
use crate::Result;

const HALF: Complex64 = Complex64::new(0.5, 0.0);
const HALF_I: Complex64 = Complex64::new(0.0, 0.5);

/// `∏_{t < site} (−Z_t)` over the site ordering of the lattice.
pub fn jw_string(lattice: &Lattice, site: usize) -> PauliString {
    let qubits: Vec<usize> = (0..site).map(|t| lattice.site_qubit(t)).collect();
    let s = PauliString::z_on(lattice.n_qubits(), &qubits);
    if site % 2 == 1 {
        s.negated()
    } else {
        s
    }
}

/// `ψ_l`. On even sites the bare annihilator is `|0⟩⟨1|`, on odd sites the
/// roles of `|0⟩` and `|1⟩` are exchanged.
pub fn annihilation(lattice: &Lattice, site: usize) -> PauliPolynomial {
    let n = lattice.n_qubits();
    let q = lattice.site_qubit(site);
    let y_sign = if lattice.staggered_sign(site) > 0.0 { HALF_I } else { -HALF_I };
    let mut a = PauliPolynomial::term(HALF, PauliString::single(n, q, crate::Pauli::X));
    a.add_term(y_sign, PauliString::single(n, q, crate::Pauli::Y));
    PauliPolynomial::term(Complex64::new(1.0, 0.0), jw_string(lattice, site)).times(&a)
}

/// `ψ†_l`.
pub fn creation(lattice: &Lattice, site: usize) -> PauliPolynomial {
    annihilation(lattice, site).adjoint()
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn term_polynomial(lattice: &Lattice, t: &FermionicTerm) -> PauliPolynomial {
    let n = lattice.n_qubits();
    let link_qubit = |link: usize| lattice.n_sites() + link;
    match t.kind {
        TermKind::Mass => {
            let s = t.sites[0];
            creation(lattice, s)
                .times(&annihilation(lattice, s))
                .scaled(real(t.coupling * t.sign))
        }
        TermKind::Hop => {
            let (a, b) = (t.sites[0], t.sites[1]);
            let q = PauliPolynomial::term(real(1.0), PauliString::x_on(n, &[link_qubit(t.links[0])]));
            let forward = creation(lattice, a).times(&q).times(&annihilation(lattice, b));
            forward
                .plus(&forward.adjoint())
                .scaled(real(t.coupling * t.sign))
        }
        TermKind::Electric => PauliPolynomial::term(
            real(2.0 * t.coupling * t.sign),
            PauliString::z_on(n, &[link_qubit(t.links[0])]),
        ),
        TermKind::Plaquette => {
            let qubits: Vec<usize> = t.links.iter().map(|&l| link_qubit(l)).collect();
            PauliPolynomial::term(real(2.0 * t.coupling * t.sign), PauliString::x_on(n, &qubits))
        }
    }
}

/// Physical Pauli form on `N + dN` qubits. `Q = X` and `P = Z` on links.
pub fn jordan_wigner(terms: &[FermionicTerm], lattice: &Lattice) -> Result<PauliSum> {
    let mut total = PauliPolynomial::zero(lattice.n_qubits());
    for t in terms {
        total = total.plus(&term_polynomial(lattice, t));
    }
    total.pruned(1e-14).to_hermitian()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{self, CMatrix};
    use crate::gauss_code::gauss_generators;
    use crate::hamiltonian::{build_fermionic, Couplings};
    use crate::tolerances::EXACT_MATRIX;

    fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
        a * b + b * a
    }

    #[test]
    fn mass_term_form() {
        let lattice = Lattice::new(&[4]).unwrap();
        let h = jordan_wigner(
            &build_fermionic(&lattice, &Couplings::new(1.0, 0.0, 0.0, 0.0)),
            &lattice,
        )
        .unwrap();
        // (1/2) Σ_l σ_l (1 − σ_l Z_{S_l}) = −(1/2) Σ_l Z_{S_l}
        assert_eq!(h.len(), 4);
        for s in 0..4 {
            assert!((h.coefficient(&PauliString::z_on(8, &[s])) + 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn bulk_hop_is_symmetric_projector_times_xxx() {
        let lattice = Lattice::new(&[4]).unwrap();
        let terms: Vec<_> = build_fermionic(&lattice, &Couplings::new(0.0, 1.0, 0.0, 0.0))
            .into_iter()
            .filter(|t| t.kind == TermKind::Hop && t.links[0] == 1)
            .collect();
        let h = jordan_wigner(&terms, &lattice).unwrap();
        let xxx: PauliString = "+IXXIIXII".parse().unwrap();
        let yxy: PauliString = "+IYYIIXII".parse().unwrap();
        assert_eq!(h.len(), 2);
        let c = h.coefficient(&xxx);
        assert!((c.abs() - 0.5).abs() < 1e-15);
        assert!((h.coefficient(&yxy) + c).abs() < 1e-15);
    }

    #[test]
    fn every_term_commutes_with_gauss_law() {
        for dims in [&[3][..], &[4], &[6], &[2, 2], &[3, 3]] {
            let lattice = Lattice::new(dims).unwrap();
            let h = jordan_wigner(&build_fermionic(&lattice, &Couplings::default()), &lattice).unwrap();
            for g in gauss_generators(&lattice) {
                assert!(h.iter().all(|(_, p)| p.commutes_with(&g)), "{dims:?}");
            }
        }
    }

    #[test]
    fn canonical_anticommutation() {
        for dims in [&[4][..], &[2, 2]] {
            let lattice = Lattice::new(dims).unwrap();
            let ns = lattice.n_sites();
            let sites: Vec<usize> = (0..ns).collect();
            let psi: Vec<CMatrix> = (0..ns)
                .map(|s| dense::polynomial_matrix(&annihilation(&lattice, s).restrict(&sites)).unwrap())
                .collect();
            let dim = psi[0].nrows();
            for a in 0..ns {
                for b in 0..ns {
                    let zero = dense::max_abs(&anticommutator(&psi[a], &psi[b]));
                    assert!(zero < EXACT_MATRIX);
                    let expect = if a == b { dense::identity(dim) } else { CMatrix::zeros(dim, dim) };
                    let mixed = anticommutator(&psi[a], &psi[b].adjoint());
                    assert!(dense::max_abs_diff(&mixed, &expect).unwrap() < EXACT_MATRIX);
                }
            }
        }
    }

    #[test]
    fn staggered_roles() {
        let lattice = Lattice::new(&[2]).unwrap();
        let n0 = creation(&lattice, 0).times(&annihilation(&lattice, 0));
        let n1 = creation(&lattice, 1).times(&annihilation(&lattice, 1));
        // Occupied is |1⟩ on even sites and |0⟩ on odd sites.
        let m0 = dense::polynomial_matrix(&n0).unwrap();
        let m1 = dense::polynomial_matrix(&n1).unwrap();
        assert!((m0[(0b1000, 0b1000)].re - 1.0).abs() < 1e-15);
        assert!(m0[(0, 0)].norm() < 1e-15);
        assert!((m1[(0, 0)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vertical_hop_carries_string() {
        let lattice = Lattice::new(&[3, 3]).unwrap();
        let terms: Vec<_> = build_fermionic(&lattice, &Couplings::new(0.0, 1.0, 0.0, 0.0))
            .into_iter()
            .filter(|t| t.kind == TermKind::Hop && t.sites == vec![0, 3])
            .collect();
        let h = jordan_wigner(&terms, &lattice).unwrap();
        for (_, p) in h.iter() {
            assert!(p.z_bit(1) && p.z_bit(2) && !p.z_bit(4));
        }
    }
}
