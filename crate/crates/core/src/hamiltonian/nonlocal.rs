//! A non-local choice of logical operators for the periodic chain.
//!
//! With 0-based sites and links (link `l` joins sites `l` and `l + 1`):
//!
//! * `X̄_0 = ∏_n X_{L_n}`, `X̄_l = X_{S_0} X_{S_l} ∏_{n ≥ l} X_{L_n}`
//! * `Z̄_0 = Z_{L_0}`, `Z̄_l = σ_l Z_{S_l}`
//!
//! and the string modes `φ_l = ½(1 + S_l) X̄_l` with
//! `S_l = ∏_{n ≤ l} (−1)^n Z̄_n`. On the codespace
//! `Z_{L_l} = c_l (1 − 2φ_l†φ_l)` with `c_l = (−1)^{l(l+1)/2}`, site `Z`s are
//! products of two such parities, and `X_{S_l} X_{L_l} X_{S_{l+1}}` is a
//! product of two `φ + φ†`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{logical::to_logical, physical_hamiltonian, Couplings};
use crate::dense::{self, CMatrix};
use crate::gauss_code::{gauss_generators, CodeKind, CodeParams, StabilizerCode};
use crate::lattice::Lattice;
use crate::pauli::{i_pow, Pauli, PauliPolynomial, PauliString, PauliSum};
use crate::{Error, Result};

fn require_chain(lattice: &Lattice) -> Result<usize> {
    if lattice.dimension() != 1 {
        return Err(Error::Unsupported(format!(
            "the non-local logical basis is defined for chains, got d = {}",
            lattice.dimension()
        )));
    }
    if lattice.n_sites() < 2 {
        return Err(Error::Invalid("the chain needs at least two sites".into()));
    }
    Ok(lattice.n_sites())
}

/// The bare Gauss'-law code with the non-local logical basis.
pub fn nonlocal_code(lattice: &Lattice) -> Result<StabilizerCode> {
    let n = require_chain(lattice)?;
    let nq = lattice.n_qubits();
    let link = |l: usize| n + l;
    let mut logical_x = vec![PauliString::x_on(nq, &(0..n).map(link).collect::<Vec<_>>())];
    let mut logical_z = vec![PauliString::z_on(nq, &[link(0)])];
    for l in 1..n {
        let mut qubits = vec![0, l];
        qubits.extend((l..n).map(link));
        logical_x.push(PauliString::x_on(nq, &qubits));
        let z = PauliString::z_on(nq, &[l]);
        logical_z.push(if lattice.staggered_sign(l) < 0.0 { z.negated() } else { z });
    }
    let generators = gauss_generators(lattice);
    Ok(StabilizerCode {
        kind: CodeKind::Classical,
        n_physical: nq,
        n_gauss: generators.len(),
        generators,
        logical_x,
        logical_z,
        params: CodeParams { n: nq, k: n, distance: 3 },
        lattice: Some(lattice.clone()),
    })
}

/// `φ_l` as an operator on the `n_modes` logical qubits.
pub fn nonlocal_phi(n_modes: usize, l: usize) -> PauliPolynomial {
    let half = Complex64::new(0.5, 0.0);
    let string = PauliString::z_on(n_modes, &(0..=l).collect::<Vec<_>>());
    let string = if parity_sign(l) < 0.0 { string.negated() } else { string };
    let mut proj = PauliPolynomial::scalar(n_modes, half);
    proj.add_term(half, string);
    proj.times(&PauliPolynomial::term(
        Complex64::new(1.0, 0.0),
        PauliString::single(n_modes, l, Pauli::X),
    ))
}

/// `∏_{n ≤ l} (−1)^n`.
fn parity_sign(l: usize) -> f64 {
    if (l * (l + 1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "op", content = "mode", rename_all = "lowercase")]
pub enum NonlocalFactor {
    /// `1 − 2φ_l†φ_l`.
    Parity(usize),
    /// `φ_l + φ_l†`.
    Flip(usize),
}

/// `coeff · (∏ flips)(∏ parities)`, flips first. Factors of each kind commute
/// among themselves and appear at most once.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonlocalTerm {
    pub coeff: Complex64,
    pub factors: Vec<NonlocalFactor>,
}

impl fmt::Display for NonlocalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.im == 0.0 {
            write!(f, "{:+}", self.coeff.re)?;
        } else {
            write!(f, "({})", self.coeff)?;
        }
        for factor in &self.factors {
            match factor {
                NonlocalFactor::Parity(l) => write!(f, " (1-2φ†{l}φ{l})")?,
                NonlocalFactor::Flip(l) => write!(f, " (φ{l}+φ†{l})")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonlocalForm {
    /// Hamiltonian in the non-local logical Pauli basis.
    pub logical: PauliSum,
    /// The same operator written through the string modes.
    pub terms: Vec<NonlocalTerm>,
}

/// Rewrites one physical Pauli in string-mode factors: `(sign, factors)`.
fn substitute(lattice: &Lattice, p: &PauliString) -> Result<(Complex64, Vec<NonlocalFactor>)> {
    let n = lattice.n_sites();
    let mut coeff = i_pow(u32::from(p.phase_exp()) + p.y_count() as u32);
    let mut flips = vec![false; n];
    let mut site_x = vec![false; n];
    for l in (0..n).filter(|&l| p.x_bit(n + l)) {
        let b = (l + 1) % n;
        site_x[l] ^= true;
        site_x[b] ^= true;
        flips[l] ^= true;
        if l + 1 < n {
            flips[l + 1] ^= true;
        }
    }
    if (0..n).any(|s| site_x[s] != p.x_bit(s)) {
        return Err(Error::Invalid(format!(
            "{p} is not a product of hop blocks and Z operators"
        )));
    }
    let mut parities = vec![false; n];
    let z_link = |l: usize, coeff: &mut Complex64, parities: &mut Vec<bool>| {
        *coeff *= parity_sign(l);
        parities[l] ^= true;
    };
    for l in (0..n).filter(|&l| p.z_bit(n + l)) {
        z_link(l, &mut coeff, &mut parities);
    }
    for s in (0..n).filter(|&s| p.z_bit(s)) {
        if s == 0 {
            z_link(0, &mut coeff, &mut parities);
            z_link(n - 1, &mut coeff, &mut parities);
        } else {
            coeff *= lattice.staggered_sign(s);
            z_link(s - 1, &mut coeff, &mut parities);
            z_link(s, &mut coeff, &mut parities);
        }
    }
    let mut factors: Vec<NonlocalFactor> = (0..n).filter(|&l| flips[l]).map(NonlocalFactor::Flip).collect();
    factors.extend((0..n).filter(|&l| parities[l]).map(NonlocalFactor::Parity));
    Ok((coeff, factors))
}

/// Non-local logical form of the chain Hamiltonian: the Pauli form from the
/// generic rewrite and the string-mode form from direct substitution.
pub fn nonlocal_logical_form(lattice: &Lattice, c: &Couplings) -> Result<NonlocalForm> {
    let code = nonlocal_code(lattice)?;
    let physical = physical_hamiltonian(lattice, c)?;
    let logical = to_logical(&physical, &code)?;
    let mut acc: BTreeMap<Vec<NonlocalFactor>, Complex64> = BTreeMap::new();
    for (coeff, p) in physical.iter() {
        let (s, factors) = substitute(lattice, p)?;
        *acc.entry(factors).or_insert(Complex64::new(0.0, 0.0)) += s * *coeff;
    }
    let terms = acc
        .into_iter()
        .filter(|(_, c)| c.norm() > 1e-14)
        .map(|(factors, coeff)| NonlocalTerm { coeff, factors })
        .collect();
    Ok(NonlocalForm { logical, terms })
}

/// Dense matrix of string-mode terms, realizing each factor from
/// [`nonlocal_phi`].
pub fn nonlocal_matrix(terms: &[NonlocalTerm], n_modes: usize) -> Result<CMatrix> {
    let one = Complex64::new(1.0, 0.0);
    let phis: Vec<PauliPolynomial> = (0..n_modes).map(|l| nonlocal_phi(n_modes, l)).collect();
    let factor = |f: &NonlocalFactor| -> Result<PauliPolynomial> {
        let l = match f {
            NonlocalFactor::Parity(l) | NonlocalFactor::Flip(l) => *l,
        };
        let phi = phis.get(l).ok_or(Error::OutOfRange {
            what: "string mode",
            index: l,
            limit: n_modes,
        })?;
        Ok(match f {
            NonlocalFactor::Parity(_) => PauliPolynomial::scalar(n_modes, one)
                .plus(&phi.adjoint().times(phi).scaled(Complex64::new(-2.0, 0.0))),
            NonlocalFactor::Flip(_) => phi.plus(&phi.adjoint()),
        })
    };
    let mut total = PauliPolynomial::zero(n_modes);
    for t in terms {
        let mut prod = PauliPolynomial::scalar(n_modes, t.coeff);
        for f in &t.factors {
            prod = prod.times(&factor(f)?);
        }
        total = total.plus(&prod);
    }
    dense::polynomial_matrix(&total.pruned(1e-14))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::logical_image;
    use crate::tolerances::EXACT_MATRIX;

    fn anti(a: &CMatrix, b: &CMatrix) -> CMatrix {
        a * b + b * a
    }

    #[test]
    fn basis_is_valid() {
        for n in 2..=5 {
            let code = nonlocal_code(&Lattice::new(&[n]).unwrap()).unwrap();
            assert!(code.logical_issues().is_empty(), "N={n}: {:?}", code.logical_issues());
        }
        assert!(nonlocal_code(&Lattice::new(&[2, 2]).unwrap()).is_err());
    }

    #[test]
    fn link_z_is_prefix_product() {
        let lattice = Lattice::new(&[4]).unwrap();
        let code = nonlocal_code(&lattice).unwrap();
        for l in 0..4 {
            let (s, img) = logical_image(&PauliString::z_on(8, &[4 + l]), &code).unwrap();
            assert_eq!(s, 1.0);
            assert_eq!(img, PauliString::z_on(4, &(0..=l).collect::<Vec<_>>()));
        }
        let (s, img) = logical_image(&PauliString::z_on(8, &[0]), &code).unwrap();
        assert_eq!((s, img), (1.0, PauliString::z_on(4, &[1, 2, 3])));
        let (s, img) = logical_image(&"+XXIIXIII".parse().unwrap(), &code).unwrap();
        assert_eq!((s, img.to_string().as_str()), (1.0, "+XXII"));
        let (s, img) = logical_image(&"+XIIXIIIX".parse().unwrap(), &code).unwrap();
        assert_eq!((s, img.to_string().as_str()), (1.0, "+IIIX"));
    }

    #[test]
    fn string_mode_algebra() {
        let n = 3;
        let phi: Vec<CMatrix> = (0..n)
            .map(|l| dense::polynomial_matrix(&nonlocal_phi(n, l)).unwrap())
            .collect();
        let id = dense::identity(1 << n);
        for i in 0..n {
            let onsite = anti(&phi[i], &phi[i].adjoint());
            assert!(dense::max_abs_diff(&onsite, &id).unwrap() < EXACT_MATRIX);
            assert!(dense::max_abs(&anti(&phi[i], &phi[i])) < EXACT_MATRIX);
            for j in i + 1..n {
                let flip_j = &phi[j] + phi[j].adjoint();
                for o in [phi[i].clone(), phi[i].adjoint()] {
                    let lhs = anti(&o, &phi[j]);
                    let rhs = &o * &flip_j;
                    assert!(dense::max_abs_diff(&lhs, &rhs).unwrap() < EXACT_MATRIX);
                }
            }
        }
    }

    #[test]
    fn substitution_matches_generic_rewrite() {
        for n in [3, 4] {
            let lattice = Lattice::new(&[n]).unwrap();
            let form = nonlocal_logical_form(&lattice, &Couplings::new(0.9, 0.6, 0.3, 0.0)).unwrap();
            let direct = nonlocal_matrix(&form.terms, n).unwrap();
            let generic = dense::to_matrix(&form.logical).unwrap();
            assert!(dense::max_abs_diff(&direct, &generic).unwrap() < 1e-12, "N={n}");
        }
    }
}
