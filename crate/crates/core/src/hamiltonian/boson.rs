//! Hardcore-boson form of a logical Hamiltonian.
//!
//! Each logical qubit becomes a two-level mode with `φ = |1⟩⟨0|`,
//! `φ† = |0⟩⟨1|` and `N = φ†φ = |0⟩⟨0|`, so that `Z = 2N − 1` and
//! `X = φ + φ†`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::CMatrix;
use crate::limits::check_cap;
use crate::pauli::{Pauli, PauliSum};
use crate::{max_qubits, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BosonOp {
    Number,
    Annihilate,
    Create,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BosonFactor {
    pub mode: usize,
    pub op: BosonOp,
}

/// Real coefficient times a product of single-mode factors, one per mode,
/// sorted by mode. An empty product is the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BosonTerm {
    pub coeff: f64,
    pub factors: Vec<BosonFactor>,
}

impl BosonTerm {
    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn adjoint(&self) -> BosonTerm {
        let factors = self
            .factors
            .iter()
            .map(|f| BosonFactor {
                mode: f.mode,
                op: match f.op {
                    BosonOp::Annihilate => BosonOp::Create,
                    BosonOp::Create => BosonOp::Annihilate,
                    BosonOp::Number => BosonOp::Number,
                },
            })
            .collect();
        BosonTerm {
            coeff: self.coeff,
            factors,
        }
    }
}

impl fmt::Display for BosonTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.coeff)?;
        for factor in &self.factors {
            let name = match factor.op {
                BosonOp::Number => "N",
                BosonOp::Annihilate => "φ",
                BosonOp::Create => "φ†",
            };
            write!(f, " {name}{}", factor.mode)?;
        }
        Ok(())
    }
}

/// Substitutes `Z = 2N − 1` and `X = φ + φ†`, expands, and merges equal
/// monomials (`N² = N` never arises since each mode occurs once per string).
/// `Y` letters are rejected. With `keep_constants = false` the identity
/// monomial is dropped.
pub fn to_bosonic(h: &PauliSum, keep_constants: bool) -> Result<Vec<BosonTerm>> {
    let mut acc: BTreeMap<Vec<BosonFactor>, f64> = BTreeMap::new();
    for (c, p) in h.iter() {
        if p.y_count() > 0 {
            return Err(Error::Unsupported(format!(
                "{p} has a Y letter, which has no real boson expansion"
            )));
        }
        // Partial monomials: (coefficient, factors so far).
        let mut partial: Vec<(f64, Vec<BosonFactor>)> = vec![(*c, Vec::new())];
        for q in p.support() {
            let mut next = Vec::with_capacity(2 * partial.len());
            for (coeff, factors) in partial {
                match p.get(q) {
                    Pauli::Z => {
                        let mut with_n = factors.clone();
                        with_n.push(BosonFactor { mode: q, op: BosonOp::Number });
                        next.push((2.0 * coeff, with_n));
                        next.push((-coeff, factors));
                    }
                    Pauli::X => {
                        for op in [BosonOp::Annihilate, BosonOp::Create] {
                            let mut f = factors.clone();
                            f.push(BosonFactor { mode: q, op });
                            next.push((coeff, f));
                        }
                    }
                    _ => unreachable!("support excludes identity and Y was rejected"),
                }
            }
            partial = next;
        }
        for (coeff, factors) in partial {
            *acc.entry(factors).or_insert(0.0) += coeff;
        }
    }
    let mut out: Vec<BosonTerm> = acc
        .into_iter()
        .filter(|(f, c)| c.abs() > 1e-14 && (keep_constants || !f.is_empty()))
        .map(|(factors, coeff)| BosonTerm { coeff, factors })
        .collect();
    out.sort_by(|a, b| a.factors.len().cmp(&b.factors.len()).then(a.factors.cmp(&b.factors)));
    Ok(out)
}

/// Dense matrix of a boson term list on `n_modes` two-level modes (mode 0
/// is the most significant bit). Occupied is `|0⟩`.
pub fn boson_matrix(terms: &[BosonTerm], n_modes: usize) -> Result<CMatrix> {
    check_cap(n_modes, max_qubits())?;
    let dim = 1usize << n_modes;
    let mut m = CMatrix::zeros(dim, dim);
    for t in terms {
        if let Some(f) = t.factors.iter().find(|f| f.mode >= n_modes) {
            return Err(Error::OutOfRange {
                what: "boson mode",
                index: f.mode,
                limit: n_modes,
            });
        }
        'basis: for b in 0..dim {
            let mut out = b;
            for f in &t.factors {
                let bit = 1usize << (n_modes - 1 - f.mode);
                let occupied = b & bit == 0;
                match f.op {
                    BosonOp::Number if !occupied => continue 'basis,
                    BosonOp::Annihilate if !occupied => continue 'basis,
                    BosonOp::Create if occupied => continue 'basis,
                    BosonOp::Number => {}
                    BosonOp::Annihilate | BosonOp::Create => out ^= bit,
                }
            }
            m[(out, b)] += Complex64::new(t.coeff, 0.0);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;
    use crate::pauli::PauliString;

    fn sum(terms: &[(f64, &str)]) -> PauliSum {
        let n = terms[0].1.len() - 1;
        PauliSum::from_terms(n, terms.iter().map(|(c, s)| (*c, s.parse::<PauliString>().unwrap()))).unwrap()
    }

    #[test]
    fn single_mode_algebra() {
        let h = sum(&[(1.0, "+Z")]);
        let t = to_bosonic(&h, true).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].to_string(), "-1");
        assert_eq!(t[1].to_string(), "+2 N0");
        let x = to_bosonic(&sum(&[(1.0, "+X")]), true).unwrap();
        let m = boson_matrix(&x, 1).unwrap();
        assert!(dense::max_abs_diff(&m, &dense::pauli_matrix(&"+X".parse().unwrap()).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn matrix_equals_pauli_matrix() {
        let h = sum(&[(0.7, "+ZIZ"), (-1.3, "+XZI"), (0.2, "+IXX"), (0.4, "+III")]);
        let terms = to_bosonic(&h, true).unwrap();
        let diff = dense::max_abs_diff(&boson_matrix(&terms, 3).unwrap(), &dense::to_matrix(&h).unwrap()).unwrap();
        assert!(diff < 1e-12);
        let no_const = to_bosonic(&h, false).unwrap();
        assert!(no_const.iter().all(|t| !t.is_constant()));
    }

    #[test]
    fn hermitian_pairs() {
        let terms = to_bosonic(&sum(&[(1.0, "+XZ")]), true).unwrap();
        for t in &terms {
            assert!(terms.iter().any(|u| u.factors == t.adjoint().factors && u.coeff == t.coeff));
        }
    }

    #[test]
    fn y_rejected() {
        assert!(to_bosonic(&sum(&[(1.0, "+Y")]), true).is_err());
    }
}
