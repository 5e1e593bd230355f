//! The Z₂ lattice-gauge Hamiltonian in fermionic, physical-Pauli, logical and
//! hardcore-boson form.
//!
//! ```
//! use gauss_qec::hamiltonian::{self, Couplings};
//! use gauss_qec::Lattice;
//!
//! let lattice = Lattice::new(&[4]).unwrap();
//! let c = Couplings::new(1.0, 0.5, 0.25, 0.0);
//! let physical = hamiltonian::physical_hamiltonian(&lattice, &c).unwrap();
//! assert_eq!(physical.n_qubits(), 8);
//! let logical = hamiltonian::logical_hamiltonian(&lattice, &c).unwrap();
//! assert_eq!(logical.n_qubits(), 4);
//! ```

mod boson;
mod jw;
mod logical;
mod nonlocal;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use boson::{boson_matrix, to_bosonic, BosonFactor, BosonOp, BosonTerm};
pub use jw::{annihilation, creation, jordan_wigner, jw_string};
pub use logical::{logical_image, to_logical};
pub use nonlocal::{
    nonlocal_code, nonlocal_logical_form, nonlocal_matrix, nonlocal_phi, NonlocalFactor,
    NonlocalForm, NonlocalTerm,
};

use crate::dense::{self, CMatrix};
use crate::gauss_code;
use crate::lattice::Lattice;
use crate::pauli::PauliSum;
use crate::{Error, Result};

/// Coupling constants. `lambda_p` is ignored in one dimension.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    pub m: f64,
    pub epsilon: f64,
    #[serde(alias = "lambda_E")]
    pub lambda_e: f64,
    #[serde(default, alias = "lambda_P")]
    pub lambda_p: f64,
}

impl Couplings {
    pub fn new(m: f64, epsilon: f64, lambda_e: f64, lambda_p: f64) -> Self {
        Couplings {
            m,
            epsilon,
            lambda_e,
            lambda_p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.m, self.epsilon, self.lambda_e, self.lambda_p];
        if all.iter().all(|c| c.is_finite()) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("non-finite coupling in {self:?}")))
        }
    }
}

impl Default for Couplings {
    fn default() -> Self {
        Couplings::new(1.0, 1.0, 1.0, 1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Mass,
    Hop,
    Electric,
    Plaquette,
}

impl TermKind {
    pub const ALL: [TermKind; 4] = [TermKind::Mass, TermKind::Hop, TermKind::Electric, TermKind::Plaquette];
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermKind::Mass => "mass",
            TermKind::Hop => "hop",
            TermKind::Electric => "electric",
            TermKind::Plaquette => "plaquette",
        })
    }
}

/// One symbolic term of the lattice Hamiltonian.
///
/// | kind      | operator                                   | `sites`  | `links`     |
/// |-----------|--------------------------------------------|----------|-------------|
/// | mass      | `m σ ψ†ψ`                                  | `[l]`    | `[]`        |
/// | hop       | `ε σ (ψ†_a Q ψ_b + h.c.)`                  | `[a, b]` | `[link]`    |
/// | electric  | `λ_E (P + P†)`                             | `[]`     | `[link]`    |
/// | plaquette | `λ_P (Q₁Q₂Q₃†Q₄† + h.c.)`                  | `[l]`    | four links  |
///
/// `sign` holds `σ_l` for mass terms, `σ_{l,k}` for hops and `+1` otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FermionicTerm {
    pub kind: TermKind,
    pub sites: Vec<usize>,
    pub links: Vec<usize>,
    pub sign: f64,
    pub coupling: f64,
}

impl fmt::Display for FermionicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0.0 { "-" } else { "+" };
        match self.kind {
            TermKind::Mass => write!(f, "{s}{} ψ†{l}ψ{l}", self.coupling, l = self.sites[0]),
            TermKind::Hop => write!(
                f,
                "{s}{} (ψ†{} Q[{}] ψ{} + h.c.)",
                self.coupling, self.sites[0], self.links[0], self.sites[1]
            ),
            TermKind::Electric => write!(f, "{s}{} (P[{l}] + P†[{l}])", self.coupling, l = self.links[0]),
            TermKind::Plaquette => write!(
                f,
                "{s}{} (W[{}] + h.c.) on links {:?}",
                self.coupling, self.sites[0], self.links
            ),
        }
    }
}

/// Symbolic Hamiltonian: `N` mass, `dN` hop, `dN` electric and, for `d ≥ 2`,
/// one plaquette term per [`Lattice::plaquettes`] entry.
pub fn build_fermionic(lattice: &Lattice, c: &Couplings) -> Vec<FermionicTerm> {
    let mut out = Vec::new();
    for site in 0..lattice.n_sites() {
        out.push(FermionicTerm {
            kind: TermKind::Mass,
            sites: vec![site],
            links: vec![],
            sign: lattice.staggered_sign(site),
            coupling: c.m,
        });
    }
    for link in 0..lattice.n_links() {
        let (site, dir) = lattice.link_site_dir(link);
        let (a, b) = lattice.link_endpoints(link);
        out.push(FermionicTerm {
            kind: TermKind::Hop,
            sites: vec![a, b],
            links: vec![link],
            sign: lattice.hop_sign(site, dir),
            coupling: c.epsilon,
        });
    }
    for link in 0..lattice.n_links() {
        out.push(FermionicTerm {
            kind: TermKind::Electric,
            sites: vec![],
            links: vec![link],
            sign: 1.0,
            coupling: c.lambda_e,
        });
    }
    if lattice.dimension() >= 2 {
        let n_sites = lattice.n_sites();
        for p in lattice.plaquettes() {
            out.push(FermionicTerm {
                kind: TermKind::Plaquette,
                sites: vec![p.site],
                links: p.link_qubits.iter().map(|q| q - n_sites).collect(),
                sign: 1.0,
                coupling: c.lambda_p,
            });
        }
    }
    out
}

/// Physical Pauli form on `N + dN` qubits.
pub fn physical_hamiltonian(lattice: &Lattice, c: &Couplings) -> Result<PauliSum> {
    c.validate()?;
    jordan_wigner(&build_fermionic(lattice, c), lattice)
}

/// Physical Pauli form restricted to one kind of term.
pub fn physical_terms(lattice: &Lattice, c: &Couplings, kind: TermKind) -> Result<PauliSum> {
    c.validate()?;
    let terms: Vec<_> = build_fermionic(lattice, c)
        .into_iter()
        .filter(|t| t.kind == kind)
        .collect();
    jordan_wigner(&terms, lattice)
}

/// Logical form on the `dN` link qubits of the bare Gauss'-law code.
pub fn logical_hamiltonian(lattice: &Lattice, c: &Couplings) -> Result<PauliSum> {
    to_logical(&physical_hamiltonian(lattice, c)?, &gauss_code::gauss_law_code(lattice))
}

/// Logical form of one kind of term.
pub fn logical_terms(lattice: &Lattice, c: &Couplings, kind: TermKind) -> Result<PauliSum> {
    to_logical(
        &physical_terms(lattice, c, kind)?,
        &gauss_code::gauss_law_code(lattice),
    )
}

/// Dense Hermitian matrix of a Pauli sum, subject to the qubit cap.
pub fn to_matrix(h: &PauliSum) -> Result<CMatrix> {
    dense::to_matrix(h)
}

/// Output form selector for serialization front-ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Fermionic,
    Pauli,
    Logical,
    Boson,
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fermionic" => Ok(Form::Fermionic),
            "pauli" => Ok(Form::Pauli),
            "logical" => Ok(Form::Logical),
            "boson" => Ok(Form::Boson),
            other => Err(Error::Parse(format!(
                "unknown form `{other}` (expected fermionic, pauli, logical or boson)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_counts() {
        let count = |dims: &[usize]| {
            let terms = build_fermionic(&Lattice::new(dims).unwrap(), &Couplings::default());
            TermKind::ALL.map(|k| terms.iter().filter(|t| t.kind == k).count())
        };
        assert_eq!(count(&[4]), [4, 4, 4, 0]);
        assert_eq!(count(&[3, 3]), [9, 18, 18, 9]);
    }

    #[test]
    fn couplings_reject_nan() {
        assert!(Couplings::new(f64::NAN, 0.0, 0.0, 0.0).validate().is_err());
        let c: Couplings = serde_json::from_str(r#"{"m":1,"epsilon":2,"lambda_E":3}"#).unwrap();
        assert_eq!(c, Couplings::new(1.0, 2.0, 3.0, 0.0));
    }

    #[test]
    fn form_names() {
        assert_eq!("boson".parse::<Form>().unwrap(), Form::Boson);
        assert!("spin".parse::<Form>().is_err());
    }
}
