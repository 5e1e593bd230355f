//! Gauss'-law stabilizer codes.
//!
//! The bare code uses the signed Gauss operators `(−1)^{|l|} Z_{S_l} ∏ Z_L`
//! as stabilizers on the `N + dN` lattice qubits. It detects single `X`
//! errors only. The repetition concatenations replace every lattice qubit
//! by a 3-qubit phase-flip block (physical qubit `3q + c` for copy `c`),
//! which adds `Z` protection. The Hamming concatenation uses the logical
//! qubits of a quantum Hamming code instead.
//!
//! Generators are always listed Gauss-type first, then the X-type checks.

mod decode;
mod fixtures;
mod hamming;

use serde::{Deserialize, Serialize};

pub use decode::{
    decode, decode_sweep, decode_x, decode_z, validate, DecodeResult, DecodeStatus, ErrorClass,
    SweepRecord, ValidationReport,
};
pub use fixtures::{
    patch_sizes, hamming11_fixture, transversal_cnot_check, CnotCheckReport, FixtureReport,
};
pub use hamming::{concat_hamming, quantum_hamming, HammingReport};

use crate::dense::CMatrix;
use crate::gf2;
use crate::lattice::Lattice;
use crate::pauli::PauliString;
use crate::statevector;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    Classical,
    PhaseFirst,
    GaussFirst,
    Hamming,
    /// Hand-entered codes used as fixtures.
    Fixture,
}

impl std::fmt::Display for CodeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CodeKind::Classical => "classical",
            CodeKind::PhaseFirst => "phase-first",
            CodeKind::GaussFirst => "gauss-first",
            CodeKind::Hamming => "hamming",
            CodeKind::Fixture => "fixture",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(CodeKind::Classical),
            "phase-first" => Ok(CodeKind::PhaseFirst),
            "gauss-first" => Ok(CodeKind::GaussFirst),
            "hamming" => Ok(CodeKind::Hamming),
            other => Err(Error::Parse(format!("unknown code kind {other:?}"))),
        }
    }
}

/// Order of the two layers in a repetition concatenation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepetitionOrder {
    /// Each lattice qubit is first encoded in a phase-flip block; the Gauss
    /// operators then act on whole blocks.
    PhaseFirst,
    /// Three copies of the Gauss code, tied together by phase-flip checks
    /// on their logical `X̄`.
    GaussFirst,
}

/// Declared `[n, k, d]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub distance: usize,
}

#[derive(Clone, Debug)]
pub struct StabilizerCode {
    pub kind: CodeKind,
    pub n_physical: usize,
    pub generators: Vec<PauliString>,
    pub logical_x: Vec<PauliString>,
    pub logical_z: Vec<PauliString>,
    pub params: CodeParams,
    pub lattice: Option<Lattice>,
    /// Number of leading Gauss-type (Z) generators.
    pub n_gauss: usize,
}

/// Bit per generator: `true` for eigenvalue `−1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome(pub Vec<bool>);

impl Syndrome {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    pub fn defects(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i]).collect()
    }
}

impl std::fmt::Display for Syndrome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0
            .iter()
            .try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
    }
}

impl StabilizerCode {
    pub fn syndrome(&self, error: &PauliString) -> Result<Syndrome> {
        self.generators
            .iter()
            .map(|g| Ok(!g.commutes(error)?))
            .collect::<Result<Vec<_>>>()
            .map(Syndrome)
    }

    /// GF(2) rank of the generators.
    pub fn rank(&self) -> usize {
        let rows: Vec<_> = self.generators.iter().map(gf2::symplectic_row).collect();
        gf2::rank(&rows)
    }

    pub fn k_from_rank(&self) -> usize {
        self.n_physical - self.rank()
    }

    /// Pairs `(i, j)` of generators that anticommute.
    pub fn noncommuting_generator_pairs(&self) -> Vec<(usize, usize)> {
        let g = &self.generators;
        let mut out = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if !g[i].commutes_with(&g[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Human-readable violations of the logical-operator contract.
    pub fn logical_issues(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if self.logical_x.len() != self.logical_z.len() {
            issues.push(format!(
                "{} logical X vs {} logical Z",
                self.logical_x.len(),
                self.logical_z.len()
            ));
        }
        for (name, ops) in [("X", &self.logical_x), ("Z", &self.logical_z)] {
            for (i, l) in ops.iter().enumerate() {
                for (j, g) in self.generators.iter().enumerate() {
                    if !l.commutes_with(g) {
                        issues.push(format!("logical {name}{i} anticommutes with generator {j}"));
                    }
                }
            }
        }
        for (i, x) in self.logical_x.iter().enumerate() {
            for (j, z) in self.logical_z.iter().enumerate() {
                if x.commutes_with(z) == (i == j) {
                    issues.push(format!("logical X{i} / Z{j} pairing is wrong"));
                }
            }
            for (j, x2) in self.logical_x.iter().enumerate().skip(i + 1) {
                if !x.commutes_with(x2) {
                    issues.push(format!("logical X{i} anticommutes with X{j}"));
                }
            }
        }
        for (i, z) in self.logical_z.iter().enumerate() {
            for (j, z2) in self.logical_z.iter().enumerate().skip(i + 1) {
                if !z.commutes_with(z2) {
                    issues.push(format!("logical Z{i} anticommutes with Z{j}"));
                }
            }
        }
        issues
    }

    /// True when `op` commutes with every generator and every logical, i.e.
    /// acts trivially on the code space (given a complete logical basis).
    pub fn is_stabilizer_equivalent(&self, op: &PauliString) -> bool {
        self.generators
            .iter()
            .chain(&self.logical_x)
            .chain(&self.logical_z)
            .all(|g| g.commutes_with(op))
    }

    /// Largest weight among Z-type and among X-type generators.
    pub fn max_weights(&self) -> (usize, usize) {
        let max_of = |pred: fn(&PauliString) -> bool| {
            self.generators
                .iter()
                .filter(|g| pred(g))
                .map(PauliString::weight)
                .max()
                .unwrap_or(0)
        };
        (max_of(PauliString::is_z_type), max_of(PauliString::is_x_type))
    }

    pub fn codespace_projector(&self) -> Result<CMatrix> {
        statevector::codespace_projector(self.n_physical, &self.generators)
    }

    /// Encoding isometry with columns `X̄^x |0̄⟩`.
    pub fn encoding_isometry(&self) -> Result<CMatrix> {
        statevector::encoding_isometry(
            self.n_physical,
            &self.generators,
            &self.logical_x,
            &self.logical_z,
        )
    }
}

/// Signed Gauss operators `(−1)^{|l|} Z_{S_l} ∏_{links at l} Z_L`, one per
/// site. Links that wrap onto themselves cancel.
pub fn gauss_generators(lattice: &Lattice) -> Vec<PauliString> {
    let n = lattice.n_qubits();
    (0..lattice.n_sites())
        .map(|s| {
            let sup = lattice.gauss_support(s).expect("site in range");
            let g = PauliString::z_on(n, &sup.qubits());
            if lattice.staggered_sign(s) < 0.0 {
                g.negated()
            } else {
                g
            }
        })
        .collect()
}

/// `X̄_{l,k} = X_{S_l} X_{L_{l,k}} X_{S_{l+k}}`, indexed like the links.
pub fn link_logical_x(lattice: &Lattice) -> Vec<PauliString> {
    let n = lattice.n_qubits();
    (0..lattice.n_links())
        .map(|link| {
            let (a, b) = lattice.link_endpoints(link);
            PauliString::x_on(n, &[a, lattice.n_sites() + link, b])
        })
        .collect()
}

/// `Z̄_{l,k} = Z_{L_{l,k}}`.
pub fn link_logical_z(lattice: &Lattice) -> Vec<PauliString> {
    let n = lattice.n_qubits();
    (0..lattice.n_links())
        .map(|link| PauliString::z_on(n, &[lattice.n_sites() + link]))
        .collect()
}

/// The bare Gauss'-law code without the single-error guarantee check.
/// Useful for algebraic identities on lattices smaller than `3^d` sites.
pub fn gauss_law_code(lattice: &Lattice) -> StabilizerCode {
    let generators = gauss_generators(lattice);
    StabilizerCode {
        kind: CodeKind::Classical,
        n_physical: lattice.n_qubits(),
        n_gauss: generators.len(),
        generators,
        logical_x: link_logical_x(lattice),
        logical_z: link_logical_z(lattice),
        params: CodeParams {
            n: lattice.n_qubits(),
            k: lattice.n_links(),
            distance: 3,
        },
        lattice: Some(lattice.clone()),
    }
}

/// `[N + dN, dN, 3]` code correcting one `X` error. Requires `N ≥ 3^d`.
pub fn classical_code(lattice: &Lattice) -> Result<StabilizerCode> {
    if !lattice.theorem1_applicable() {
        return Err(Error::NotApplicable(format!(
            "{} sites is below 3^{} = {}",
            lattice.n_sites(),
            lattice.dimension(),
            3usize.pow(lattice.dimension() as u32)
        )));
    }
    Ok(gauss_law_code(lattice))
}

/// Physical qubit of copy `c` of lattice qubit `q`.
pub(crate) fn block_qubit(q: usize, c: usize) -> usize {
    3 * q + c
}

/// Repetition concatenation of a bare Gauss code: `[[3(N + dN), dN, 3]]`.
pub fn concat_repetition(code: &StabilizerCode, order: RepetitionOrder) -> Result<StabilizerCode> {
    let lattice = match (&code.lattice, code.kind) {
        (Some(l), CodeKind::Classical) => l.clone(),
        _ => {
            return Err(Error::Unsupported(
                "repetition concatenation needs a bare Gauss code".into(),
            ))
        }
    };
    let nq = lattice.n_qubits();
    let n = 3 * nq;
    let copy = |p: &PauliString, c: usize| p.remap(n, |q| block_qubit(q, c));
    let all_copies = |p: &PauliString| {
        let mut out = PauliString::identity(n).with_phase(p.phase_exp());
        for c in 0..3 {
            out = &out * &copy(&p.letters_only(), c);
        }
        out
    };

    let mut generators = Vec::new();
    let n_gauss;
    match order {
        RepetitionOrder::PhaseFirst => {
            generators.extend(code.generators.iter().map(all_copies));
            n_gauss = generators.len();
            for q in 0..nq {
                generators.push(PauliString::x_on(n, &[block_qubit(q, 0), block_qubit(q, 1)]));
                generators.push(PauliString::x_on(n, &[block_qubit(q, 1), block_qubit(q, 2)]));
            }
        }
        RepetitionOrder::GaussFirst => {
            for c in 0..3 {
                generators.extend(code.generators.iter().map(|g| copy(g, c)));
            }
            n_gauss = generators.len();
            for lx in &code.logical_x {
                generators.push(&copy(lx, 0) * &copy(lx, 1));
                generators.push(&copy(lx, 1) * &copy(lx, 2));
            }
        }
    }

    Ok(StabilizerCode {
        kind: match order {
            RepetitionOrder::PhaseFirst => CodeKind::PhaseFirst,
            RepetitionOrder::GaussFirst => CodeKind::GaussFirst,
        },
        n_physical: n,
        generators,
        logical_x: code.logical_x.iter().map(|lx| copy(lx, 0)).collect(),
        logical_z: code.logical_z.iter().map(all_copies).collect(),
        params: CodeParams {
            n,
            k: code.params.k,
            distance: 3,
        },
        lattice: Some(lattice),
        n_gauss,
    })
}

/// Builds any lattice code kind by name.
pub fn build(kind: CodeKind, lattice: &Lattice) -> Result<StabilizerCode> {
    match kind {
        CodeKind::Classical => classical_code(lattice),
        CodeKind::PhaseFirst => concat_repetition(&classical_code(lattice)?, RepetitionOrder::PhaseFirst),
        CodeKind::GaussFirst => concat_repetition(&classical_code(lattice)?, RepetitionOrder::GaussFirst),
        CodeKind::Hamming => concat_hamming(lattice)?.code.ok_or_else(|| {
            Error::CapacityExceeded {
                n: hamming::hamming_length(lattice.n_qubits()),
                cap: hamming::MAX_EXPLICIT,
            }
        }),
        CodeKind::Fixture => Err(Error::Unsupported("fixtures are not lattice codes".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(d: &[usize]) -> Lattice {
        Lattice::new(d).unwrap()
    }

    #[test]
    fn classical_parameters() {
        let c = classical_code(&lat(&[3])).unwrap();
        assert_eq!(c.params, CodeParams { n: 6, k: 3, distance: 3 });
        assert_eq!(c.k_from_rank(), 3);
        let c = classical_code(&lat(&[3, 3])).unwrap();
        assert_eq!((c.params.n, c.params.k), (27, 18));
        assert_eq!(c.k_from_rank(), 18);
        assert!(matches!(classical_code(&lat(&[2])), Err(Error::NotApplicable(_))));
        assert!(c.logical_issues().is_empty());
    }

    #[test]
    fn generator_shapes() {
        let g = gauss_generators(&lat(&[3]));
        assert_eq!(g.len(), 3);
        assert!(g.iter().all(|g| g.weight() == 3 && g.is_z_type()));
        assert_eq!(g[1].phase_exp(), 2);
        assert!(gauss_generators(&lat(&[3, 3])).iter().all(|g| g.weight() == 5));
    }

    #[test]
    fn logical_pair_anticommutes() {
        let l = lat(&[4]);
        let x = &link_logical_x(&l)[2];
        let z = &link_logical_z(&l)[2];
        assert_eq!((x * z).phase_exp(), ((z * x).phase_exp() + 2) % 4);
    }

    #[test]
    fn concatenations() {
        let c = classical_code(&lat(&[3])).unwrap();
        for order in [RepetitionOrder::PhaseFirst, RepetitionOrder::GaussFirst] {
            let cc = concat_repetition(&c, order).unwrap();
            assert_eq!(cc.params, CodeParams { n: 18, k: 3, distance: 3 });
            assert_eq!(cc.k_from_rank(), 3);
            assert!(cc.noncommuting_generator_pairs().is_empty());
            assert!(cc.logical_issues().is_empty(), "{:?}", cc.logical_issues());
        }
        let pf = concat_repetition(&c, RepetitionOrder::PhaseFirst).unwrap();
        assert_eq!(pf.max_weights(), (9, 2));
        let gf = concat_repetition(&c, RepetitionOrder::GaussFirst).unwrap();
        assert_eq!(gf.max_weights(), (3, 6));
        assert!(concat_repetition(&pf, RepetitionOrder::PhaseFirst).is_err());
    }

    #[test]
    fn projector_rank() {
        let c = classical_code(&lat(&[3])).unwrap();
        let pi = c.codespace_projector().unwrap();
        assert!((pi.trace().re - 8.0).abs() < 1e-12);
    }

    #[test]
    fn kind_names() {
        for k in [CodeKind::Classical, CodeKind::PhaseFirst, CodeKind::GaussFirst, CodeKind::Hamming] {
            assert_eq!(k.to_string().parse::<CodeKind>().unwrap(), k);
        }
        assert!("steane".parse::<CodeKind>().is_err());
    }
}
