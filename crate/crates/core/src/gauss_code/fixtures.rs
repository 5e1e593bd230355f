//! Hand-entered codes and small structural checks.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{CodeKind, CodeParams, StabilizerCode};
use crate::lattice::Lattice;
use crate::pauli::{Pauli, PauliString};
use crate::statevector::{encoding_isometry, Statevector};
use crate::tolerances::PROBABILITY;
use crate::{Error, Result};

fn x1(n: usize, qubits: &[usize]) -> PauliString {
    PauliString::x_on(n, &qubits.iter().map(|q| q - 1).collect::<Vec<_>>())
}

fn z1(n: usize, qubits: &[usize]) -> PauliString {
    PauliString::z_on(n, &qubits.iter().map(|q| q - 1).collect::<Vec<_>>())
}

/// Consistency report for a hand-entered code. Never asserts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureReport {
    pub n_physical: usize,
    pub generator_names: Vec<String>,
    pub rank: usize,
    pub k_from_rank: usize,
    pub listed_logicals: usize,
    /// Generator pairs (by name) that anticommute.
    pub noncommuting: Vec<(String, String)>,
    pub logical_issues: Vec<String>,
    /// Pairs of single-qubit errors (1-based qubit) with identical syndromes.
    pub x_collisions: Vec<(usize, usize)>,
    pub z_collisions: Vec<(usize, usize)>,
    #[serde(skip)]
    pub code: Option<StabilizerCode>,
}

/// The 11-qubit Hamming phase-flip code for two sites and two links, entered
/// row by row (1-based qubits). The logical rows leave `q10`, `q11` blank and
/// are padded with identity.
pub fn hamming11_fixture() -> FixtureReport {
    let n = 11;
    let named: Vec<(&str, PauliString)> = vec![
        ("S1", x1(n, &[1, 3, 5, 7, 9, 11])),
        ("S2", x1(n, &[2, 3, 6, 7, 10, 11])),
        ("S3", x1(n, &[4, 5, 6, 7])),
        ("S4", x1(n, &[8, 9, 10, 11])),
        ("G1", z1(n, &[2, 3, 8, 9])),
        ("G2", z1(n, &[2, 5, 6, 8, 9])),
        ("G3", z1(n, &[1, 4, 5])),
        ("G4", z1(n, &[4, 7, 8, 11])),
        ("G5", z1(n, &[4, 7, 9, 10])),
    ];
    let logical_z = vec![
        z1(n, &[1, 2, 3]),
        z1(n, &[2, 3, 4, 5]),
        z1(n, &[4, 5, 6, 7]),
        z1(n, &[6, 7, 8, 9]),
        z1(n, &[3, 4, 7]),
    ];
    let logical_x = vec![
        x1(n, &[1]),
        x1(n, &[1, 3, 4, 5]),
        x1(n, &[4, 5, 7, 8]),
        x1(n, &[8]),
        x1(n, &[2, 3]),
    ];

    let code = StabilizerCode {
        kind: CodeKind::Fixture,
        n_physical: n,
        generators: named.iter().map(|(_, g)| g.clone()).collect(),
        logical_x,
        logical_z,
        params: CodeParams { n, k: 5, distance: 3 },
        lattice: None,
        n_gauss: 0,
    };

    let names: Vec<String> = named.iter().map(|(s, _)| s.to_string()).collect();
    let noncommuting = code
        .noncommuting_generator_pairs()
        .into_iter()
        .map(|(i, j)| (names[i].clone(), names[j].clone()))
        .collect();

    let collisions = |letter: Pauli| {
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut out = Vec::new();
        for q in 0..n {
            let s = code
                .syndrome(&PauliString::single(n, q, letter))
                .expect("sizes match")
                .to_string();
            match seen.get(&s) {
                Some(&first) => out.push((first + 1, q + 1)),
                None => {
                    seen.insert(s, q);
                }
            }
        }
        out
    };

    FixtureReport {
        n_physical: n,
        generator_names: names,
        rank: code.rank(),
        k_from_rank: code.k_from_rank(),
        listed_logicals: code.logical_x.len(),
        noncommuting,
        logical_issues: code.logical_issues(),
        x_collisions: collisions(Pauli::X),
        z_collisions: collisions(Pauli::Z),
        code: Some(code),
    }
}

/// Physical qubits in the smallest 2D phase-first patch that can detect one
/// error: a site with its four neighbours and all their links, or a single
/// site with its four links doubled.
pub fn patch_sizes(d: usize, doubling: bool) -> Result<usize> {
    if d != 2 {
        return Err(Error::Unsupported(format!("patch sizes are defined for d = 2, got {d}")));
    }
    let lattice = Lattice::new(&[5, 5])?;
    let center = lattice.site_index(&[2, 2]);
    let mut sites = vec![center];
    if !doubling {
        for dir in 0..2 {
            for delta in [-1, 1] {
                sites.push(lattice.shifted(center, dir, delta));
            }
        }
    }
    let mut links = Vec::new();
    for &s in &sites {
        links.extend(lattice.gauss_support(s)?.link_qubits);
    }
    links.sort_unstable();
    links.dedup();
    let link_count = if doubling { 2 * links.len() } else { links.len() };
    Ok(3 * (sites.len() + link_count))
}

/// One row of the transversal-CNOT truth table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CnotRow {
    pub input: (u8, u8),
    pub expected: (u8, u8),
    pub fidelity: f64,
    pub min_stabilizer_expectation: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CnotCheckReport {
    pub rows: Vec<CnotRow>,
    pub passed: bool,
}

/// Transversal CNOT from the 7-qubit Steane code (qubits 0–6) onto the
/// 3-qubit phase-flip code (qubits 7–9), checked on all logical basis states.
pub fn transversal_cnot_check() -> Result<CnotCheckReport> {
    let n = 10;
    let rows: [&[usize]; 3] = [&[0, 2, 4, 6], &[1, 2, 5, 6], &[3, 4, 5, 6]];
    let mut generators: Vec<PauliString> = Vec::new();
    for r in rows {
        generators.push(PauliString::x_on(n, r));
        generators.push(PauliString::z_on(n, r));
    }
    generators.push(PauliString::x_on(n, &[7, 8]));
    generators.push(PauliString::x_on(n, &[8, 9]));
    let logical_x = [PauliString::x_on(n, &[0, 1, 2]), PauliString::x_on(n, &[7])];
    let logical_z = [PauliString::z_on(n, &[0, 1, 2]), PauliString::z_on(n, &[7, 8, 9])];
    let e = encoding_isometry(n, &generators, &logical_x, &logical_z)?;

    let column = |x: usize| Statevector::from_amplitudes(e.column(x).iter().cloned().collect());
    let mut out = Vec::new();
    for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let mut s = column(usize::from(2 * a + b))?;
        for i in 0..3 {
            s.cnot(i, 7 + i)?;
        }
        let target = column(usize::from(2 * a + (a ^ b)))?;
        let min_stab = generators
            .iter()
            .map(|g| s.expectation(g))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        out.push(CnotRow {
            input: (a, b),
            expected: (a, a ^ b),
            fidelity: s.fidelity(&target)?,
            min_stabilizer_expectation: min_stab,
        });
    }
    let passed = out
        .iter()
        .all(|r| r.fidelity >= 1.0 - PROBABILITY && r.min_stabilizer_expectation >= 1.0 - PROBABILITY);
    Ok(CnotCheckReport { rows: out, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table2_rows() {
        let rep = hamming11_fixture();
        let code = rep.code.as_ref().unwrap();
        assert_eq!(code.generators[0].to_string(), "+XIXIXIXIXIX");
        assert_eq!(code.generators[6].to_string(), "+ZIIZZIIIIII");
        assert_eq!(rep.listed_logicals, 5);
        assert_eq!(rep.generator_names.len(), 9);
    }

    #[test]
    fn patches() {
        assert_eq!(patch_sizes(2, false).unwrap(), 63);
        assert_eq!(patch_sizes(2, true).unwrap(), 27);
        assert!(patch_sizes(3, false).is_err());
    }

    #[test]
    fn steane_to_repetition_cnot() {
        let rep = transversal_cnot_check().unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.rows[2].expected, (1, 1));
    }
}
