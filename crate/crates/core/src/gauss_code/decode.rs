use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{block_qubit, CodeKind, CodeParams, StabilizerCode, Syndrome};
use crate::lattice::Lattice;
use crate::par::{self, Execution};
use crate::pauli::{Pauli, PauliString};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeStatus {
    Clean,
    Corrected,
    Uncorrectable,
}

impl std::fmt::Display for DecodeStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DecodeStatus::Clean => "clean",
            DecodeStatus::Corrected => "corrected",
            DecodeStatus::Uncorrectable => "uncorrectable",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// Identity unless `status` is `Corrected`.
    pub correction: PauliString,
}

impl DecodeResult {
    fn clean(n: usize) -> Self {
        DecodeResult {
            status: DecodeStatus::Clean,
            correction: PauliString::identity(n),
        }
    }

    fn uncorrectable(n: usize) -> Self {
        DecodeResult {
            status: DecodeStatus::Uncorrectable,
            correction: PauliString::identity(n),
        }
    }

    fn corrected(correction: PauliString) -> Self {
        DecodeResult {
            status: DecodeStatus::Corrected,
            correction,
        }
    }

    /// Merges the X and Z halves of a CSS decode.
    fn combine(a: DecodeResult, b: DecodeResult) -> Self {
        use DecodeStatus::*;
        let n = a.correction.n_qubits();
        match (a.status, b.status) {
            (Uncorrectable, _) | (_, Uncorrectable) => DecodeResult::uncorrectable(n),
            (Clean, Clean) => DecodeResult::clean(n),
            _ => DecodeResult::corrected(&a.correction * &b.correction),
        }
    }
}

/// Single-qubit error families swept by validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorClass {
    X,
    All,
}

impl ErrorClass {
    fn letters(self) -> &'static [Pauli] {
        match self {
            ErrorClass::X => &[Pauli::X],
            ErrorClass::All => &[Pauli::X, Pauli::Y, Pauli::Z],
        }
    }

    /// The class each code kind promises to correct.
    pub fn for_kind(kind: CodeKind) -> Self {
        match kind {
            CodeKind::Classical => ErrorClass::X,
            _ => ErrorClass::All,
        }
    }
}

impl std::str::FromStr for ErrorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(ErrorClass::X),
            "all" => Ok(ErrorClass::All),
            other => Err(Error::Parse(format!("unknown error class {other:?}"))),
        }
    }
}

fn check_len(code: &StabilizerCode, s: &Syndrome) -> Result<()> {
    if s.0.len() != code.generators.len() {
        return Err(Error::Invalid(format!(
            "syndrome has {} bits, code has {} generators",
            s.0.len(),
            code.generators.len()
        )));
    }
    Ok(())
}

fn lattice_of(code: &StabilizerCode) -> Result<&Lattice> {
    code.lattice
        .as_ref()
        .filter(|_| matches!(code.kind, CodeKind::Classical | CodeKind::PhaseFirst | CodeKind::GaussFirst))
        .ok_or_else(|| Error::Unsupported(format!("structural decoding of a {} code", code.kind)))
}

/// Lattice qubit flipped by a single `X`, from the defective Gauss sites.
/// `Some(None)` means no defect; `None` means not a single-error pattern.
fn locate_x(lattice: &Lattice, defects: &[usize]) -> Option<Option<usize>> {
    match defects {
        [] => Some(None),
        [s] => Some(Some(lattice.site_qubit(*s))),
        [a, b] => {
            let shared: Vec<usize> = (0..lattice.n_links())
                .filter(|&l| {
                    let (u, v) = lattice.link_endpoints(l);
                    (u, v) == (*a, *b) || (u, v) == (*b, *a)
                })
                .collect();
            match shared[..] {
                [l] => Some(Some(lattice.n_sites() + l)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Bit-flip decoding from the Gauss part of the syndrome: one defect marks
/// the site, two neighbouring defects mark the link between them.
pub fn decode_x(code: &StabilizerCode, syndrome: &Syndrome) -> Result<DecodeResult> {
    check_len(code, syndrome)?;
    let lattice = lattice_of(code)?;
    let n = code.n_physical;
    let sites = lattice.n_sites();
    let gauss = &syndrome.0[..code.n_gauss];
    let copies = if code.kind == CodeKind::GaussFirst { 3 } else { 1 };

    let mut found = None;
    for c in 0..copies {
        let defects: Vec<usize> = (0..sites).filter(|&s| gauss[c * sites + s]).collect();
        match locate_x(lattice, &defects) {
            None => return Ok(DecodeResult::uncorrectable(n)),
            Some(None) => {}
            Some(Some(q)) => {
                if found.is_some() {
                    return Ok(DecodeResult::uncorrectable(n));
                }
                found = Some((q, c));
            }
        }
    }
    Ok(match found {
        None => DecodeResult::clean(n),
        Some((q, c)) => {
            let target = if code.kind == CodeKind::Classical { q } else { block_qubit(q, c) };
            DecodeResult::corrected(PauliString::single(n, target, Pauli::X))
        }
    })
}

/// Copy holding a single `Z` from the two phase-flip check bits of a block.
fn repetition_copy(a: bool, b: bool) -> Option<usize> {
    match (a, b) {
        (false, false) => None,
        (true, false) => Some(0),
        (true, true) => Some(1),
        (false, true) => Some(2),
    }
}

/// Phase-flip decoding from the X-check part of the syndrome.
pub fn decode_z(code: &StabilizerCode, syndrome: &Syndrome) -> Result<DecodeResult> {
    check_len(code, syndrome)?;
    let lattice = lattice_of(code)?;
    let n = code.n_physical;
    let checks = &syndrome.0[code.n_gauss..];
    let pairs: Vec<(usize, usize)> = (0..checks.len() / 2)
        .filter_map(|i| repetition_copy(checks[2 * i], checks[2 * i + 1]).map(|c| (i, c)))
        .collect();
    match code.kind {
        CodeKind::Classical => Err(Error::NotApplicable(
            "the bare Gauss code has no phase-flip checks".into(),
        )),
        CodeKind::PhaseFirst => Ok(match pairs[..] {
            [] => DecodeResult::clean(n),
            [(q, c)] => DecodeResult::corrected(PauliString::single(n, block_qubit(q, c), Pauli::Z)),
            _ => DecodeResult::uncorrectable(n),
        }),
        CodeKind::GaussFirst => {
            // A Z on copy c of a link flips only that link's check pair; on a
            // site it flips the pairs of every incident link.
            if pairs.is_empty() {
                return Ok(DecodeResult::clean(n));
            }
            let c = pairs[0].1;
            if pairs.iter().any(|&(_, c2)| c2 != c) {
                return Ok(DecodeResult::uncorrectable(n));
            }
            let mut flagged: Vec<usize> = pairs.iter().map(|&(l, _)| l).collect();
            flagged.sort_unstable();
            if let [l] = flagged[..] {
                let q = lattice.n_sites() + l;
                return Ok(DecodeResult::corrected(PauliString::single(n, block_qubit(q, c), Pauli::Z)));
            }
            let candidates: Vec<usize> = (0..lattice.n_sites())
                .filter(|&s| incident_links(lattice, s) == flagged)
                .collect();
            Ok(match candidates[..] {
                [s] => DecodeResult::corrected(PauliString::single(n, block_qubit(s, c), Pauli::Z)),
                _ => DecodeResult::uncorrectable(n),
            })
        }
        _ => unreachable!("lattice_of rejects other kinds"),
    }
}

fn incident_links(lattice: &Lattice, site: usize) -> Vec<usize> {
    let sup = lattice.gauss_support(site).expect("site in range");
    let mut links: Vec<usize> = sup
        .link_qubits
        .iter()
        .map(|&q| q - lattice.n_sites())
        .collect();
    links.sort_unstable();
    links.dedup();
    links
}

/// Syndrome-to-correction decoder for one code.
enum Decoder {
    Structural,
    Lookup(HashMap<Vec<bool>, PauliString>),
}

impl Decoder {
    fn for_code(code: &StabilizerCode) -> Result<Self> {
        Ok(match code.kind {
            CodeKind::Classical | CodeKind::PhaseFirst | CodeKind::GaussFirst => Decoder::Structural,
            _ => {
                let mut table = HashMap::new();
                for (_, _, e) in single_errors(code.n_physical, ErrorClass::All) {
                    let s = code.syndrome(&e)?;
                    if !s.is_trivial() {
                        table.entry(s.0).or_insert(e);
                    }
                }
                Decoder::Lookup(table)
            }
        })
    }

    fn decode(&self, code: &StabilizerCode, s: &Syndrome) -> Result<DecodeResult> {
        check_len(code, s)?;
        let n = code.n_physical;
        match self {
            Decoder::Structural => match code.kind {
                CodeKind::Classical => decode_x(code, s),
                _ => Ok(DecodeResult::combine(decode_x(code, s)?, decode_z(code, s)?)),
            },
            Decoder::Lookup(table) => Ok(if s.is_trivial() {
                DecodeResult::clean(n)
            } else {
                table
                    .get(&s.0)
                    .map_or_else(|| DecodeResult::uncorrectable(n), |e| DecodeResult::corrected(e.clone()))
            }),
        }
    }
}

/// Full single-error decode for any code kind. Lattice codes use the
/// structural rules; other codes use a single-error lookup table.
pub fn decode(code: &StabilizerCode, syndrome: &Syndrome) -> Result<DecodeResult> {
    Decoder::for_code(code)?.decode(code, syndrome)
}

fn single_errors(n: usize, class: ErrorClass) -> Vec<(usize, Pauli, PauliString)> {
    (0..n)
        .flat_map(|q| {
            class
                .letters()
                .iter()
                .map(move |&l| (q, l, PauliString::single(n, q, l)))
        })
        .collect()
}

/// One row of a decode sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub error_qubit: usize,
    pub error_pauli: String,
    pub syndrome: String,
    pub status: DecodeStatus,
    pub correction: String,
    /// Error times correction acts trivially on the code space.
    pub success: bool,
}

/// Injects every single-qubit error of `class`, decodes, and checks that the
/// residual acts trivially on the code space.
pub fn decode_sweep(code: &StabilizerCode, class: ErrorClass, exec: Execution) -> Result<Vec<SweepRecord>> {
    let decoder = Decoder::for_code(code)?;
    let errors = single_errors(code.n_physical, class);
    par::map(exec, &errors, |(q, letter, e)| {
        let s = code.syndrome(e)?;
        let r = decoder.decode(code, &s)?;
        let residual = e * &r.correction;
        Ok(SweepRecord {
            error_qubit: *q,
            error_pauli: letter.as_char().to_string(),
            syndrome: s.to_string(),
            status: r.status,
            correction: r.correction.to_string(),
            success: r.status == DecodeStatus::Corrected && code.is_stabilizer_equivalent(&residual),
        })
    })
    .into_iter()
    .collect()
}

/// Structural and exhaustive-decoding checks of a code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub kind: CodeKind,
    pub declared: CodeParams,
    pub rank: usize,
    pub k_from_rank: usize,
    pub k_matches: bool,
    pub noncommuting_pairs: Vec<(usize, usize)>,
    pub logical_issues: Vec<String>,
    pub max_z_weight: usize,
    pub max_x_weight: usize,
    pub error_class: ErrorClass,
    pub errors_tested: usize,
    pub errors_corrected: usize,
    /// Syndrome collisions between errors that are not stabilizer-equivalent.
    pub syndrome_collisions: Vec<(String, String)>,
    pub syndrome_injective: bool,
    /// A weight-2 X error the decoder fails on, showing the distance limit.
    pub weight_two_failure: Option<String>,
    pub passed: bool,
}

fn label(q: usize, l: Pauli) -> String {
    format!("{}{}", l.as_char(), q)
}

pub fn validate(code: &StabilizerCode, class: ErrorClass) -> Result<ValidationReport> {
    let sweep = decode_sweep(code, class, Execution::default())?;
    let errors_corrected = sweep.iter().filter(|r| r.success).count();

    let mut groups: HashMap<String, Vec<(usize, Pauli)>> = HashMap::new();
    for (q, l, _) in single_errors(code.n_physical, class) {
        let s = code.syndrome(&PauliString::single(code.n_physical, q, l))?;
        groups.entry(s.to_string()).or_default().push((q, l));
    }
    let mut syndrome_collisions = Vec::new();
    for members in groups.values() {
        let (q0, l0) = members[0];
        let e0 = PauliString::single(code.n_physical, q0, l0);
        for &(q, l) in &members[1..] {
            let e = PauliString::single(code.n_physical, q, l);
            if !code.is_stabilizer_equivalent(&(&e0 * &e)) {
                syndrome_collisions.push((label(q0, l0), label(q, l)));
            }
        }
    }
    syndrome_collisions.sort();

    let decoder = Decoder::for_code(code)?;
    let n = code.n_physical;
    let mut weight_two_failure = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            let e = PauliString::x_on(n, &[a, b]);
            let r = decoder.decode(code, &code.syndrome(&e)?)?;
            if !code.is_stabilizer_equivalent(&(&e * &r.correction)) {
                weight_two_failure = Some(format!("X{a} X{b} -> {}", r.status));
                break 'outer;
            }
        }
    }

    let rank = code.rank();
    let k_from_rank = n - rank;
    let noncommuting_pairs = code.noncommuting_generator_pairs();
    let logical_issues = code.logical_issues();
    let (max_z_weight, max_x_weight) = code.max_weights();
    let syndrome_injective = syndrome_collisions.is_empty();
    let k_matches = k_from_rank == code.params.k && code.logical_x.len() == code.params.k;
    let passed = k_matches
        && noncommuting_pairs.is_empty()
        && logical_issues.is_empty()
        && errors_corrected == sweep.len()
        && syndrome_injective;
    Ok(ValidationReport {
        kind: code.kind,
        declared: code.params,
        rank,
        k_from_rank,
        k_matches,
        noncommuting_pairs,
        logical_issues,
        max_z_weight,
        max_x_weight,
        error_class: class,
        errors_tested: sweep.len(),
        errors_corrected,
        syndrome_collisions,
        syndrome_injective,
        weight_two_failure,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{classical_code, concat_repetition, RepetitionOrder};
    use super::*;

    fn syn(bits: &str) -> Syndrome {
        Syndrome(bits.chars().map(|c| c == '1').collect())
    }

    #[test]
    fn bare_code_rules() {
        let code = classical_code(&Lattice::new(&[3]).unwrap()).unwrap();
        assert_eq!(decode_x(&code, &syn("000")).unwrap().status, DecodeStatus::Clean);
        // Defects at sites 0 and 1 share link L_0, which is qubit 3.
        let r = decode_x(&code, &syn("110")).unwrap();
        assert_eq!(r.correction, PauliString::single(6, 3, Pauli::X));
        let r = decode_x(&code, &syn("010")).unwrap();
        assert_eq!(r.correction, PauliString::single(6, 1, Pauli::X));
        assert_eq!(decode_x(&code, &syn("111")).unwrap().status, DecodeStatus::Uncorrectable);
        assert!(decode_x(&code, &syn("11")).is_err());
        assert!(decode_z(&code, &syn("000")).is_err());
    }

    #[test]
    fn repetition_rules() {
        let code = concat_repetition(
            &classical_code(&Lattice::new(&[3]).unwrap()).unwrap(),
            RepetitionOrder::PhaseFirst,
        )
        .unwrap();
        let mut bits = vec![false; code.generators.len()];
        // Block of lattice qubit 2: checks 2*2 and 2*2+1 after the 3 Gauss bits.
        bits[3 + 4] = true;
        let r = decode_z(&code, &Syndrome(bits.clone())).unwrap();
        assert_eq!(r.correction, PauliString::single(18, 6, Pauli::Z));
        bits[3 + 5] = true;
        let r = decode_z(&code, &Syndrome(bits.clone())).unwrap();
        assert_eq!(r.correction, PauliString::single(18, 7, Pauli::Z));
        bits[3] = true;
        assert_eq!(decode_z(&code, &Syndrome(bits)).unwrap().status, DecodeStatus::Uncorrectable);
    }

    #[test]
    fn sweeps_are_clean() {
        let base = classical_code(&Lattice::new(&[4]).unwrap()).unwrap();
        let report = validate(&base, ErrorClass::X).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.errors_tested, 8);
        assert!(report.weight_two_failure.is_some());
        let z_report = validate(&base, ErrorClass::All).unwrap();
        assert!(!z_report.passed);

        for order in [RepetitionOrder::PhaseFirst, RepetitionOrder::GaussFirst] {
            let code = concat_repetition(&base, order).unwrap();
            let r = validate(&code, ErrorClass::All).unwrap();
            assert!(r.passed, "{order:?}: {r:?}");
            assert_eq!(r.errors_tested, 72);
        }
    }

    #[test]
    fn sweep_policies_agree() {
        let code = concat_repetition(
            &classical_code(&Lattice::new(&[3]).unwrap()).unwrap(),
            RepetitionOrder::GaussFirst,
        )
        .unwrap();
        let a = decode_sweep(&code, ErrorClass::All, Execution::Sequential).unwrap();
        let b = decode_sweep(&code, ErrorClass::All, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
