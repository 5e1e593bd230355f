//! Concatenation of the bare Gauss code into a quantum Hamming code.

use serde::{Deserialize, Serialize};

use super::{CodeKind, CodeParams, StabilizerCode};
use crate::gf2::{self, BitRow};
use crate::lattice::Lattice;
use crate::pauli::PauliString;
use crate::{Error, Result};

/// Largest Hamming length built explicitly.
pub const MAX_EXPLICIT: usize = 31;

/// Slack factor in the closed-form choice of `r`.
const ALPHA: f64 = 6.0;

/// Smallest `r ≥ 3` with `2^r − 1 − 2r ≥ m`.
pub fn r_min(m: usize) -> usize {
    (3..usize::BITS as usize)
        .find(|&r| (1usize << r) - 1 - 2 * r >= m)
        .expect("r fits in a machine word")
}

pub(crate) fn hamming_length(m: usize) -> usize {
    (1 << r_min(m)) - 1
}

fn qubits_of(row: &[u64], n: usize) -> Vec<usize> {
    (0..n).filter(|&j| gf2::get(row, j)).collect()
}

/// `[[2^r − 1, 2^r − 1 − 2r, 3]]` CSS Hamming code with a symplectic
/// logical basis (`X̄_i` and `Z̄_j` anticommute iff `i = j`).
pub fn quantum_hamming(r: usize) -> Result<StabilizerCode> {
    if !(3..=5).contains(&r) {
        return Err(Error::Unsupported(format!(
            "explicit Hamming codes are built for 3 ≤ r ≤ 5, got {r}"
        )));
    }
    let n = (1usize << r) - 1;
    let checks: Vec<BitRow> = (0..r)
        .map(|i| {
            let mut row = gf2::zeros(n);
            (0..n).filter(|j| ((j + 1) >> i) & 1 == 1).for_each(|j| gf2::set(&mut row, j));
            row
        })
        .collect();

    // Kernel representatives outside the check row space.
    let mut span = checks.clone();
    let mut reps = Vec::new();
    for v in gf2::kernel(&checks, n) {
        if !gf2::in_span(&span, &v) {
            span.push(v.clone());
            reps.push(v);
        }
    }
    let k = reps.len();
    let gram: Vec<BitRow> = reps
        .iter()
        .map(|a| {
            let mut row = gf2::zeros(k);
            reps.iter()
                .enumerate()
                .filter(|(_, b)| gf2::dot(a, b))
                .for_each(|(j, _)| gf2::set(&mut row, j));
            row
        })
        .collect();
    let inv = gf2::inverse(&gram, k)
        .ok_or_else(|| Error::Invalid("degenerate Hamming logical pairing".into()))?;
    let dual: Vec<BitRow> = inv
        .iter()
        .map(|coeffs| {
            let mut v = gf2::zeros(n);
            for (l, rep) in reps.iter().enumerate() {
                if gf2::get(coeffs, l) {
                    v.iter_mut().zip(rep).for_each(|(d, s)| *d ^= s);
                }
            }
            v
        })
        .collect();

    let mut generators: Vec<PauliString> =
        checks.iter().map(|h| PauliString::z_on(n, &qubits_of(h, n))).collect();
    generators.extend(checks.iter().map(|h| PauliString::x_on(n, &qubits_of(h, n))));
    Ok(StabilizerCode {
        kind: CodeKind::Hamming,
        n_physical: n,
        n_gauss: r,
        generators,
        logical_x: reps.iter().map(|v| PauliString::x_on(n, &qubits_of(v, n))).collect(),
        logical_z: dual.iter().map(|v| PauliString::z_on(n, &qubits_of(v, n))).collect(),
        params: CodeParams { n, k, distance: 3 },
        lattice: None,
    })
}

/// Parameters of the Hamming concatenation plus, when small enough, the
/// explicit code.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HammingReport {
    /// `N + dN`.
    pub m: usize,
    pub r: usize,
    pub n_physical: usize,
    /// Logical qubits after concatenation, `dN`.
    pub k: usize,
    pub hamming_logicals: usize,
    /// Real-valued `r` from the closed form with `α = 6`.
    pub r_closed_form: f64,
    /// `(α − 2) log₂(m + 1) − 2 log₂(1 + α log₂(m + 1)/(m + 1))`, must be ≥ 0.
    pub closed_form_margin: f64,
    /// `m + 1 + α log₂(m + 1)`.
    pub total_printed: f64,
    /// `2^{r_closed_form} − 1`, which equals `m + α log₂(m + 1)`.
    pub total_from_r: f64,
    /// `k` as printed alongside the final parameter set, `N + dN`.
    pub k_printed_final: usize,
    pub single_error_guarantee: bool,
    #[serde(skip)]
    pub code: Option<StabilizerCode>,
}

/// Evaluates the Hamming-concatenation parameters for a lattice and builds
/// the code explicitly when `2^r − 1 ≤ 31`.
pub fn concat_hamming(lattice: &Lattice) -> Result<HammingReport> {
    let m = lattice.n_qubits();
    let r = r_min(m);
    let n_physical = (1usize << r) - 1;
    let lg = ((m + 1) as f64).log2();
    let r_closed_form = lg + (1.0 + ALPHA * lg / (m + 1) as f64).log2();
    let code = if n_physical <= MAX_EXPLICIT {
        Some(build_concatenated(lattice, r)?)
    } else {
        None
    };
    Ok(HammingReport {
        m,
        r,
        n_physical,
        k: lattice.n_links(),
        hamming_logicals: n_physical - 2 * r,
        r_closed_form,
        closed_form_margin: (ALPHA - 2.0) * lg - 2.0 * (1.0 + ALPHA * lg / (m + 1) as f64).log2(),
        total_printed: (m + 1) as f64 + ALPHA * lg,
        total_from_r: r_closed_form.exp2() - 1.0,
        k_printed_final: m,
        single_error_guarantee: lattice.theorem1_applicable(),
        code,
    })
}

fn build_concatenated(lattice: &Lattice, r: usize) -> Result<StabilizerCode> {
    let inner = quantum_hamming(r)?;
    let n = inner.n_physical;
    let m = lattice.n_qubits();
    let (lx, lz) = (&inner.logical_x, &inner.logical_z);
    let product = |ops: &[&PauliString]| {
        ops.iter()
            .fold(PauliString::identity(n), |acc, p| &acc * p)
    };

    let mut generators = Vec::new();
    for g in super::gauss_generators(lattice) {
        let factors: Vec<&PauliString> = g.support().into_iter().map(|q| &lz[q]).collect();
        let outer = product(&factors).with_phase(g.phase_exp());
        generators.push(outer);
    }
    let n_gauss = generators.len();
    generators.extend(lz[m..].iter().cloned());
    generators.extend(inner.generators.iter().cloned());

    let sites = lattice.n_sites();
    let logical_x = (0..lattice.n_links())
        .map(|link| {
            let (a, b) = lattice.link_endpoints(link);
            let mut ops = vec![&lx[sites + link]];
            if a != b {
                ops.extend([&lx[a], &lx[b]]);
            }
            product(&ops)
        })
        .collect();
    let logical_z = (0..lattice.n_links()).map(|link| lz[sites + link].clone()).collect();

    Ok(StabilizerCode {
        kind: CodeKind::Hamming,
        n_physical: n,
        generators,
        logical_x,
        logical_z,
        params: CodeParams {
            n,
            k: lattice.n_links(),
            distance: 3,
        },
        lattice: Some(lattice.clone()),
        n_gauss,
    })
}
