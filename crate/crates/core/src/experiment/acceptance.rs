//! Built-in acceptance suite: every headline property of the library as a
//! named, timed check.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::checks;
use crate::dense::{self, CMatrix};
use crate::evolve::{
    check_clifford, gadget_report, lcu_exp_pauli, lcu_exp_pauli_quarter, logical_gate, lower_to_clifford,
    oaa_exp_pauli, success_block, toffoli_bounds, transversal_cnot, trotter_circuit, Circuit, LcuOracles,
    LogicalGate, TrotterReport,
};
use crate::gauss_code::{
    self, classical_code, concat_hamming, concat_repetition, decode_x, gauss_law_code, patch_sizes,
    transversal_cnot_check, validate, CodeKind, ErrorClass, RepetitionOrder,
};
use crate::hamiltonian::{logical_hamiltonian, Couplings};
use crate::pauli::{Pauli, PauliString};
use crate::tolerances::{EXACT_MATRIX, PREP_NORM, PROBABILITY, SPECTRUM};
use crate::{Lattice, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<24} {:>7.3}s / {:>4}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.budget_seconds,
            self.detail
        )
    }
}

/// Outcome of one criterion body: pass flag plus a one-line summary.
type Outcome = Result<(bool, String)>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget_seconds: f64,
    run: fn() -> Outcome,
}

impl Criterion {
    /// Runs the check; errors count as failures. Exceeding the time budget
    /// is reported in the detail but does not fail the criterion.
    pub fn run(&self) -> CriterionResult {
        let start = Instant::now();
        let (passed, mut detail) = match (self.run)() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let seconds = start.elapsed().as_secs_f64();
        if seconds > self.budget_seconds {
            detail.push_str(" (over time budget)");
        }
        CriterionResult {
            id: self.id,
            name: self.name.into(),
            passed,
            detail,
            seconds,
            budget_seconds: self.budget_seconds,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, budget_seconds, run| Criterion {
        id,
        name,
        budget_seconds,
        run,
    };
    vec![
        c(1, "code-parameters", 1.0, code_parameters as fn() -> Outcome),
        c(2, "decoding", 10.0, decoding),
        c(3, "stabilizer-weights", 1.0, stabilizer_weights),
        c(4, "gauge-invariance", 1.0, gauge_invariance),
        c(5, "duality-spectra", 30.0, duality_spectra),
        c(6, "boson-equivalence", 5.0, boson_equivalence),
        c(7, "nonlocal-variant", 5.0, nonlocal_variant),
        c(8, "block-encoding", 5.0, block_encoding),
        c(9, "select-cost", 1.0, select_cost),
        c(10, "lcu-oaa-gadgets", 5.0, gadgets),
        c(11, "trotter-convergence", 10.0, trotter_convergence),
        c(12, "transversal-cnot", 5.0, transversal_cnot_truth_table),
        c(13, "universal-gates", 5.0, universal_gates),
        c(14, "patch-sizes", 1.0, patch_sizes_check),
        c(15, "clifford-only", 1.0, clifford_only),
    ]
}

/// Runs every criterion in order.
pub fn acceptance_suite() -> Vec<CriterionResult> {
    criteria().iter().map(Criterion::run).collect()
}

fn lattice(dims: &[usize]) -> Result<Lattice> {
    Lattice::new(dims)
}

fn code_parameters() -> Outcome {
    let mut bad = Vec::new();
    for dims in [&[3][..], &[4], &[5], &[3, 3]] {
        let l = lattice(dims)?;
        let (n, d) = (l.n_sites(), l.dimension());
        let code = classical_code(&l)?;
        let want = (n + d * n, d * n, 3);
        let p = code.params;
        if (p.n, p.k, p.distance) != want || code.k_from_rank() != d * n {
            bad.push(format!("classical {dims:?}"));
        }
        for order in [RepetitionOrder::PhaseFirst, RepetitionOrder::GaussFirst] {
            let r = concat_repetition(&code, order)?;
            let p = r.params;
            if (p.n, p.k, p.distance) != (3 * (n + d * n), d * n, 3) || r.k_from_rank() != d * n {
                bad.push(format!("{order:?} {dims:?}"));
            }
        }
    }
    let mut totals = Vec::new();
    for dims in [&[3][..], &[4], &[3, 3]] {
        let rep = concat_hamming(&lattice(dims)?)?;
        let m = rep.m as f64;
        let lg = (m + 1.0).log2();
        let ok = (rep.total_printed - (m + 1.0 + 6.0 * lg)).abs() < 1e-9
            && (rep.total_from_r - (m + 6.0 * lg)).abs() < 1e-9
            && rep.closed_form_margin >= 0.0
            && (1usize << rep.r) - 1 == rep.n_physical
            && rep.n_physical - 2 * rep.r >= rep.m
            && rep.code.as_ref().is_none_or(|c| c.k_from_rank() == rep.k);
        if !ok {
            bad.push(format!("hamming m={}", rep.m));
        }
        totals.push(format!("m={}:{:.3}", rep.m, rep.total_printed));
    }
    Ok((bad.is_empty(), format!("mismatches {bad:?}; hamming totals {}", totals.join(" "))))
}

/// `(G_{l−1}, G_l, G_{l+1})` pattern and the qubit it points to, for each
/// site of a 1D chain.
fn single_defect_patterns(l: &Lattice) -> Result<bool> {
    let code = classical_code(l)?;
    let n = l.n_sites();
    let nq = code.n_physical;
    for site in 0..n {
        let prev = (site + n - 1) % n;
        let next = (site + 1) % n;
        let rows: [(Option<usize>, [bool; 3]); 4] = [
            (None, [false, false, false]),
            (Some(l.link_qubit(prev, 0)), [true, true, false]),
            (Some(l.site_qubit(site)), [false, true, false]),
            (Some(l.link_qubit(site, 0)), [false, true, true]),
        ];
        for (qubit, pattern) in rows {
            let error = match qubit {
                Some(q) => PauliString::single(nq, q, Pauli::X),
                None => PauliString::identity(nq),
            };
            let s = code.syndrome(&error)?;
            if [s.0[prev], s.0[site], s.0[next]] != pattern {
                return Ok(false);
            }
            let fix = decode_x(&code, &s)?.correction;
            if fix.support() != qubit.into_iter().collect::<Vec<_>>() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn decoding() -> Outcome {
    let mut bad = Vec::new();
    for dims in [&[3][..], &[4], &[5], &[3, 3]] {
        let v = validate(&classical_code(&lattice(dims)?)?, ErrorClass::X)?;
        if !(v.passed && v.syndrome_injective && v.errors_corrected == v.errors_tested) {
            bad.push(format!("classical {dims:?}"));
        }
    }
    let mut counts = Vec::new();
    for (dims, expected) in [(&[3][..], 54), (&[3, 3], 243)] {
        let code = classical_code(&lattice(dims)?)?;
        for order in [RepetitionOrder::PhaseFirst, RepetitionOrder::GaussFirst] {
            let v = validate(&concat_repetition(&code, order)?, ErrorClass::All)?;
            if !(v.passed && v.errors_tested == expected && v.errors_corrected == expected) {
                bad.push(format!("{order:?} {dims:?}"));
            }
            counts.push(v.errors_corrected);
        }
    }
    for n in [3, 4, 5] {
        if !single_defect_patterns(&lattice(&[n])?)? {
            bad.push(format!("single-defect table N={n}"));
        }
    }
    Ok((bad.is_empty(), format!("failures {bad:?}; repetition corrected {counts:?}")))
}

fn stabilizer_weights() -> Outcome {
    let weights = |dims: &[usize], kind| -> Result<(usize, usize)> {
        Ok(gauss_code::build(kind, &lattice(dims)?)?.max_weights())
    };
    let pf1 = weights(&[3], CodeKind::PhaseFirst)?;
    let gf1 = weights(&[3], CodeKind::GaussFirst)?;
    let pf2 = weights(&[3, 3], CodeKind::PhaseFirst)?;
    let gf2 = weights(&[3, 3], CodeKind::GaussFirst)?;
    let mut ok = pf1 == (9, 2) && gf1 == (3, 6) && pf2.0 == 15 && gf2.0.max(gf2.1) == 6;
    let mut generic = Vec::new();
    for d in 1..=3usize {
        let dims = vec![3; d];
        let pf = weights(&dims, CodeKind::PhaseFirst)?;
        let gf = weights(&dims, CodeKind::GaussFirst)?;
        let (pf_max, gf_max) = (pf.0.max(pf.1), gf.0.max(gf.1));
        ok &= pf_max == 3 * (2 * d + 1) && gf_max == (2 * d + 1).max(6);
        generic.push(format!("d={d}:{pf_max}/{gf_max}"));
    }
    Ok((
        ok,
        format!("1D phase-first {pf1:?}, gauss-first {gf1:?}; 2D {pf2:?}/{gf2:?}; {}", generic.join(" ")),
    ))
}

fn gauge_invariance() -> Outcome {
    let c = Couplings::new(0.8, 1.3, 0.6, 0.9);
    let mut total = 0;
    for dims in [&[3][..], &[4], &[6], &[2, 2], &[3, 3]] {
        total += checks::gauge_violations(&lattice(dims)?, &c)?;
    }
    Ok((total == 0, format!("{total} anticommuting (term, generator) pairs")))
}

fn seeded_couplings(rng: &mut ChaCha8Rng) -> Couplings {
    let mut g = || rng.gen_range(-2.0..2.0);
    Couplings::new(g(), g(), g(), g())
}

fn duality_spectra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    let mut max_dim = 0;
    for _ in 0..3 {
        let c = seeded_couplings(&mut rng);
        for dims in [&[4][..], &[6], &[2, 2]] {
            let l = lattice(dims)?;
            max_dim = max_dim.max(1usize << l.n_qubits());
            worst = worst.max(checks::duality(&l, &c)?.spectrum_gap);
        }
    }
    Ok((
        worst <= SPECTRUM && max_dim <= 1 << 12,
        format!("max spectrum gap {worst:.2e} over 9 cases, largest dimension {max_dim}"),
    ))
}

fn boson_equivalence() -> Outcome {
    let c = Couplings::new(0.7, -1.2, 0.4, 1.5);
    let e1 = checks::boson_error(&lattice(&[4])?, &c)?;
    let e2 = checks::boson_error(&lattice(&[2, 2])?, &c)?;
    Ok((e1.max(e2) <= EXACT_MATRIX, format!("max-norm error {e1:.2e} (N=4), {e2:.2e} (2x2)")))
}

fn nonlocal_variant() -> Outcome {
    let e = checks::nonlocal_error(&lattice(&[3])?, &Couplings::new(0.9, 1.1, 0.7, 0.0))?;
    Ok((e <= SPECTRUM, format!("max-norm error {e:.2e}")))
}

fn block_encoding() -> Outcome {
    let c = Couplings::new(0.9, 1.1, 0.7, 0.0);
    let rep = LcuOracles::from_lattice(&lattice(&[4])?, &c)?.report()?;
    let eta = c.m / 2.0 + c.epsilon + 2.0 * c.lambda_e;
    let gate = rep.gate_error.unwrap_or(f64::INFINITY);
    let ok = rep.n == 2
        && rep.k == 4
        && (rep.eta - eta).abs() <= 1e-12 * eta
        && rep.dense_error <= SPECTRUM
        && gate <= SPECTRUM
        && (rep.prep_norm - 1.0).abs() <= PREP_NORM
        && rep.fill_ratio > 0.5
        && rep.fill_ratio <= 1.0;
    Ok((
        ok,
        format!(
            "n={} K={} eta={} dense {:.2e} gate {:.2e} prep-norm {} fill {}",
            rep.n, rep.k, rep.eta, rep.dense_error, gate, rep.prep_norm, rep.fill_ratio
        ),
    ))
}

fn select_cost() -> Outcome {
    let c = Couplings::new(0.9, 1.1, 0.7, 0.0);
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, sites) in [(3u32, 8usize), (4, 16), (5, 32)] {
        let oracles = LcuOracles::from_lattice(&lattice(&[sites])?, &c)?;
        let count = oracles.select_circuit().count("and") as i64;
        let (lo, hi) = toffoli_bounds(n);
        ok &= oracles.n == n && (lo..=hi).contains(&count);
        parts.push(format!("n={n}: {count} in [{lo}, {hi}]"));
    }
    Ok((ok, parts.join(", ")))
}

/// `e^{itP} = cos t + i sin t P`.
pub fn exp_i_pauli(t: f64, p: &PauliString) -> Result<CMatrix> {
    let pm = dense::pauli_matrix(p)?;
    Ok(dense::identity(pm.nrows()) * dense::ONE.scale(t.cos()) + pm * dense::I.scale(t.sin()))
}

fn gadget_paulis() -> Result<Vec<PauliString>> {
    ["Z", "XX", "XZX"].iter().map(|s| s.parse()).collect()
}

fn gadgets() -> Outcome {
    let mut worst_bare = 0.0f64;
    let mut worst_amp = 0.0f64;
    let mut min_overlap = f64::INFINITY;
    for t in [0.1, 0.7, FRAC_PI_2] {
        for p in gadget_paulis()? {
            let u = exp_i_pauli(t, &p)?;
            for (c, want) in [(lcu_exp_pauli_quarter(t, &p)?, 0.25), (oaa_exp_pauli(t, &p)?, 1.0)] {
                let r = gadget_report(&c, &u, 3)?;
                let dev = (r.success_min - want)
                    .abs()
                    .max((r.success_max - want).abs())
                    .max((r.success_random - want).abs());
                if want < 1.0 {
                    worst_bare = worst_bare.max(dev);
                } else {
                    worst_amp = worst_amp.max(dev);
                }
                min_overlap = min_overlap.min(r.overlap);
            }
        }
    }
    Ok((
        worst_bare <= PROBABILITY && worst_amp <= PROBABILITY && min_overlap >= 1.0 - PROBABILITY,
        format!("success deviation bare {worst_bare:.1e}, amplified {worst_amp:.1e}; min overlap 1-{:.1e}", 1.0 - min_overlap),
    ))
}

fn trotter_convergence() -> Outcome {
    let h = logical_hamiltonian(&lattice(&[3])?, &Couplings::new(1.0, 1.0, 1.0, 0.0))?;
    let first = TrotterReport::sweep(&h, 0.5, 1, &[8, 16, 32])?;
    let second = TrotterReport::sweep(&h, 0.5, 2, &[8, 16, 32])?;
    let ok = first.ratios.iter().all(|r| (0.35..=0.65).contains(r))
        && second.ratios.iter().all(|r| (0.15..=0.35).contains(r));
    Ok((
        ok,
        format!("order 1 ratios {:.3?}, order 2 ratios {:.3?}", first.ratios, second.ratios),
    ))
}

fn transversal_cnot_truth_table() -> Outcome {
    let rep = transversal_cnot_check()?;
    let ok = rep.rows.iter().all(|r| {
        (r.fidelity - 1.0).abs() <= PROBABILITY && (r.min_stabilizer_expectation - 1.0).abs() <= PROBABILITY
    });
    let worst = rep
        .rows
        .iter()
        .map(|r| (r.fidelity - 1.0).abs().max((r.min_stabilizer_expectation - 1.0).abs()))
        .fold(0.0, f64::max);
    Ok((ok && rep.passed, format!("4 basis inputs, worst deviation {worst:.1e}")))
}

fn universal_gates() -> Outcome {
    let code = classical_code(&lattice(&[3])?)?;
    let e = code.encoding_isometry()?;
    let k = code.logical_x.len();

    let hc = logical_gate(&code, LogicalGate::Hadamard, &[0])?;
    let zero = e.column(0).into_owned();
    let plus = (&zero + e.column(1 << (k - 1))) * dense::ONE.scale(FRAC_1_SQRT_2);
    let out = success_block(&hc)? * &zero;
    let h_dev = (out - plus).camax();

    let theta = 0.83;
    let mut rz = logical_gate(&code, LogicalGate::Rz { theta }, &[1])?;
    rz.extend(logical_gate(&code, LogicalGate::Rz { theta: -theta }, &[1])?.gates);
    let id_dev = dense::max_abs_diff(&dense::compress(&success_block(&rz)?, &e), &dense::identity(1 << k))?;
    Ok((
        h_dev <= SPECTRUM && id_dev <= SPECTRUM,
        format!("H|0> vs |+> {h_dev:.1e}; Rz(θ)Rz(−θ) vs I {id_dev:.1e}"),
    ))
}

fn patch_sizes_check() -> Outcome {
    let a = patch_sizes(2, false)?;
    let b = patch_sizes(2, true)?;
    Ok((a == 63 && b == 27, format!("{a} and {b}")))
}

/// Every circuit the library emits for execution, labelled.
pub fn emitted_circuits() -> Result<Vec<(String, Circuit)>> {
    let mut out = Vec::new();
    let h = logical_hamiltonian(&lattice(&[3])?, &Couplings::new(1.0, 1.0, 1.0, 0.0))?;
    for order in [1, 2] {
        let c = trotter_circuit(&h, 0.5, 2, order)?;
        out.push((format!("lowered trotter order {order}"), lower_to_clifford(&c)?));
    }
    for t in [0.1, 0.7, FRAC_PI_2] {
        for p in gadget_paulis()? {
            out.push((format!("lcu e^(i{t} {p})"), lcu_exp_pauli(t, &p)?));
            out.push((format!("lcu/4 e^(i{t} {p})"), lcu_exp_pauli_quarter(t, &p)?));
            out.push((format!("oaa e^(i{t} {p})"), oaa_exp_pauli(t, &p)?));
        }
    }
    let c = Couplings::new(0.9, 1.1, 0.7, 0.4);
    for dims in [&[4][..], &[8], &[2, 2]] {
        let o = LcuOracles::from_lattice(&lattice(dims)?, &c)?;
        out.push((format!("select {dims:?}"), o.select_circuit()));
        out.push((format!("block encoding {dims:?}"), o.block_circuit()));
    }
    let code = classical_code(&lattice(&[3])?)?;
    for (gate, targets) in [
        (LogicalGate::Pauli { letter: Pauli::Y }, vec![0]),
        (LogicalGate::Rz { theta: 0.3 }, vec![1]),
        (LogicalGate::Hadamard, vec![2]),
        (LogicalGate::Cnot, vec![0, 2]),
    ] {
        out.push((format!("logical {gate:?}"), logical_gate(&code, gate, &targets)?));
    }
    let mut unsigned = gauss_law_code(&lattice(&[3])?);
    unsigned.generators = unsigned.generators.iter().map(PauliString::letters_only).collect();
    out.push(("transversal cnot".into(), transversal_cnot(&unsigned)?));
    Ok(out)
}

fn clifford_only() -> Outcome {
    let circuits = emitted_circuits()?;
    let failing: Vec<&str> = circuits
        .iter()
        .filter(|(_, c)| !check_clifford(c).passed)
        .map(|(name, _)| name.as_str())
        .collect();
    Ok((
        failing.is_empty(),
        format!("{} circuits checked, failing {failing:?}", circuits.len()),
    ))
}
