//! PREP/SELECT oracles for the logical Hamiltonian and the Toffoli cost of
//! SELECT under unary iteration.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::circuit::{Circuit, Gate, Register, RegisterRole, Single};
use super::gadgets::success_block;
use crate::dense::{self, CMatrix};
use crate::gauss_code::gauss_law_code;
use crate::hamiltonian::{build_fermionic, jordan_wigner, to_logical, Couplings, TermKind};
use crate::pauli::{PauliString, PauliSum};
use crate::{max_qubits, Error, Lattice, Result};

/// Relative spread tolerated between coefficients of one family.
const UNIFORM_TOL: f64 = 1e-12;

/// `(2^n − n − 1, 1.5·2^n − 4)`.
pub fn toffoli_bounds(n: u32) -> (i64, i64) {
    let p = 1i64 << n;
    (p - i64::from(n) - 1, 3 * p / 2 - 4)
}

/// (term kind, hop direction, rank of the image within its term).
type FamilyKey = (usize, Option<usize>, usize);

/// One operator family `O_{k,·}` with a common weight `η_k`. Each entry is
/// `(slot, O_{k,slot})` with the sign folded into the Pauli phase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LcuFamily {
    pub label: String,
    pub eta: f64,
    pub ops: Vec<(usize, PauliString)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LcuOracles {
    pub n_system: usize,
    /// Number of index values used on `a₁` (`dN` for a lattice).
    pub slots: usize,
    /// Width of `a₁`: smallest `n` with `2^n ≥ slots`.
    pub n: u32,
    /// Width of `a₂`: `⌈log₂ K⌉`.
    pub a2: u32,
    pub families: Vec<LcuFamily>,
    /// `η = Σ_k η_k`.
    pub eta: f64,
    /// Identity coefficient of the Hamiltonian, not carried by any family.
    pub constant: f64,
}

fn ceil_log2(x: usize) -> u32 {
    x.max(1).next_power_of_two().trailing_zeros()
}

impl LcuOracles {
    pub fn new(n_system: usize, slots: usize, families: Vec<LcuFamily>, constant: f64) -> Result<Self> {
        if slots == 0 {
            return Err(Error::Invalid("at least one slot is required".into()));
        }
        for f in &families {
            if f.eta.is_nan() || f.eta < 0.0 {
                return Err(Error::Invalid(format!(
                    "family {} has weight {}; signs belong in the operators",
                    f.label, f.eta
                )));
            }
            let mut seen = vec![false; slots];
            for (slot, op) in &f.ops {
                if *slot >= slots || std::mem::replace(&mut seen[*slot], true) {
                    return Err(Error::Invalid(format!("family {} slot {slot} is invalid or repeated", f.label)));
                }
                if op.n_qubits() != n_system || !op.is_hermitian() {
                    return Err(Error::Invalid(format!("family {} operator {op} is not a Hermitian {n_system}-qubit Pauli", f.label)));
                }
            }
        }
        let families: Vec<LcuFamily> = families.into_iter().filter(|f| f.eta > 0.0).collect();
        if families.is_empty() {
            return Err(Error::Invalid("Hamiltonian has no non-identity terms".into()));
        }
        Ok(LcuOracles {
            n_system,
            slots,
            n: ceil_log2(slots),
            a2: ceil_log2(families.len()),
            eta: families.iter().map(|f| f.eta).sum(),
            families,
            constant,
        })
    }

    /// One family per term, each with a single slot.
    pub fn from_sum(h: &PauliSum) -> Result<Self> {
        let families = h
            .iter()
            .filter(|(_, p)| !p.is_identity())
            .enumerate()
            .map(|(i, (c, p))| LcuFamily {
                label: format!("term{i}"),
                eta: c.abs(),
                ops: vec![(0, if *c < 0.0 { p.clone().negated() } else { p.clone() })],
            })
            .collect();
        LcuOracles::new(h.n_qubits(), 1, families, h.identity_coefficient())
    }

    /// Families of the logical lattice Hamiltonian. Every symbolic term is
    /// rewritten on its own; its non-identity images, ordered by weight and
    /// then text, are ranked, and the family is keyed by kind, hop direction
    /// and rank. The slot is the term's site (mass, plaquette) or link
    /// (hop, electric).
    pub fn from_lattice(lattice: &Lattice, c: &Couplings) -> Result<Self> {
        c.validate()?;
        let code = gauss_law_code(lattice);
        let mut groups: BTreeMap<FamilyKey, Vec<(usize, f64, PauliString)>> = BTreeMap::new();
        let mut constant = 0.0;
        for term in build_fermionic(lattice, c) {
            let image = to_logical(&jordan_wigner(std::slice::from_ref(&term), lattice)?, &code)?;
            let (slot, dir) = match term.kind {
                TermKind::Mass | TermKind::Plaquette => (term.sites[0], None),
                TermKind::Electric => (term.links[0], None),
                TermKind::Hop => (term.links[0], Some(lattice.link_site_dir(term.links[0]).1)),
            };
            constant += image.identity_coefficient();
            let mut ops: Vec<(f64, PauliString)> = image
                .iter()
                .filter(|(coeff, p)| !p.is_identity() && coeff.abs() > 0.0)
                .cloned()
                .collect();
            ops.sort_by_key(|(_, p)| (p.weight(), p.to_string()));
            let kind_ix = TermKind::ALL.iter().position(|k| *k == term.kind).expect("known kind");
            for (rank, (coeff, p)) in ops.into_iter().enumerate() {
                groups.entry((kind_ix, dir, rank)).or_default().push((slot, coeff, p));
            }
        }
        let mut families = Vec::new();
        for ((kind_ix, dir, rank), entries) in groups {
            let eta = entries[0].1.abs();
            if entries.iter().any(|(_, c, _)| (c.abs() - eta).abs() > UNIFORM_TOL * eta.max(1.0)) {
                return Err(Error::Invalid(format!(
                    "{} rank {rank} coefficients are not uniform",
                    TermKind::ALL[kind_ix]
                )));
            }
            let label = match dir {
                Some(d) => format!("{}[dir {d}, rank {rank}]", TermKind::ALL[kind_ix]),
                None => format!("{}[rank {rank}]", TermKind::ALL[kind_ix]),
            };
            families.push(LcuFamily {
                label,
                eta,
                ops: entries
                    .into_iter()
                    .map(|(slot, c, p)| (slot, if c < 0.0 { p.negated() } else { p }))
                    .collect(),
            });
        }
        LcuOracles::new(lattice.n_links(), lattice.n_links(), families, constant)
    }

    pub fn k(&self) -> usize {
        self.families.len()
    }

    /// Amplitudes of PREP on `a₂`, padded to `2^{a₂}`.
    pub fn prep_amplitudes(&self) -> Vec<f64> {
        let mut a: Vec<f64> = self.families.iter().map(|f| (f.eta / self.eta).sqrt()).collect();
        a.resize(1 << self.a2, 0.0);
        a
    }

    pub fn prep_norm(&self) -> f64 {
        self.prep_amplitudes().iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// `Σ_k η_k (2^n − m_k) − c₀`: the identity added to `H` by the slots
    /// where a family acts trivially.
    pub fn identity_shift(&self) -> f64 {
        let full = (1usize << self.n) as f64;
        self.families
            .iter()
            .map(|f| f.eta * (full - f.ops.len() as f64))
            .sum::<f64>()
            - self.constant
    }

    /// `Σ_k η_k Σ_l O_{k,l} + c₀`.
    pub fn hamiltonian(&self) -> Result<PauliSum> {
        let mut h = PauliSum::new(self.n_system);
        for f in &self.families {
            for (_, op) in &f.ops {
                let sign = if op.phase_exp() == 2 { -1.0 } else { 1.0 };
                h.add_term(sign * f.eta, op.letters_only())?;
            }
        }
        if self.constant != 0.0 {
            h.add_term(self.constant, PauliString::identity(self.n_system))?;
        }
        Ok(h)
    }

    /// `(H + shift·1) / (η 2^n)`.
    pub fn target_block(&self) -> Result<CMatrix> {
        let h = dense::to_matrix(&self.hamiltonian()?)?;
        let dim = h.nrows();
        let scale = self.eta * (1usize << self.n) as f64;
        Ok((h + dense::identity(dim) * dense::ONE.scale(self.identity_shift())) / dense::ONE.scale(scale))
    }

    /// `⟨0|PREP† SEL PREP|0⟩` summed directly from the oracle definitions.
    pub fn dense_block(&self) -> Result<CMatrix> {
        let dim = 1usize << self.n_system;
        let id = dense::identity(dim);
        let amps = self.prep_amplitudes();
        let uniform = 1.0 / (1usize << self.n) as f64;
        let mut block = CMatrix::zeros(dim, dim);
        for (k, f) in self.families.iter().enumerate() {
            let w = amps[k] * amps[k] * uniform;
            let mut by_slot: Vec<Option<&PauliString>> = vec![None; 1 << self.n];
            f.ops.iter().for_each(|(l, op)| by_slot[*l] = Some(op));
            for op in by_slot {
                let m = match op {
                    Some(p) => dense::pauli_matrix(p)?,
                    None => id.clone(),
                };
                block += m * dense::ONE.scale(w);
            }
        }
        Ok(block)
    }

    fn layout(&self) -> Layout {
        let ns = self.n_system;
        let (a2, n) = (self.a2 as usize, self.n as usize);
        let ctl = ns;
        let a2q: Vec<usize> = (ctl + 1..ctl + 1 + a2).collect();
        let a1q: Vec<usize> = (ctl + 1 + a2..ctl + 1 + a2 + n).collect();
        let tree: Vec<usize> = (ctl + 1 + a2 + n..ctl + 1 + a2 + 2 * n).collect();
        let flag = ctl + 1 + a2 + 2 * n;
        Layout {
            ctl,
            a2: a2q,
            a1: a1q,
            tree,
            flag,
            total: flag + 1,
        }
    }

    fn registers(&self, l: &Layout) -> Vec<Register> {
        let reg = |name: &str, start: usize, len: usize, role| Register {
            name: name.into(),
            start,
            len,
            role,
        };
        vec![
            reg("system", 0, self.n_system, RegisterRole::System),
            reg("ctl", l.ctl, 1, RegisterRole::Ancilla),
            reg("a2", l.ctl + 1, l.a2.len(), RegisterRole::Ancilla),
            reg("a1", l.ctl + 1 + l.a2.len(), l.a1.len(), RegisterRole::Ancilla),
            reg("tree", l.ctl + 1 + l.a2.len() + l.a1.len(), l.tree.len(), RegisterRole::Ancilla),
            reg("flag", l.flag, 1, RegisterRole::Ancilla),
        ]
    }

    /// SELECT controlled on `ctl`, by unary iteration over `a₁`. Each tree
    /// node costs one `And`; leaves multiplex over `a₂` with `Mcx` into
    /// `flag` and apply the controlled Pauli from `flag`.
    pub fn select_circuit(&self) -> Circuit {
        let l = self.layout();
        let mut c = Circuit::new(self.registers(&l));
        let n_total = l.total;
        let mut by_slot: Vec<Vec<(usize, PauliString)>> = vec![Vec::new(); 1 << self.n];
        for (k, f) in self.families.iter().enumerate() {
            for (slot, op) in &f.ops {
                by_slot[*slot].push((k, op.embed(n_total, 0)));
            }
        }
        let mut leaf = |c: &mut Circuit, ctrl: usize, slot: usize| {
            for (k, op) in &by_slot[slot] {
                let zeros: Vec<usize> = l
                    .a2
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (k >> (l.a2.len() - 1 - i)) & 1 == 0)
                    .map(|(_, &q)| q)
                    .collect();
                let flip = |c: &mut Circuit| {
                    zeros.iter().for_each(|&q| c.push(Gate::Single { qubit: q, op: Single::X }));
                };
                let mut controls = vec![ctrl];
                controls.extend(&l.a2);
                let mcx = Gate::Mcx {
                    controls,
                    target: l.flag,
                };
                flip(c);
                c.push(mcx.clone());
                c.push(Gate::ControlledPauli {
                    control: l.flag,
                    pauli: op.clone(),
                });
                c.push(mcx);
                flip(c);
            }
        };
        unary(&mut c, &l, l.ctl, 0, 0, &mut leaf);
        c
    }

    /// `X(ctl) · PREP · SEL · PREP† · X(ctl)`; its all-ancilla-zero block is
    /// the block encoding.
    pub fn block_circuit(&self) -> Circuit {
        let l = self.layout();
        let select = self.select_circuit();
        let mut c = Circuit::new(select.registers.clone());
        let prep = |c: &mut Circuit| {
            if !l.a2.is_empty() {
                c.push(Gate::Prepare {
                    qubits: l.a2.clone(),
                    amplitudes: self.prep_amplitudes(),
                });
            }
            l.a1.iter().for_each(|&q| c.push(Gate::Single { qubit: q, op: Single::H }));
        };
        c.push(Gate::Single { qubit: l.ctl, op: Single::X });
        prep(&mut c);
        c.extend(select.gates);
        prep(&mut c);
        c.push(Gate::Single { qubit: l.ctl, op: Single::X });
        c.success = (self.n_system..l.total).map(|q| (q, false)).collect();
        c
    }

    pub fn report(&self) -> Result<BlockEncodingReport> {
        let target = self.target_block()?;
        let dense_error = dense::max_abs_diff(&self.dense_block()?, &target)?;
        let select = self.select_circuit();
        let block = self.block_circuit();
        let gate_error = if block.n_qubits <= max_qubits() {
            Some(dense::max_abs_diff(&success_block(&block)?, &target)?)
        } else {
            None
        };
        let (lower, upper) = toffoli_bounds(self.n);
        let toffoli_count = select.count("and");
        Ok(BlockEncodingReport {
            n: self.n,
            k: self.k(),
            a2: self.a2,
            slots: self.slots,
            eta: self.eta,
            etas: self.families.iter().map(|f| (f.label.clone(), f.eta)).collect(),
            fill_ratio: self.slots as f64 / (1usize << self.n) as f64,
            prep_norm: self.prep_norm(),
            identity_shift: self.identity_shift(),
            dense_error,
            gate_error,
            toffoli_count,
            multiplex_mcx: select.count("mcx"),
            toffoli_lower: lower,
            toffoli_upper: upper,
            circuit_qubits: block.n_qubits,
        })
    }
}

struct Layout {
    ctl: usize,
    a2: Vec<usize>,
    a1: Vec<usize>,
    tree: Vec<usize>,
    flag: usize,
    total: usize,
}

fn unary<F: FnMut(&mut Circuit, usize, usize)>(
    c: &mut Circuit,
    l: &Layout,
    ctrl: usize,
    level: usize,
    prefix: usize,
    leaf: &mut F,
) {
    if level == l.a1.len() {
        leaf(c, ctrl, prefix);
        return;
    }
    let (bit, anc) = (l.a1[level], l.tree[level]);
    let x = Gate::Single { qubit: bit, op: Single::X };
    c.push(x.clone());
    c.push(Gate::And {
        controls: [ctrl, bit],
        target: anc,
    });
    c.push(x);
    unary(c, l, anc, level + 1, prefix << 1, leaf);
    c.push(Gate::Cnot {
        control: ctrl,
        target: anc,
    });
    unary(c, l, anc, level + 1, (prefix << 1) | 1, leaf);
    c.push(Gate::AndUncompute {
        controls: [ctrl, bit],
        target: anc,
    });
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockEncodingReport {
    pub n: u32,
    pub k: usize,
    pub a2: u32,
    pub slots: usize,
    pub eta: f64,
    pub etas: Vec<(String, f64)>,
    /// `dN / 2^n`.
    pub fill_ratio: f64,
    pub prep_norm: f64,
    pub identity_shift: f64,
    /// Max-norm error of the directly summed block.
    pub dense_error: f64,
    /// Max-norm error of the simulated gate-level block, when it fits.
    pub gate_error: Option<f64>,
    pub toffoli_count: usize,
    /// Multi-controlled X gates spent on `a₂` multiplexing (not counted as
    /// Toffolis).
    pub multiplex_mcx: usize,
    pub toffoli_lower: i64,
    pub toffoli_upper: i64,
    pub circuit_qubits: usize,
}
