//! Exact dense statevector simulation.
//!
//! Qubit 0 is the most significant bit of a basis index, matching the
//! Pauli text form. Every public operation leaves the state normalized;
//! projections renormalize and report the Born probability instead.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dense::{self, CMatrix, ONE, ZERO};
use crate::limits::check_cap;
use crate::par;
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::tolerances::DUMP_THRESHOLD;
use crate::{max_qubits, Error, Result};

/// Single-qubit gate matrix `[[a, b], [c, d]]` in the `|0⟩, |1⟩` basis.
pub type Gate1 = [[Complex64; 2]; 2];

pub fn hadamard() -> Gate1 {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn pauli_gate(p: Pauli) -> Gate1 {
    let i = dense::I;
    match p {
        Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
        Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
        Pauli::Y => [[ZERO, -i], [i, ZERO]],
        Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

/// Outcome of a projective Pauli measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measurement {
    /// `+1` or `−1`.
    pub outcome: i8,
    pub probability: f64,
}

/// One dumped amplitude: `(basis index, re, im)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeRecord(pub usize, pub f64, pub f64);

impl Statevector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Statevector::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_cap(n, max_qubits())?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::OutOfRange {
                what: "basis index",
                index,
                limit: dim,
            });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Statevector { n, amps })
    }

    /// Normalizes and wraps an amplitude vector of length `2^n`.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() {
            return Err(Error::Invalid(format!("{dim} amplitudes is not a power of two")));
        }
        let n = dim.trailing_zeros() as usize;
        check_cap(n, max_qubits())?;
        let mut s = Statevector { n, amps };
        let norm = s.norm();
        if norm == 0.0 {
            return Err(Error::Invalid("zero vector".into()));
        }
        s.scale(1.0 / norm);
        Ok(s)
    }

    /// Normalized state with Gaussian amplitudes drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_cap(n, max_qubits())?;
        let mut gauss = || {
            let (u, v): (f64, f64) = (rng.gen_range(f64::EPSILON..1.0), rng.gen());
            (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
        };
        let amps = (0..1usize << n).map(|_| Complex64::new(gauss(), gauss())).collect();
        Statevector::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn to_vector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.amps)
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn scale(&mut self, f: f64) {
        self.amps.iter_mut().for_each(|a| *a *= f);
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Statevector) -> Result<Complex64> {
        self.check_size(other.n)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Statevector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: n,
            });
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::OutOfRange {
                what: "qubit",
                index: q,
                limit: self.n,
            });
        }
        Ok(())
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    /// Returns `P|ψ⟩` as a raw amplitude vector.
    fn pauli_image(&self, p: &PauliString) -> Vec<Complex64> {
        let act = p.action();
        let src = &self.amps;
        let mut out = vec![ZERO; src.len()];
        par::fill(par::for_len(src.len()), &mut out, |c| {
            let b = c ^ act.x_mask;
            act.factor(b) * src[b]
        });
        out
    }

    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        self.check_size(p.n_qubits())?;
        self.amps = self.pauli_image(p);
        Ok(())
    }

    /// `e^{itP}|ψ⟩ = (cos t + i sin t P)|ψ⟩`.
    pub fn apply_exp_pauli(&mut self, t: f64, p: &PauliString) -> Result<()> {
        self.check_size(p.n_qubits())?;
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.to_string()));
        }
        let image = self.pauli_image(p);
        let (c, s) = (Complex64::new(t.cos(), 0.0), Complex64::new(0.0, t.sin()));
        self.amps
            .iter_mut()
            .zip(image)
            .for_each(|(a, pa)| *a = c * *a + s * pa);
        Ok(())
    }

    pub fn apply_gate(&mut self, q: usize, g: &Gate1) -> Result<()> {
        self.apply_controlled_gate(&[], q, g)
    }

    /// Applies `g` on `target` in the branch where every control is `|1⟩`.
    pub fn apply_controlled_gate(&mut self, controls: &[usize], target: usize, g: &Gate1) -> Result<()> {
        self.check_qubit(target)?;
        let mut cmask = 0;
        for &c in controls {
            self.check_qubit(c)?;
            if c == target {
                return Err(Error::Invalid(format!("qubit {c} is both control and target")));
            }
            cmask |= self.bit(c);
        }
        let tbit = self.bit(target);
        for b0 in 0..self.dim() {
            if b0 & tbit != 0 || b0 & cmask != cmask {
                continue;
            }
            let b1 = b0 | tbit;
            let (a0, a1) = (self.amps[b0], self.amps[b1]);
            self.amps[b0] = g[0][0] * a0 + g[0][1] * a1;
            self.amps[b1] = g[1][0] * a0 + g[1][1] * a1;
        }
        Ok(())
    }

    pub fn h(&mut self, q: usize) -> Result<()> {
        self.apply_gate(q, &hadamard())
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.apply_controlled_gate(&[control], target, &pauli_gate(Pauli::X))
    }

    /// Applies `P` in the branch where `control` is `|1⟩`.
    pub fn apply_controlled_pauli(&mut self, control: usize, p: &PauliString) -> Result<()> {
        self.check_size(p.n_qubits())?;
        self.check_qubit(control)?;
        if p.x_bit(control) || p.z_bit(control) {
            return Err(Error::Invalid(format!("Pauli {p} acts on its control qubit {control}")));
        }
        let cbit = self.bit(control);
        let image = self.pauli_image(p);
        for (b, a) in self.amps.iter_mut().enumerate() {
            if b & cbit != 0 {
                *a = image[b];
            }
        }
        Ok(())
    }

    /// Multiplies by `−1` every basis state whose listed qubits are all `|0⟩`.
    pub fn reflect_all_zero(&mut self, qubits: &[usize]) -> Result<()> {
        let mut mask = 0;
        for &q in qubits {
            self.check_qubit(q)?;
            mask |= self.bit(q);
        }
        for (b, a) in self.amps.iter_mut().enumerate() {
            if b & mask == 0 {
                *a = -*a;
            }
        }
        Ok(())
    }

    pub fn apply_phase(&mut self, phase: Complex64) {
        self.amps.iter_mut().for_each(|a| *a *= phase);
    }

    /// Applies a dense `2^n × 2^n` matrix.
    pub fn apply_matrix(&mut self, m: &CMatrix) -> Result<()> {
        if m.nrows() != self.dim() || m.ncols() != self.dim() {
            return Err(Error::Invalid(format!(
                "matrix is {}x{}, state has dimension {}",
                m.nrows(),
                m.ncols(),
                self.dim()
            )));
        }
        let v = m * self.to_vector();
        self.amps = v.iter().cloned().collect();
        Ok(())
    }

    /// Real expectation `⟨ψ|P|ψ⟩` of a Hermitian Pauli string.
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        self.check_size(p.n_qubits())?;
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.to_string()));
        }
        let image = self.pauli_image(p);
        Ok(self
            .amps
            .iter()
            .zip(&image)
            .map(|(a, b)| (a.conj() * b).re)
            .sum())
    }

    pub fn expectation_sum(&self, h: &PauliSum) -> Result<f64> {
        h.iter()
            .map(|(c, p)| Ok(c * self.expectation(p)?))
            .sum()
    }

    /// Projects onto the `outcome` (±1) eigenspace of `p` and renormalizes.
    /// Returns the Born probability; the state is untouched when it is zero.
    pub fn project_pauli(&mut self, p: &PauliString, outcome: i8) -> Result<f64> {
        self.check_size(p.n_qubits())?;
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.to_string()));
        }
        let image = self.pauli_image(p);
        let s = f64::from(outcome.signum());
        let projected: Vec<Complex64> = self
            .amps
            .iter()
            .zip(&image)
            .map(|(a, pa)| (a + pa * s) * 0.5)
            .collect();
        let prob: f64 = projected.iter().map(|a| a.norm_sqr()).sum();
        if prob > 0.0 {
            self.amps = projected;
            self.scale(1.0 / prob.sqrt());
        }
        Ok(prob)
    }

    /// Born-rule measurement of a Hermitian Pauli string.
    pub fn measure_pauli<R: Rng + ?Sized>(&mut self, p: &PauliString, rng: &mut R) -> Result<Measurement> {
        let plus = ((1.0 + self.expectation(p)?) / 2.0).clamp(0.0, 1.0);
        let outcome = if rng.gen::<f64>() < plus { 1 } else { -1 };
        let probability = self.project_pauli(p, outcome)?;
        Ok(Measurement {
            outcome,
            probability,
        })
    }

    /// Probability that each listed qubit is found in the paired bit value.
    pub fn probability_of(&self, fixed: &[(usize, bool)]) -> Result<f64> {
        let (mask, want) = self.fixed_masks(fixed)?;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(b, _)| b & mask == want)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    fn fixed_masks(&self, fixed: &[(usize, bool)]) -> Result<(usize, usize)> {
        let (mut mask, mut want) = (0, 0);
        for &(q, v) in fixed {
            self.check_qubit(q)?;
            mask |= self.bit(q);
            if v {
                want |= self.bit(q);
            }
        }
        Ok((mask, want))
    }

    /// Unnormalized amplitudes of the remaining qubits (in order) in the
    /// branch where the listed qubits take the paired values.
    pub fn branch(&self, fixed: &[(usize, bool)]) -> Result<Vec<Complex64>> {
        let (mask, want) = self.fixed_masks(fixed)?;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(b, _)| b & mask == want)
            .map(|(_, a)| *a)
            .collect())
    }

    pub fn inject_error(&mut self, qubit: usize, pauli: Pauli) -> Result<()> {
        self.check_qubit(qubit)?;
        if pauli == Pauli::I {
            return Err(Error::Invalid("error letter must be X, Y or Z".into()));
        }
        self.apply_pauli(&PauliString::single(self.n, qubit, pauli))
    }

    /// Amplitudes above the dump threshold as `(index, re, im)`.
    pub fn dump(&self) -> Vec<AmplitudeRecord> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > DUMP_THRESHOLD)
            .map(|(i, a)| AmplitudeRecord(i, a.re, a.im))
            .collect()
    }

    /// Rotates the global phase so the first amplitude above the dump
    /// threshold is real and positive.
    pub fn canonical_phase(&mut self) {
        if let Some(a) = self.amps.iter().find(|a| a.norm() > DUMP_THRESHOLD).copied() {
            self.apply_phase(a.conj() / a.norm());
        }
    }
}

/// `Π = ∏_g (1 + g)/2` for commuting Hermitian generators.
pub fn codespace_projector(n: usize, generators: &[PauliString]) -> Result<CMatrix> {
    check_cap(n, max_qubits())?;
    let dim = 1usize << n;
    let mut pi = dense::identity(dim);
    for g in generators {
        if g.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: g.n_qubits(),
            });
        }
        let half = (dense::identity(dim) + dense::pauli_matrix(g)?) * Complex64::new(0.5, 0.0);
        pi = half * pi;
    }
    Ok(pi)
}

/// Columns `E|x⟩ = X̄^x |0̄⟩` of an encoding isometry, where `|0̄⟩` is the
/// joint +1 eigenstate of every generator and every `Z̄`. Logical qubit 0 is
/// the most significant bit of `x`. The reference state is found by
/// projecting a seeded random vector, so the isometry is deterministic.
pub fn encoding_isometry(
    n: usize,
    generators: &[PauliString],
    logical_x: &[PauliString],
    logical_z: &[PauliString],
) -> Result<CMatrix> {
    check_cap(n, max_qubits())?;
    if logical_x.len() != logical_z.len() {
        return Err(Error::Invalid("logical X and Z counts differ".into()));
    }
    let k = logical_x.len();
    let dim = 1usize << n;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a55_c0de);
    let mut zero = None;
    for _ in 0..8 {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let mut s = Statevector::from_amplitudes(amps)?;
        let mut weight = 1.0;
        for g in generators.iter().chain(logical_z) {
            weight *= s.project_pauli(g, 1)?;
        }
        if weight > 1e-12 {
            s.canonical_phase();
            zero = Some(s);
            break;
        }
    }
    let zero = zero.ok_or_else(|| Error::Invalid("stabilizers and logical Z have no common +1 eigenstate".into()))?;
    let mut e = CMatrix::zeros(dim, 1 << k);
    for x in 0..(1usize << k) {
        let mut s = zero.clone();
        for (i, lx) in logical_x.iter().enumerate() {
            if (x >> (k - 1 - i)) & 1 == 1 {
                s.apply_pauli(lx)?;
            }
        }
        e.set_column(x, &s.to_vector());
    }
    Ok(e)
}

/// `e^{−iHt}` as a dense unitary.
pub fn exact_evolve(h: &PauliSum, t: f64) -> Result<CMatrix> {
    Ok(dense::evolution_operator(&dense::to_matrix(h)?, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn x_flips_and_z_phases() {
        let mut s = Statevector::zero(1).unwrap();
        s.apply_pauli(&p("+X")).unwrap();
        assert_eq!(s.amplitude(1), ONE);

        let mut plus = Statevector::zero(1).unwrap();
        plus.h(0).unwrap();
        plus.apply_pauli(&p("+Z")).unwrap();
        let mut minus = Statevector::basis(1, 1).unwrap();
        minus.h(0).unwrap();
        assert_abs_diff_eq!(plus.fidelity(&minus).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn pauli_action_matches_dense_matrix() {
        let op = p("-iXYZ");
        let mut s = Statevector::from_amplitudes(
            (0..8).map(|i| Complex64::new(i as f64, 1.0 - i as f64)).collect(),
        )
        .unwrap();
        let expected = dense::pauli_matrix(&op).unwrap() * s.to_vector();
        s.apply_pauli(&op).unwrap();
        for (a, b) in s.amplitudes().iter().zip(expected.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn exp_pauli() {
        let mut s = Statevector::zero(1).unwrap();
        s.apply_exp_pauli(0.3, &p("+Z")).unwrap();
        assert!((s.amplitude(0) - Complex64::from_polar(1.0, 0.3)).norm() < 1e-15);

        let mut r = Statevector::from_amplitudes(vec![ONE, dense::I, ZERO, ONE]).unwrap();
        let orig = r.clone();
        r.apply_exp_pauli(std::f64::consts::FRAC_PI_2, &p("+XY")).unwrap();
        r.apply_exp_pauli(-std::f64::consts::FRAC_PI_2, &p("+XY")).unwrap();
        assert_abs_diff_eq!(r.fidelity(&orig).unwrap(), 1.0, epsilon = 1e-14);
        assert!(r.apply_exp_pauli(0.1, &p("+iXY")).is_err());
    }

    #[test]
    fn measurement() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut s = Statevector::zero(1).unwrap();
        let m = s.measure_pauli(&p("+Z"), &mut rng).unwrap();
        assert_eq!(m.outcome, 1);
        assert_abs_diff_eq!(m.probability, 1.0, epsilon = 1e-15);

        let mut s = Statevector::zero(1).unwrap();
        let m = s.measure_pauli(&p("+X"), &mut rng).unwrap();
        assert_abs_diff_eq!(m.probability, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.expectation(&p("+X")).unwrap(), f64::from(m.outcome), epsilon = 1e-12);
    }

    #[test]
    fn controlled_operations() {
        let mut s = Statevector::zero(3).unwrap();
        s.h(0).unwrap();
        s.apply_controlled_pauli(0, &p("+IXX")).unwrap();
        assert_abs_diff_eq!(s.probability_of(&[(0, true), (1, true), (2, true)]).unwrap(), 0.5, epsilon = 1e-14);
        assert!(s.apply_controlled_pauli(0, &p("+ZXX")).is_err());
        s.reflect_all_zero(&[0, 1]).unwrap();
        assert!(s.amplitude(0).re < 0.0);
        let b = s.branch(&[(0, true)]).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b[3].norm() > 0.7);
    }

    #[test]
    fn projector_of_repetition_code() {
        let gens = [p("+ZZI"), p("+IZZ")];
        let pi = codespace_projector(3, &gens).unwrap();
        assert!(dense::max_abs_diff(&(&pi * &pi), &pi).unwrap() < 1e-14);
        assert_abs_diff_eq!(pi.trace().re, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn isometry_columns() {
        let gens = [p("+ZZI"), p("+IZZ")];
        let e = encoding_isometry(3, &gens, &[p("+XXX")], &[p("+ZII")]).unwrap();
        assert_abs_diff_eq!(e[(0, 0)].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[(7, 1)].re, 1.0, epsilon = 1e-12);
        assert!(encoding_isometry(1, &[p("+Z")], &[], &[p("-Z")]).is_err());
    }

    #[test]
    fn dump_skips_zeros() {
        let mut s = Statevector::zero(2).unwrap();
        s.h(1).unwrap();
        let d = s.dump();
        assert_eq!(d.len(), 2);
        assert_eq!(d[1].0, 1);
    }

    #[test]
    fn errors() {
        assert!(Statevector::zero(64).is_err());
        let mut s = Statevector::zero(2).unwrap();
        assert!(s.inject_error(2, Pauli::X).is_err());
        assert!(s.inject_error(0, Pauli::I).is_err());
        assert!(s.apply_pauli(&p("+X")).is_err());
    }
}
