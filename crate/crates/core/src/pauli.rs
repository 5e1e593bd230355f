//! Symplectic n-qubit Pauli operators.
//!
//! A [`PauliString`] stores one X bit and one Z bit per qubit, packed into
//! 64-bit words, plus a phase exponent. The operator it denotes is
//! `i^phase · σ_0 ⊗ σ_1 ⊗ … ⊗ σ_{n-1}` where each `σ_q` is the Pauli letter
//! selected by the bit pair `(x_q, z_q)`: `(0,0) = I`, `(1,0) = X`,
//! `(1,1) = Y`, `(0,1) = Z`. Qubit 0 is the leftmost character of the text
//! form and the most significant bit of a basis-state index.
//!
//! With this convention the single-qubit products are the usual ones,
//! `X·Y = iZ`, `Y·Z = iX`, `Z·X = iY`, and in particular `X·Z = −iY`.
//! A string is Hermitian exactly when its phase exponent is even.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// n-qubit Pauli operator with exact phase tracking.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString {
            n,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    /// Builds a string from one letter per qubit, phase exponent 0.
    pub fn from_paulis(letters: &[Pauli]) -> Self {
        let mut p = PauliString::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set(q, l);
        }
        p
    }

    pub fn single(n: usize, qubit: usize, letter: Pauli) -> Self {
        let mut p = PauliString::identity(n);
        p.set(qubit, letter);
        p
    }

    /// Product of `X` on the listed qubits. Repeated qubits cancel.
    pub fn x_on(n: usize, qubits: &[usize]) -> Self {
        let mut p = PauliString::identity(n);
        for &q in qubits {
            p.x[q / WORD] ^= 1 << (q % WORD);
        }
        p
    }

    /// Product of `Z` on the listed qubits. Repeated qubits cancel.
    pub fn z_on(n: usize, qubits: &[usize]) -> Self {
        let mut p = PauliString::identity(n);
        for &q in qubits {
            p.z[q / WORD] ^= 1 << (q % WORD);
        }
        p
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase = phase_exp % 4;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) % 4;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn x_bit(&self, q: usize) -> bool {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        (self.x[q / WORD] >> (q % WORD)) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        (self.z[q / WORD] >> (q % WORD)) & 1 == 1
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    /// Overwrites the letter on qubit `q`; the phase exponent is untouched.
    pub fn set(&mut self, q: usize, letter: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (bx, bz) = letter.bits();
        let (w, b) = (q / WORD, 1u64 << (q % WORD));
        if bx {
            self.x[w] |= b;
        } else {
            self.x[w] &= !b;
        }
        if bz {
            self.z[w] |= b;
        } else {
            self.z[w] &= !b;
        }
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| self.x_bit(q) || self.z_bit(q))
            .collect()
    }

    /// True when every letter is `I` (any phase).
    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    pub fn is_z_type(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    pub fn is_x_type(&self) -> bool {
        self.z.iter().all(|&w| w == 0)
    }

    /// Number of `Y` letters.
    pub fn y_count(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x & z).count_ones() as usize)
            .sum()
    }

    /// Same letters with phase exponent 0.
    pub fn letters_only(&self) -> PauliString {
        let mut p = self.clone();
        p.phase = 0;
        p
    }

    pub fn adjoint(&self) -> PauliString {
        let mut p = self.clone();
        p.phase = (4 - p.phase) % 4;
        p
    }

    fn check_same_size(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn product_unchecked(&self, other: &PauliString) -> PauliString {
        let mut phase = i64::from(self.phase) + i64::from(other.phase);
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let (ax, ay, az) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (bx, by, bz) = (x2 & !z2, x2 & z2, !x2 & z2);
            let plus = (ax & by) | (ay & bz) | (az & bx);
            let minus = (ay & bx) | (az & by) | (ax & bz);
            phase += i64::from(plus.count_ones()) - i64::from(minus.count_ones());
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        PauliString {
            n: self.n,
            x,
            z,
            phase: phase.rem_euclid(4) as u8,
        }
    }

    /// Group product `self · other`.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_same_size(other)?;
        Ok(self.product_unchecked(other))
    }

    /// Symplectic inner product: true when the operators anticommute.
    fn anticommutes_unchecked(&self, other: &PauliString) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones() & 1;
        }
        parity == 1
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_same_size(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    /// Panicking form of [`PauliString::commutes`] for callers that already
    /// guarantee equal sizes.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        self.commutes(other).expect("Pauli size mismatch")
    }

    /// `g · self · g⁻¹`.
    pub fn conjugated_by(&self, g: &PauliString) -> Result<PauliString> {
        Ok(if self.commutes(g)? {
            self.clone()
        } else {
            self.clone().negated()
        })
    }

    /// Tensor product `self ⊗ other`; `self` occupies the low qubit indices.
    pub fn tensor(&self, other: &PauliString) -> PauliString {
        let mut p = PauliString::identity(self.n + other.n);
        for q in 0..self.n {
            p.set(q, self.get(q));
        }
        for q in 0..other.n {
            p.set(self.n + q, other.get(q));
        }
        p.phase = (self.phase + other.phase) % 4;
        p
    }

    /// Moves every qubit `q` to `map(q)` inside an `n_new`-qubit register.
    pub fn remap(&self, n_new: usize, map: impl Fn(usize) -> usize) -> PauliString {
        let mut p = PauliString::identity(n_new);
        for q in self.support() {
            p.set(map(q), self.get(q));
        }
        p.phase = self.phase;
        p
    }

    /// Embeds into a larger register starting at `offset`.
    pub fn embed(&self, n_new: usize, offset: usize) -> PauliString {
        self.remap(n_new, |q| q + offset)
    }

    /// Restricts to the listed qubits (in that order). Phase is kept.
    pub fn restrict(&self, qubits: &[usize]) -> PauliString {
        let mut p = PauliString::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            p.set(i, self.get(q));
        }
        p.phase = self.phase;
        p
    }

    /// Key identifying the letters, ignoring phase.
    pub fn key(&self) -> (Vec<u64>, Vec<u64>) {
        (self.x.clone(), self.z.clone())
    }

    /// Basis-index masks for dense action (qubit 0 is the most significant
    /// bit). Only valid for up to 63 qubits.
    pub(crate) fn basis_masks(&self) -> (usize, usize) {
        assert!(self.n < 64, "basis masks need fewer than 64 qubits");
        let mut xm = 0usize;
        let mut zm = 0usize;
        for q in self.support() {
            let bit = 1usize << (self.n - 1 - q);
            if self.x_bit(q) {
                xm |= bit;
            }
            if self.z_bit(q) {
                zm |= bit;
            }
        }
        (xm, zm)
    }

    /// Matrix element data: `P|b⟩ = factor(b) |b ⊕ x_mask⟩`, with
    /// `factor(b) = i^(phase + #Y) · (−1)^popcount(b & z_mask)`.
    pub(crate) fn action(&self) -> PauliAction {
        let (x_mask, z_mask) = self.basis_masks();
        PauliAction {
            x_mask,
            z_mask,
            base: i_pow(u32::from(self.phase) + self.y_count() as u32),
        }
    }
}

/// Precomputed dense action of a Pauli string on basis states.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PauliAction {
    pub x_mask: usize,
    pub z_mask: usize,
    pub base: Complex64,
}

impl PauliAction {
    #[inline]
    pub fn factor(&self, b: usize) -> Complex64 {
        if (b & self.z_mask).count_ones() % 2 == 1 {
            -self.base
        } else {
            self.base
        }
    }
}

pub fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Free-function form of [`PauliString::multiply`].
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    a.multiply(b)
}

/// Free-function form of [`PauliString::commutes`].
pub fn commutes(a: &PauliString, b: &PauliString) -> Result<bool> {
    a.commutes(b)
}

/// # Panics
///
/// Panics when the operand sizes differ; use [`PauliString::multiply`] for a
/// fallible product.
impl Mul for &PauliString {
    type Output = PauliString;

    fn mul(self, rhs: &PauliString) -> PauliString {
        self.multiply(rhs).expect("Pauli size mismatch")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(sign)?;
        for q in 0..self.n {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string {s:?}")));
        }
        let letters = body
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!(
                    "illegal character {other:?} at position {i} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::from_paulis(&letters).with_phase(phase))
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serialized form of one [`PauliSum`] term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliRecord {
    pub coeff: f64,
    pub pauli: String,
}

/// Coefficients below this magnitude are dropped when terms merge.
pub const DROP_TOLERANCE: f64 = 1e-15;

/// Real-weighted sum of Hermitian Pauli strings.
///
/// Stored strings always carry phase exponent 0; a `−P` input is folded into
/// the coefficient. Terms with identical letters are merged on insertion.
#[derive(Clone, Debug, Default)]
pub struct PauliSum {
    n: usize,
    terms: Vec<(f64, PauliString)>,
    index: HashMap<(Vec<u64>, Vec<u64>), usize>,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        PauliSum {
            n,
            terms: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, PauliString)>,
    {
        let mut sum = PauliSum::new(n);
        for (c, p) in terms {
            sum.add_term(c, p)?;
        }
        Ok(sum)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = &(f64, PauliString)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, coeff: f64, op: PauliString) -> Result<()> {
        if op.n_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: op.n_qubits(),
            });
        }
        if !op.is_hermitian() {
            return Err(Error::NonHermitian(op.to_string()));
        }
        let c = if op.phase_exp() == 2 { -coeff } else { coeff };
        let op = op.letters_only();
        let key = op.key();
        match self.index.get(&key) {
            Some(&i) => {
                self.terms[i].0 += c;
                if self.terms[i].0.abs() < DROP_TOLERANCE {
                    self.terms.remove(i);
                    self.reindex();
                }
            }
            None => {
                if c.abs() >= DROP_TOLERANCE {
                    self.index.insert(key, self.terms.len());
                    self.terms.push((c, op));
                }
            }
        }
        Ok(())
    }

    fn reindex(&mut self) {
        self.index = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, (_, p))| (p.key(), i))
            .collect();
    }

    pub fn add(&mut self, other: &PauliSum) -> Result<()> {
        for (c, p) in other.iter() {
            self.add_term(*c, p.clone())?;
        }
        Ok(())
    }

    pub fn scaled(&self, factor: f64) -> PauliSum {
        let mut out = PauliSum::new(self.n);
        for (c, p) in self.iter() {
            out.add_term(c * factor, p.clone())
                .expect("terms of a PauliSum are Hermitian and sized");
        }
        out
    }

    /// Coefficient of a given set of letters (phase ignored), 0 if absent.
    pub fn coefficient(&self, op: &PauliString) -> f64 {
        let sign = if op.phase_exp() == 2 { -1.0 } else { 1.0 };
        self.index
            .get(&op.key())
            .map_or(0.0, |&i| sign * self.terms[i].0)
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.coefficient(&PauliString::identity(self.n))
    }

    pub fn without_identity(&self) -> PauliSum {
        let mut out = PauliSum::new(self.n);
        for (c, p) in self.iter().filter(|(_, p)| !p.is_identity()) {
            out.add_term(*c, p.clone()).expect("valid term");
        }
        out
    }

    /// Sum of absolute coefficients of the non-identity terms.
    pub fn one_norm(&self) -> f64 {
        self.iter()
            .filter(|(_, p)| !p.is_identity())
            .map(|(c, _)| c.abs())
            .sum()
    }

    pub fn to_records(&self) -> Vec<PauliRecord> {
        self.iter()
            .map(|(c, p)| PauliRecord {
                coeff: *c,
                pauli: p.to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[PauliRecord]) -> Result<PauliSum> {
        let first = records
            .first()
            .ok_or_else(|| Error::Parse("empty Pauli sum".into()))?;
        let n = first.pauli.parse::<PauliString>()?.n_qubits();
        let mut sum = PauliSum::new(n);
        for r in records {
            sum.add_term(r.coeff, r.pauli.parse()?)?;
        }
        Ok(sum)
    }
}

impl PartialEq for PauliSum {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.len() == other.len()
            && self
                .iter()
                .all(|(c, p)| (other.coefficient(p) - c).abs() <= 1e-12)
    }
}

impl Serialize for PauliSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PauliSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<PauliRecord>::deserialize(deserializer)?;
        PauliSum::from_records(&records).map_err(serde::de::Error::custom)
    }
}

/// Complex-weighted sum of Pauli strings, closed under products.
///
/// Used for symbolic fermion-to-qubit algebra where intermediate operators
/// such as `(X + iY)/2` are not Hermitian.
#[derive(Clone, Debug)]
pub struct PauliPolynomial {
    n: usize,
    terms: Vec<(Complex64, PauliString)>,
    index: HashMap<(Vec<u64>, Vec<u64>), usize>,
}

impl PauliPolynomial {
    pub fn zero(n: usize) -> Self {
        PauliPolynomial {
            n,
            terms: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn scalar(n: usize, c: Complex64) -> Self {
        PauliPolynomial::term(c, PauliString::identity(n))
    }

    pub fn term(c: Complex64, op: PauliString) -> Self {
        let mut p = PauliPolynomial::zero(op.n_qubits());
        p.add_term(c, op);
        p
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Complex64, PauliString)] {
        &self.terms
    }

    pub fn add_term(&mut self, c: Complex64, op: PauliString) {
        assert_eq!(op.n_qubits(), self.n, "Pauli size mismatch");
        let c = c * i_pow(u32::from(op.phase_exp()));
        let op = op.letters_only();
        let key = op.key();
        match self.index.get(&key) {
            Some(&i) => self.terms[i].0 += c,
            None => {
                self.index.insert(key, self.terms.len());
                self.terms.push((c, op));
            }
        }
    }

    pub fn plus(&self, other: &PauliPolynomial) -> PauliPolynomial {
        let mut out = self.clone();
        for (c, p) in &other.terms {
            out.add_term(*c, p.clone());
        }
        out
    }

    pub fn scaled(&self, f: Complex64) -> PauliPolynomial {
        let mut out = PauliPolynomial::zero(self.n);
        for (c, p) in &self.terms {
            out.add_term(c * f, p.clone());
        }
        out
    }

    pub fn times(&self, other: &PauliPolynomial) -> PauliPolynomial {
        let mut out = PauliPolynomial::zero(self.n);
        for (c1, p1) in &self.terms {
            for (c2, p2) in &other.terms {
                out.add_term(c1 * c2, p1 * p2);
            }
        }
        out
    }

    pub fn adjoint(&self) -> PauliPolynomial {
        let mut out = PauliPolynomial::zero(self.n);
        for (c, p) in &self.terms {
            out.add_term(c.conj(), p.clone());
        }
        out
    }

    /// Keeps only the listed qubits, in order. Letters elsewhere are dropped,
    /// so this is meaningful when every term is identity off `qubits`.
    pub fn restrict(&self, qubits: &[usize]) -> PauliPolynomial {
        let mut out = PauliPolynomial::zero(qubits.len());
        for (c, p) in &self.terms {
            out.add_term(*c, p.restrict(qubits));
        }
        out
    }

    /// Drops terms with `|c| < tol`.
    pub fn pruned(&self, tol: f64) -> PauliPolynomial {
        let mut out = PauliPolynomial::zero(self.n);
        for (c, p) in self.terms.iter().filter(|(c, _)| c.norm() >= tol) {
            out.add_term(*c, p.clone());
        }
        out
    }

    /// Converts to a real Hermitian sum; fails if any surviving coefficient
    /// has an imaginary part above `1e-12`.
    pub fn to_hermitian(&self) -> Result<PauliSum> {
        let mut out = PauliSum::new(self.n);
        for (c, p) in &self.terms {
            if c.im.abs() > 1e-12 {
                return Err(Error::NonHermitian(format!("{c} · {p}")));
            }
            out.add_term(c.re, p.clone())?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = p("+ZIZ");
        assert_eq!(a.n_qubits(), 3);
        assert_eq!(a.support(), vec![0, 2]);
        assert!(a.is_z_type());

        let b = p("-iXY");
        assert_eq!(b.phase_exp(), 3);
        assert!(b.x_bit(0) && b.x_bit(1));
        assert!(!b.z_bit(0) && b.z_bit(1));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("".parse::<PauliString>(), Err(Error::Parse(_))));
        assert!(matches!("+".parse::<PauliString>(), Err(Error::Parse(_))));
        assert!(matches!("+XQZ".parse::<PauliString>(), Err(Error::Parse(_))));
    }

    #[test]
    fn single_qubit_products() {
        assert_eq!((&p("+X") * &p("+Z")).to_string(), "-iY");
        assert_eq!((&p("+Z") * &p("+X")).to_string(), "+iY");
        assert_eq!((&p("+X") * &p("+Y")).to_string(), "+iZ");
        assert_eq!((&p("+Y") * &p("+Z")).to_string(), "+iX");
        assert_eq!((&p("+Y") * &p("+Y")).to_string(), "+I");
    }

    #[test]
    fn identity_and_z_products() {
        let q = p("-iXYZI");
        assert_eq!(&PauliString::identity(4) * &q, q);
        assert_eq!(&p("+ZZI") * &p("+IZZ"), p("+ZIZ"));
    }

    #[test]
    fn weight_and_commutation() {
        assert_eq!(PauliString::identity(4).weight(), 0);
        assert_eq!(p("+ZZZ").weight(), 3);
        assert!(!p("+X").commutes_with(&p("+Z")));
        assert!(p("+XX").commutes_with(&p("+ZZ")));
        assert!(matches!(
            p("+XX").commutes(&p("+X")),
            Err(Error::DimensionMismatch { left: 2, right: 1 })
        ));
        assert!(p("+XX").multiply(&p("+X")).is_err());
    }

    #[test]
    fn sum_merges_and_folds_signs() {
        let mut s = PauliSum::new(2);
        s.add_term(1.0, p("+ZZ")).unwrap();
        s.add_term(0.5, p("-ZZ")).unwrap();
        s.add_term(2.0, p("+XI")).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient(&p("+ZZ")), 0.5);
        s.add_term(-2.0, p("+XI")).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.add_term(1.0, p("+iXZ")).is_err());
        assert!(s.add_term(1.0, p("+X")).is_err());
    }

    #[test]
    fn sum_record_round_trip() {
        let s = PauliSum::from_terms(3, [(0.25, p("+XZY")), (-1.5, p("+IIZ"))]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"coeff\":0.25"));
        assert!(json.contains("\"pauli\":\"+XZY\""));
        let back: PauliSum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn polynomial_ladder_algebra() {
        // (X + iY)/2 is |0><1|; its square vanishes and {a, a†} = 1.
        let half = Complex64::new(0.5, 0.0);
        let a = PauliPolynomial::term(half, p("+X")).plus(&PauliPolynomial::term(
            Complex64::new(0.0, 0.5),
            p("+Y"),
        ));
        let sq = a.times(&a).pruned(1e-14);
        assert!(sq.terms().is_empty());
        let anti = a.times(&a.adjoint()).plus(&a.adjoint().times(&a)).pruned(1e-14);
        let h = anti.to_hermitian().unwrap();
        assert_eq!(h.len(), 1);
        assert!((h.identity_coefficient() - 1.0).abs() < 1e-15);
        assert!(a.to_hermitian().is_err());
    }

    #[test]
    fn multiword_strings() {
        let n = 130;
        let a = PauliString::x_on(n, &[0, 64, 129]);
        let b = PauliString::z_on(n, &[64, 100]);
        assert!(!a.commutes_with(&b));
        let ab = &a * &b;
        assert_eq!(ab.weight(), 4);
        assert_eq!(ab.get(64), Pauli::Y);
        assert_eq!(ab.phase_exp(), 3);
    }
}
