//! Dense complex matrices for exact oracle checks.
//!
//! Matrices use the same basis convention as [`crate::Statevector`]: qubit 0
//! is the most significant bit of the row/column index.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::limits::check_cap;
use crate::par::{self, Execution};
use crate::pauli::{PauliPolynomial, PauliString, PauliSum};
use crate::{max_qubits, Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn pauli_matrix(p: &PauliString) -> Result<CMatrix> {
    check_cap(p.n_qubits(), max_qubits())?;
    let dim = 1usize << p.n_qubits();
    let act = p.action();
    let mut m = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        m[(b ^ act.x_mask, b)] = act.factor(b);
    }
    Ok(m)
}

/// Dense matrix of a Pauli sum, using the default execution policy.
pub fn to_matrix(h: &PauliSum) -> Result<CMatrix> {
    to_matrix_with(h, Execution::default())
}

/// Dense matrix of a Pauli sum. Columns are filled independently, so the
/// parallel policy splits the work by column.
pub fn to_matrix_with(h: &PauliSum, exec: Execution) -> Result<CMatrix> {
    let n = h.n_qubits();
    check_cap(n, max_qubits())?;
    let dim = 1usize << n;
    let actions: Vec<_> = h.iter().map(|(c, p)| (*c, p.action())).collect();
    let mut m = CMatrix::zeros(dim, dim);
    par::for_each_chunk_mut(exec, m.as_mut_slice(), dim, |col, column| {
        for (c, act) in &actions {
            column[col ^ act.x_mask] += act.factor(col) * *c;
        }
    });
    Ok(m)
}

/// Dense matrix of a complex-weighted Pauli polynomial.
pub fn polynomial_matrix(p: &PauliPolynomial) -> Result<CMatrix> {
    let n = p.n_qubits();
    check_cap(n, max_qubits())?;
    let dim = 1usize << n;
    let mut m = CMatrix::zeros(dim, dim);
    for (c, op) in p.terms() {
        let act = op.action();
        for b in 0..dim {
            m[(b ^ act.x_mask, b)] += act.factor(b) * *c;
        }
    }
    Ok(m)
}

/// `b† H b` computed term by term, without forming the dense `H`.
pub fn compress_sum(h: &PauliSum, b: &CMatrix) -> Result<CMatrix> {
    let n = h.n_qubits();
    check_cap(n, max_qubits())?;
    let dim = 1usize << n;
    if b.nrows() != dim {
        return Err(Error::Invalid(format!(
            "isometry has {} rows, expected {dim}",
            b.nrows()
        )));
    }
    let mut hb = CMatrix::zeros(dim, b.ncols());
    for (c, op) in h.iter() {
        let act = op.action();
        for col in 0..b.ncols() {
            for r in 0..dim {
                let v = b[(r, col)];
                if v != ZERO {
                    hb[(r ^ act.x_mask, col)] += act.factor(r) * v * *c;
                }
            }
        }
    }
    Ok(b.adjoint() * hb)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::Invalid(format!(
            "matrix shapes differ: {:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_error(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// `‖U†U − 1‖_max`.
pub fn unitarity_error(u: &CMatrix) -> f64 {
    let dim = u.ncols();
    max_abs(&(u.adjoint() * u - identity(dim)))
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigen-decomposition `m = V diag(λ) V†` of a Hermitian matrix.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    (eig.eigenvalues.iter().cloned().collect(), eig.eigenvectors)
}

/// Largest pointwise gap between two sorted spectra.
pub fn spectrum_gap(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Invalid(format!(
            "spectra have different lengths: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// `e^{−iHt}` for Hermitian `H`.
pub fn evolution_operator(h: &CMatrix, t: f64) -> CMatrix {
    let (ev, v) = eigh(h);
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        ev.len(),
        ev.iter().map(|&l| Complex64::from_polar(1.0, -l * t)),
    ));
    &v * phases * v.adjoint()
}

/// `b† m b`: the compression of `m` onto the columns of `b`.
pub fn compress(m: &CMatrix, b: &CMatrix) -> CMatrix {
    b.adjoint() * m * b
}

/// `min_φ ‖a − e^{iφ} b‖₂`, with `φ` chosen to maximise `Re tr(e^{−iφ} b† a)`.
pub fn phase_aligned_distance(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::Invalid("matrix shapes differ".into()));
    }
    let overlap = (b.adjoint() * a).trace();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    Ok(spectral_norm(&(a - b * phase)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_z() {
        let h = PauliSum::from_terms(1, [(0.7, p("+Z"))]).unwrap();
        let m = to_matrix(&h).unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(0.7, 0.0));
        assert_eq!(m[(1, 1)], Complex64::new(-0.7, 0.0));
        assert_eq!(m[(0, 1)], ZERO);
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        let m = pauli_matrix(&p("+XI")).unwrap();
        assert_eq!(m[(2, 0)], ONE);
        let y = pauli_matrix(&p("+Y")).unwrap();
        assert_eq!(y[(1, 0)], I);
        assert_eq!(y[(0, 1)], -I);
    }

    #[test]
    fn linearity() {
        let a = PauliSum::from_terms(2, [(0.3, p("+XY")), (1.0, p("+ZI"))]).unwrap();
        let b = PauliSum::from_terms(2, [(-0.2, p("+XY")), (0.5, p("+YY"))]).unwrap();
        let mut ab = a.clone();
        ab.add(&b).unwrap();
        let lhs = to_matrix(&ab).unwrap();
        let rhs = to_matrix(&a).unwrap() + to_matrix(&b).unwrap();
        assert!(max_abs_diff(&lhs, &rhs).unwrap() < 1e-15);
        assert!(hermiticity_error(&lhs) < 1e-15);
    }

    #[test]
    fn policies_agree() {
        let h = PauliSum::from_terms(
            4,
            [(0.3, p("+XYZI")), (1.0, p("+ZIIZ")), (-0.4, p("+YYXX"))],
        )
        .unwrap();
        let a = to_matrix_with(&h, Execution::Sequential).unwrap();
        let b = to_matrix_with(&h, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn evolution_of_z() {
        let h = to_matrix(&PauliSum::from_terms(1, [(1.0, p("+Z"))]).unwrap()).unwrap();
        let t = 0.37;
        let u = evolution_operator(&h, t);
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, -t)).norm() < 1e-14);
        assert!((u[(1, 1)] - Complex64::from_polar(1.0, t)).norm() < 1e-14);
        assert!(unitarity_error(&u) < 1e-14);
        assert!(max_abs_diff(&evolution_operator(&h, 0.0), &identity(2)).unwrap() < 1e-14);
    }

    #[test]
    fn global_phase_is_quotiented() {
        let a = pauli_matrix(&p("+XZ")).unwrap();
        let b = &a * Complex64::from_polar(1.0, 0.9);
        assert!(phase_aligned_distance(&a, &b).unwrap() < 1e-14);
        assert!(phase_aligned_distance(&a, &pauli_matrix(&p("+ZX")).unwrap()).unwrap() > 1.0);
    }

    #[test]
    fn cap_is_enforced() {
        let big = PauliSum::from_terms(40, [(1.0, PauliString::z_on(40, &[0]))]).unwrap();
        assert!(matches!(to_matrix(&big), Err(Error::CapacityExceeded { .. })));
    }
}
