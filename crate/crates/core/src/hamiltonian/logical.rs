//! Rewriting physical operators in terms of a code's logical operators.

use crate::gauss_code::StabilizerCode;
use crate::gf2;
use crate::par::{self, Execution};
use crate::pauli::{i_pow, Pauli, PauliString, PauliSum};
use crate::{Error, Result};

/// Logical image of a physical Pauli that commutes with every generator:
/// returns `(s, L)` with `P Π = s · E L E† Π`, where `L` acts on the
/// `k` logical qubits and `s = ±1`.
pub fn logical_image(p: &PauliString, code: &StabilizerCode) -> Result<(f64, PauliString)> {
    let rows: Vec<_> = code.generators.iter().map(gf2::symplectic_row).collect();
    image_with_rows(p, code, &rows)
}

fn image_with_rows(
    p: &PauliString,
    code: &StabilizerCode,
    rows: &[gf2::BitRow],
) -> Result<(f64, PauliString)> {
    if let Some(g) = code.generators.iter().position(|g| !p.commutes(g).unwrap_or(false)) {
        return Err(Error::GaugeViolation {
            term: p.to_string(),
            generator: g,
        });
    }
    let k = code.logical_x.len();
    let mut letters = Vec::with_capacity(k);
    let mut physical = PauliString::identity(p.n_qubits());
    for i in 0..k {
        let a = !p.commutes_with(&code.logical_z[i]);
        let b = !p.commutes_with(&code.logical_x[i]);
        letters.push(Pauli::from_bits(a, b));
        if a {
            physical = &physical * &code.logical_x[i];
        }
        if b {
            physical = &physical * &code.logical_z[i];
        }
        if a && b {
            let phase = physical.phase_exp() + 1;
            physical = physical.with_phase(phase);
        }
    }
    // P = Q·L with Q a signed stabilizer element.
    let q = p * &physical.adjoint();
    let idx = gf2::solve(rows, &gf2::symplectic_row(&q)).ok_or_else(|| {
        Error::Invalid(format!("{p} is outside the span of generators and logicals"))
    })?;
    let stab = idx
        .iter()
        .fold(PauliString::identity(p.n_qubits()), |acc, &i| &acc * &code.generators[i]);
    let c = i_pow(u32::from((4 + q.phase_exp() - stab.phase_exp()) % 4));
    if c.im.abs() > 0.5 {
        return Err(Error::NonHermitian(format!("{p} maps to an imaginary multiple")));
    }
    Ok((c.re, PauliString::from_paulis(&letters)))
}

/// Rewrites every term through [`logical_image`]. Terms that reduce to the
/// same logical string are merged.
pub fn to_logical(h: &PauliSum, code: &StabilizerCode) -> Result<PauliSum> {
    if h.n_qubits() != code.n_physical {
        return Err(Error::DimensionMismatch {
            left: h.n_qubits(),
            right: code.n_physical,
        });
    }
    let rows: Vec<_> = code.generators.iter().map(gf2::symplectic_row).collect();
    let images = par::map(Execution::default(), h.terms(), |(c, p)| {
        image_with_rows(p, code, &rows).map(|(s, l)| (c * s, l))
    });
    let mut out = PauliSum::new(code.logical_x.len());
    for image in images {
        let (c, l) = image?;
        out.add_term(c, l)?;
    }
    Ok(out)
}
