//! Dense GF(2) linear algebra on packed bit rows.

use crate::pauli::PauliString;

pub(crate) type BitRow = Vec<u64>;

pub(crate) fn zeros(bits: usize) -> BitRow {
    vec![0; bits.div_ceil(64)]
}

pub(crate) fn get(row: &[u64], i: usize) -> bool {
    (row[i / 64] >> (i % 64)) & 1 == 1
}

pub(crate) fn set(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    dst.iter_mut().zip(src).for_each(|(d, s)| *d ^= s);
}

fn is_zero(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

pub(crate) fn dot(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() % 2 == 1
}

/// `[x | z]` as one bit row of length `2n` (phase dropped).
pub(crate) fn symplectic_row(p: &PauliString) -> BitRow {
    let n = p.n_qubits();
    let mut row = zeros(2 * n);
    for q in 0..n {
        if p.x_bit(q) {
            set(&mut row, q);
        }
        if p.z_bit(q) {
            set(&mut row, n + q);
        }
    }
    row
}

/// Row-reduces while tracking which input rows form each pivot row.
struct Echelon {
    pivots: Vec<(usize, BitRow, BitRow)>,
}

impl Echelon {
    fn new(rows: &[BitRow]) -> Self {
        let m = rows.len();
        let mut pivots: Vec<(usize, BitRow, BitRow)> = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            let mut row = r.clone();
            let mut combo = zeros(m);
            set(&mut combo, i);
            for (col, prow, pcombo) in &pivots {
                if get(&row, *col) {
                    xor_into(&mut row, prow);
                    xor_into(&mut combo, pcombo);
                }
            }
            if let Some(col) = lowest_bit(&row) {
                for (_, prow, pcombo) in pivots.iter_mut() {
                    if get(prow, col) {
                        xor_into(prow, &row);
                        xor_into(pcombo, &combo);
                    }
                }
                pivots.push((col, row, combo));
            }
        }
        Echelon { pivots }
    }

    fn reduce(&self, target: &[u64], n_rows: usize) -> (BitRow, BitRow) {
        let mut row = target.to_vec();
        let mut combo = zeros(n_rows);
        for (col, prow, pcombo) in &self.pivots {
            if get(&row, *col) {
                xor_into(&mut row, prow);
                xor_into(&mut combo, pcombo);
            }
        }
        (row, combo)
    }
}

pub(crate) fn rank(rows: &[BitRow]) -> usize {
    Echelon::new(rows).pivots.len()
}

/// Indices of rows whose XOR equals `target`, if `target` is in the span.
pub(crate) fn solve(rows: &[BitRow], target: &[u64]) -> Option<Vec<usize>> {
    let (rest, combo) = Echelon::new(rows).reduce(target, rows.len());
    if !is_zero(&rest) {
        return None;
    }
    Some((0..rows.len()).filter(|&i| get(&combo, i)).collect())
}

pub(crate) fn in_span(rows: &[BitRow], target: &[u64]) -> bool {
    solve(rows, target).is_some()
}

/// Basis of `{v : row·v = 0 for every row}` over `bits` columns.
pub(crate) fn kernel(rows: &[BitRow], bits: usize) -> Vec<BitRow> {
    let ech = Echelon::new(rows);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|(c, _, _)| *c).collect();
    let mut basis = Vec::new();
    for free in (0..bits).filter(|c| !pivot_cols.contains(c)) {
        let mut v = zeros(bits);
        set(&mut v, free);
        for (col, prow, _) in &ech.pivots {
            if get(prow, free) {
                set(&mut v, *col);
            }
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square `k × k` matrix given as rows, if invertible.
pub(crate) fn inverse(rows: &[BitRow], k: usize) -> Option<Vec<BitRow>> {
    let mut inv = Vec::with_capacity(k);
    for j in 0..k {
        let mut e = zeros(k);
        set(&mut e, j);
        inv.push(solve(rows, &e)?);
    }
    // Coefficients c with Σ c_i · rows[i] = e_j form row j of the inverse.
    Some(
        inv.into_iter()
            .map(|idx| {
                let mut r = zeros(k);
                idx.into_iter().for_each(|i| set(&mut r, i));
                r
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(bits: &[usize], len: usize) -> BitRow {
        let mut r = zeros(len);
        bits.iter().for_each(|&b| set(&mut r, b));
        r
    }

    #[test]
    fn rank_and_solve() {
        let rows = vec![row(&[0, 1], 4), row(&[1, 2], 4), row(&[0, 2], 4)];
        assert_eq!(rank(&rows), 2);
        let sol = solve(&rows, &row(&[0, 2], 4)).unwrap();
        let mut acc = zeros(4);
        sol.iter().for_each(|&i| xor_into(&mut acc, &rows[i]));
        assert_eq!(acc, row(&[0, 2], 4));
        assert!(solve(&rows, &row(&[3], 4)).is_none());
    }

    #[test]
    fn kernel_is_orthogonal() {
        let rows = vec![row(&[0, 2, 4, 6], 7), row(&[1, 2, 5, 6], 7), row(&[3, 4, 5, 6], 7)];
        let ker = kernel(&rows, 7);
        assert_eq!(ker.len(), 4);
        for v in &ker {
            for r in &rows {
                assert!(!dot(v, r));
            }
        }
        assert_eq!(rank(&ker), 4);
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![row(&[0, 1], 3), row(&[1], 3), row(&[0, 2], 3)];
        let inv = inverse(&m, 3).unwrap();
        for (i, r) in inv.iter().enumerate() {
            let mut acc = zeros(3);
            (0..3).filter(|&j| get(r, j)).for_each(|j| xor_into(&mut acc, &m[j]));
            assert_eq!(acc, row(&[i], 3));
        }
        assert!(inverse(&[row(&[0], 2), row(&[0], 2)], 2).is_none());
    }
}
