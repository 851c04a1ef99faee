//! Exact rational linear algebra helpers: rank, nullspace and square-system
//! solving by fraction-free-ish Gaussian elimination over `BigRational`.

use super::{kernel, IntegerMatrix, Lattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QVec = Vec<BigRational>;

pub fn qvec_from_int(v: &[BigInt]) -> QVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Row echelon reduction in place; returns pivot columns.
fn echelon(rows: &mut Vec<QVec>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let sub = &factor * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of the collection of vectors (as rows).
pub fn rational_rank(vectors: &[QVec]) -> usize {
    let mut rows: Vec<QVec> = vectors.to_vec();
    echelon(&mut rows).len()
}

/// Basis of the right nullspace `{x : rows * x = 0}`.
pub fn rational_nullspace(matrix_rows: &[QVec]) -> Vec<QVec> {
    let ncols = matrix_rows.first().map_or(0, |r| r.len());
    if ncols == 0 {
        return Vec::new();
    }
    let mut rows: Vec<QVec> = matrix_rows.to_vec();
    let pivots = echelon(&mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![BigRational::zero(); ncols];
        x[f] = BigRational::one();
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -rows[i][f].clone();
        }
        basis.push(x);
    }
    basis
}

/// Solves the square system `a x = b` when `a` is invertible.
pub fn rational_solve_square(a: &[QVec], b: &QVec) -> Option<QVec> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    assert!(a.iter().all(|r| r.len() == n), "matrix not square");
    assert_eq!(b.len(), n);
    let mut rows: Vec<QVec> = a
        .iter()
        .zip(b.iter())
        .map(|(r, rhs)| {
            let mut row = r.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let pivots = echelon(&mut rows);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][n].clone();
    }
    Some(x)
}

/// Integer kernel `{x in Z^cols : m x = 0}` of a rational matrix, obtained
/// by clearing denominators row by row (which does not change the kernel).
pub fn integer_kernel_of_rational(matrix_rows: &[QVec]) -> Lattice {
    let ncols = matrix_rows.first().map_or(0, |r| r.len());
    if matrix_rows.is_empty() {
        return Lattice::full(ncols);
    }
    let scaled = IntegerMatrix::from_fn(matrix_rows.len(), ncols, |i, j| {
        let row = &matrix_rows[i];
        let mut lcm = BigInt::one();
        for e in row.iter() {
            lcm = lcm.lcm(e.denom());
        }
        let e = &row[j];
        e.numer() * (&lcm / e.denom())
    });
    kernel(&scaled)
}
