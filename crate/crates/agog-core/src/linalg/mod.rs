//! Exact integer and rational linear algebra.
//!
//! Dense matrices over `BigInt`, Smith normal form with full unimodular
//! transform tracking, integer kernels and linear-system solving, and
//! canonical lattices in column Hermite normal form. All arithmetic is
//! exact; intermediate entries may grow without bound, which is why the
//! entry type is arbitrary precision.

mod lattice;
mod rational;
mod smith;

pub use lattice::Lattice;
pub use rational::{
    integer_kernel_of_rational, qvec_from_int, rational_nullspace, rational_rank,
    rational_solve_square, QVec,
};
pub use smith::{smith_normal_form, SmithDecomposition};
pub(crate) use smith::smith_full;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        IntegerMatrix { rows, cols, entries }
    }

    /// Convenience constructor from machine integers; used by tests and
    /// document parsing, where entries are human-scale.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    /// Builds a matrix whose columns are the given vectors, each of length
    /// `ambient`. An empty column list yields an `ambient x 0` matrix.
    pub fn from_columns(ambient: usize, columns: &[Vec<BigInt>]) -> Self {
        assert!(columns.iter().all(|col| col.len() == ambient), "bad column length");
        Self::from_fn(ambient, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += self.at(i, k) * other.at(k, j);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// Absolute value of the determinant of a square matrix, computed as the
    /// product of the Smith diagonal.
    pub fn abs_det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let snf = smith_normal_form(self);
        let mut det = BigInt::one();
        for i in 0..self.rows {
            det *= snf.d.at(i, i);
        }
        det.abs()
    }

    /// Inverse of a unimodular integer matrix. Panics if `|det| != 1`.
    pub fn inverse_unimodular(&self) -> IntegerMatrix {
        assert!(self.is_square());
        let full = smith_full(self);
        assert!(full.d.is_identity(), "matrix is not unimodular");
        // u * m * v = 1  =>  m^{-1} = v * u
        full.v.mul(&full.u)
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.at(i, c);
            self.set(i, c, v);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, j);
            self.set(r, j, v);
        }
    }

    /// row_i -= q * row_j
    pub(crate) fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.at(i, c) - q * self.at(j, c);
            self.set(i, c, v);
        }
    }

    /// col_i -= q * col_j
    pub(crate) fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.at(r, i) - q * self.at(r, j);
            self.set(r, i, v);
        }
    }

    /// row_i += row_j
    pub(crate) fn row_add(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            let v = self.at(i, c) + self.at(j, c);
            self.set(i, c, v);
        }
    }

    /// col_i += q * col_j
    pub(crate) fn col_add_mul(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.at(r, i) + q * self.at(r, j);
            self.set(r, i, v);
        }
    }
}

impl std::fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank over the rationals: the number of nonzero Smith diagonal entries.
pub fn rank(a: &IntegerMatrix) -> usize {
    let snf = smith_normal_form(a);
    let n = a.rows().min(a.cols());
    (0..n).filter(|&i| !snf.d.at(i, i).is_zero()).count()
}

/// Integer kernel of `a` as a canonical lattice in `Z^cols`.
///
/// Via `u a v = d`, the kernel is spanned by the columns of `v` past the
/// rank; these are automatically primitive, so the lattice is saturated.
pub fn kernel(a: &IntegerMatrix) -> Lattice {
    let full = smith_full(a);
    let n = a.rows().min(a.cols());
    let rk = (0..n).filter(|&i| !full.d.at(i, i).is_zero()).count();
    let cols: Vec<Vec<BigInt>> = (rk..a.cols()).map(|j| full.v.column(j)).collect();
    Lattice::from_generators(a.cols(), &cols)
}

/// Solves `a x = b` over the integers, returning the canonical solution
/// (the particular Smith-form solution reduced modulo the Hermite basis of
/// the kernel), or `None` when no integer solution exists.
pub fn solve(a: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let full = smith_full(a);
    let c = full.u.mul_vec(b);
    let n = a.rows().min(a.cols());
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let diag = if i < n { full.d.at(i, i).clone() } else { BigInt::zero() };
        if diag.is_zero() {
            if !c[i].is_zero() {
                return None;
            }
        } else {
            if (&c[i] % &diag) != BigInt::zero() {
                return None;
            }
            y[i] = &c[i] / &diag;
        }
    }
    let x = full.v.mul_vec(&y);
    let ker = {
        let rk = (0..n).filter(|&i| !full.d.at(i, i).is_zero()).count();
        let cols: Vec<Vec<BigInt>> = (rk..a.cols()).map(|j| full.v.column(j)).collect();
        Lattice::from_generators(a.cols(), &cols)
    };
    Some(ker.reduce_vector(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows_i64(rows)
    }

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    // Oracle for 2x2 Smith diagonals: d1 is the gcd of all entries and
    // d1*d2 equals |det|.
    fn smith_2x2_oracle(a: &IntegerMatrix) -> (BigInt, BigInt) {
        let mut g = BigInt::zero();
        for i in 0..2 {
            for j in 0..2 {
                g = g.gcd(a.at(i, j));
            }
        }
        let det = (a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0)).abs();
        let d2 = if g.is_zero() { BigInt::zero() } else { det / &g };
        (g, d2)
    }

    #[test]
    fn smith_of_small_matrix_matches_gcd_det_oracle() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let (d1, d2) = smith_2x2_oracle(&a);
        assert_eq!((d1, d2), (BigInt::from(2), BigInt::from(4)));
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d.at(0, 0), &BigInt::from(2));
        assert_eq!(snf.d.at(1, 1), &BigInt::from(4));
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
        assert_eq!(snf.u.abs_det(), BigInt::one());
        assert_eq!(snf.v.abs_det(), BigInt::one());
    }

    #[test]
    fn smith_of_identity_and_zero() {
        let id = IntegerMatrix::identity(3);
        let snf = smith_normal_form(&id);
        assert!(snf.d.is_identity());

        let z = IntegerMatrix::zero(2, 3);
        let snf = smith_normal_form(&z);
        assert!(snf.d.is_zero());
        assert_eq!(snf.u.mul(&z).mul(&snf.v), snf.d);
    }

    #[test]
    fn rank_of_paper_rank5_matrix() {
        // Columns (0,0,0,2,2),(2,2,0,0,0),(1,1,1,0,0),(3,0,0,-2,0),(0,4,0,0,-3).
        let a = m(&[
            vec![0, 2, 1, 3, 0],
            vec![0, 2, 1, 0, 4],
            vec![0, 0, 1, 0, 0],
            vec![2, 0, 0, -2, 0],
            vec![2, 0, 0, 0, -3],
        ]);
        assert_eq!(rank(&a), 5);
    }

    #[test]
    fn rank_edge_cases() {
        assert_eq!(rank(&IntegerMatrix::zero(3, 3)), 0);
        // Second row is twice the first.
        assert_eq!(rank(&m(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&m(&[vec![1, 1]]));
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&bv(&[1, -1])));
        assert!(!k.contains(&bv(&[1, 1])));

        assert_eq!(kernel(&IntegerMatrix::identity(4)).rank(), 0);
        // Nonzero determinant: trivial kernel.
        assert_eq!(kernel(&m(&[vec![2, 4], vec![6, 8]])).rank(), 0);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&m(&[vec![2]]), &bv(&[4])), Some(bv(&[2])));
        assert_eq!(solve(&m(&[vec![2]]), &bv(&[3])), None);
        // Back substitution oracle: x2 = 2, x1 = 3 - 2 = 1.
        assert_eq!(solve(&m(&[vec![1, 1], vec![0, 2]]), &bv(&[3, 4])), Some(bv(&[1, 2])));
    }

    #[test]
    fn solve_is_canonical_under_kernel() {
        // a has kernel spanned by (1,-1); the canonical solution is reduced.
        let a = m(&[vec![1, 1]]);
        let x = solve(&a, &bv(&[5])).unwrap();
        let y = solve(&a, &bv(&[5])).unwrap();
        assert_eq!(x, y);
        assert_eq!(a.mul_vec(&x), bv(&[5]));
    }

    #[test]
    fn unimodular_inverse_round_trip() {
        let u = m(&[vec![2, 1], vec![1, 1]]);
        let inv = u.inverse_unimodular();
        assert!(u.mul(&inv).is_identity());
        assert!(inv.mul(&u).is_identity());
    }

    #[test]
    fn smith_is_deterministic() {
        let a = m(&[vec![6, 10, 15], vec![10, 15, 6], vec![15, 6, 10]]);
        let s1 = smith_normal_form(&a);
        let s2 = smith_normal_form(&a);
        assert_eq!(s1.u, s2.u);
        assert_eq!(s1.v, s2.v);
        assert_eq!(s1.d, s2.d);
    }
}
