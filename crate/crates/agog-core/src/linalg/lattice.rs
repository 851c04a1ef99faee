//! Canonical integer lattices.
//!
//! A lattice is stored by a basis matrix in column Hermite normal form:
//! pivot rows strictly increase with the column index, pivots are positive,
//! each column is zero above its pivot, and entries of earlier columns in a
//! pivot row are reduced into `[0, pivot)`. Two lattices are equal iff their
//! canonical bases are equal componentwise.

use super::{smith_full, solve, IntegerMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntegerMatrix,
}

impl Lattice {
    /// Canonicalizes an arbitrary generating set: zero columns are dropped
    /// and the rest is brought to column Hermite normal form.
    pub fn from_generators(ambient_dim: usize, generators: &[Vec<BigInt>]) -> Self {
        let m = IntegerMatrix::from_columns(ambient_dim, generators);
        Lattice {
            ambient_dim,
            basis: hnf_columns(&m),
        }
    }

    pub fn from_basis_matrix(m: &IntegerMatrix) -> Self {
        Lattice {
            ambient_dim: m.rows(),
            basis: hnf_columns(m),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: IntegerMatrix::zero(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: IntegerMatrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn basis_columns(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    /// Membership of `v`: solvable iff `v` is an integer combination of the
    /// basis columns.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        if self.rank() == 0 {
            return v.iter().all(|x| x.is_zero());
        }
        solve(&self.basis, v).is_some()
    }

    pub fn is_subset_of(&self, other: &Lattice) -> bool {
        self.basis_columns().iter().all(|c| other.contains(c))
    }

    /// Intersection, computed from the kernel of the block matrix
    /// `[b1 | -b2]`: a vector lies in both lattices iff it is `b1 x = b2 y`
    /// for integer `x, y`.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(self.ambient_dim);
        }
        let block = self.basis.hstack(&other.basis.neg());
        let ker = super::kernel(&block);
        let gens: Vec<Vec<BigInt>> = ker
            .basis_columns()
            .iter()
            .map(|col| {
                let x: Vec<BigInt> = col[..self.rank()].to_vec();
                self.basis.mul_vec(&x)
            })
            .collect();
        Lattice::from_generators(self.ambient_dim, &gens)
    }

    /// Smallest lattice containing `self` whose quotient is torsion-free:
    /// `(self ⊗ Q) ∩ Z^n`. With `u b v = d`, the rational column span of
    /// `b` is spanned by the first `rank` columns of `u^{-1}`, which form a
    /// primitive basis.
    pub fn saturate(&self) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let full = smith_full(&self.basis);
        let n = self.basis.rows().min(self.basis.cols());
        let rk = (0..n).filter(|&i| !full.d.at(i, i).is_zero()).count();
        let gens: Vec<Vec<BigInt>> = (0..rk).map(|j| full.u_inv.column(j)).collect();
        Lattice::from_generators(self.ambient_dim, &gens)
    }

    /// Reduces `v` modulo the lattice: at each pivot row the coordinate is
    /// brought into `[0, pivot)` by subtracting basis columns. The result is
    /// a canonical coset representative.
    pub fn reduce_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut x = v.to_vec();
        for j in 0..self.basis.cols() {
            let pr = pivot_row(&self.basis, j);
            let p = self.basis.at(pr, j);
            let q = x[pr].div_floor(p);
            if q.is_zero() {
                continue;
            }
            for r in 0..self.ambient_dim {
                let val = &x[r] - &q * self.basis.at(r, j);
                x[r] = val;
            }
        }
        x
    }
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(dim {}, basis {:?})", self.ambient_dim, self.basis)
    }
}

fn pivot_row(m: &IntegerMatrix, col: usize) -> usize {
    for r in 0..m.rows() {
        if !m.at(r, col).is_zero() {
            return r;
        }
    }
    unreachable!("zero column in lattice basis")
}

/// Column Hermite normal form; zero columns are dropped.
pub(crate) fn hnf_columns(m: &IntegerMatrix) -> IntegerMatrix {
    let rows = m.rows();
    let mut w = m.clone();
    let mut cur = 0usize;
    for r in 0..rows {
        if cur >= w.cols() {
            break;
        }
        // Deterministic pivot: minimal |entry| among columns >= cur at row r.
        loop {
            let mut best: Option<usize> = None;
            for j in cur..w.cols() {
                if w.at(r, j).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) => {
                        if w.at(r, j).abs() < w.at(r, b).abs() {
                            best = Some(j);
                        }
                    }
                }
            }
            let Some(b) = best else {
                break;
            };
            w.swap_cols(cur, b);
            let mut cleared = true;
            for j in cur + 1..w.cols() {
                if w.at(r, j).is_zero() {
                    continue;
                }
                let q = w.at(r, j) / w.at(r, cur);
                w.col_sub(j, cur, &q);
                if !w.at(r, j).is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                if w.at(r, cur).is_negative() {
                    w.negate_col(cur);
                }
                // Reduce earlier columns at this pivot row into [0, pivot).
                for j in 0..cur {
                    let q = w.at(r, j).div_floor(w.at(r, cur));
                    if !q.is_zero() {
                        w.col_sub(j, cur, &q);
                    }
                }
                cur += 1;
                break;
            }
        }
    }
    // Keep the first `cur` columns; the rest are zero.
    IntegerMatrix::from_fn(rows, cur, |i, j| w.at(i, j).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lat(ambient: usize, gens: &[&[i64]]) -> Lattice {
        let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| bv(g)).collect();
        Lattice::from_generators(ambient, &cols)
    }

    #[test]
    fn canonical_basis_is_generating_set_independent() {
        let a = lat(2, &[&[2, 0], &[1, 1]]);
        let b = lat(2, &[&[1, 1], &[5, 1], &[2, 0]]);
        assert_eq!(a, b);
    }

    #[test]
    fn membership_examples() {
        assert!(lat(2, &[&[1, 1]]).contains(&bv(&[2, 2])));
        assert!(!lat(2, &[&[2, 0]]).contains(&bv(&[1, 0])));
        // (5,1) = 2*(2,0) + 1*(1,1)
        assert!(lat(2, &[&[2, 0], &[1, 1]]).contains(&bv(&[5, 1])));
    }

    #[test]
    fn intersection_examples() {
        let z2 = Lattice::full(2);
        assert_eq!(z2.intersect(&z2), z2);
        // lcm on a line
        assert_eq!(lat(2, &[&[2, 0]]).intersect(&lat(2, &[&[3, 0]])), lat(2, &[&[6, 0]]));
        assert!(lat(2, &[&[1, 0]]).intersect(&lat(2, &[&[0, 1]])).is_zero());
    }

    #[test]
    fn intersection_is_commutative_and_contained() {
        let a = lat(3, &[&[2, 0, 1], &[0, 3, 0]]);
        let b = lat(3, &[&[1, 1, 1], &[0, 0, 2]]);
        let ab = a.intersect(&b);
        assert_eq!(ab, b.intersect(&a));
        assert!(ab.is_subset_of(&a));
        assert!(ab.is_subset_of(&b));
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(lat(2, &[&[2, 0]]).saturate(), lat(2, &[&[1, 0]]));
        let primitive = lat(2, &[&[1, 1]]);
        assert_eq!(primitive.saturate(), primitive);
        // Full-rank sublattice: the rational span is everything, so the
        // saturation is Z^2 (index 8 sublattice; oracle: |det| of basis).
        let l = lat(2, &[&[2, 2], &[0, 4]]);
        assert_eq!(l.basis().abs_det(), BigInt::from(8));
        assert_eq!(l.saturate(), Lattice::full(2));
    }

    #[test]
    fn saturation_contains_and_same_rank() {
        let l = lat(3, &[&[2, 4, 0], &[0, 6, 3]]);
        let s = l.saturate();
        assert!(l.is_subset_of(&s));
        assert_eq!(l.rank(), s.rank());
        assert_eq!(s.saturate(), s);
    }

    #[test]
    fn reduce_vector_is_coset_representative() {
        let l = lat(2, &[&[2, 0], &[1, 1]]);
        let r = l.reduce_vector(&bv(&[7, 3]));
        let mut diff = bv(&[7, 3]);
        for (d, x) in diff.iter_mut().zip(r.iter()) {
            *d -= x;
        }
        assert!(l.contains(&diff));
        // Reduction is idempotent.
        assert_eq!(l.reduce_vector(&r), r);
    }
}
