//! Finiteness of finitely generated subgroups of GL(n,Z) and orders of
//! single matrices.
//!
//! The decision procedure is breadth-first closure under generator
//! multiplication, capped by the Minkowski bound M(n): every finite
//! subgroup of GL(n,Z) has order at most M(n), so a closure exceeding the
//! cap certifies infiniteness, and a closure that stabilizes below it is
//! the subgroup itself (a finite monoid of invertible matrices is a
//! group). A matrix of finite order has all eigenvalues on the unit
//! circle, hence |trace| <= n; any element violating that is an immediate
//! infinite-order witness.

use crate::linalg::IntegerMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use std::collections::HashMap;
use thiserror::Error;

/// Above this the Minkowski cap makes breadth-first closure impractical.
pub const MAX_DIMENSION: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatGrpError {
    #[error("generator {index} is {rows}x{cols}, expected {n}x{n}")]
    BadShape { index: usize, rows: usize, cols: usize, n: usize },
    #[error("generator {index} has |det| != 1, not invertible over Z")]
    NotUnimodular { index: usize },
    #[error("dimension {0} too large (supported up to {MAX_DIMENSION})")]
    DimensionTooLarge(usize),
    #[error("matrix group has no generators and no dimension")]
    Empty,
}

/// A finitely generated subgroup of GL(n,Z), given by generator matrices.
#[derive(Debug, Clone)]
pub struct MatGroupGens {
    n: usize,
    generators: Vec<IntegerMatrix>,
}

impl MatGroupGens {
    pub fn new(n: usize, generators: Vec<IntegerMatrix>) -> Result<Self, MatGrpError> {
        if n > MAX_DIMENSION {
            return Err(MatGrpError::DimensionTooLarge(n));
        }
        for (index, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(MatGrpError::BadShape {
                    index,
                    rows: g.rows(),
                    cols: g.cols(),
                    n,
                });
            }
            if !g.abs_det().is_one() {
                return Err(MatGrpError::NotUnimodular { index });
            }
        }
        Ok(MatGroupGens { n, generators })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[IntegerMatrix] {
        &self.generators
    }
}

/// Evidence that the generated subgroup is infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfiniteWitness {
    /// A product of generators (by index) of infinite order.
    InfiniteOrderElement { word: Vec<usize> },
    /// The closure exceeded the Minkowski cap.
    ClosureExceededCap { cap: u64 },
}

/// Result of the finiteness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinitenessResult {
    Finite {
        order: usize,
        elements: Vec<IntegerMatrix>,
    },
    Infinite {
        witness: InfiniteWitness,
    },
}

impl FinitenessResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, FinitenessResult::Finite { .. })
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            FinitenessResult::Finite { order, .. } => Some(*order),
            FinitenessResult::Infinite { .. } => None,
        }
    }
}

/// Minkowski's bound `M(n) = ∏_p p^{Σ_{k>=0} ⌊n/(p^k (p-1))⌋}` over primes
/// `p <= n + 1`: an upper bound for the order of any finite subgroup of
/// GL(n,Z).
pub fn minkowski_bound(n: usize) -> BigInt {
    assert!(n >= 1, "dimension must be at least 1");
    let mut bound = BigInt::one();
    for p in 2..=(n + 1) {
        if !is_prime(p) {
            continue;
        }
        let mut exponent = 0usize;
        let mut pk = 1usize;
        loop {
            let denom = pk * (p - 1);
            if denom > n {
                break;
            }
            exponent += n / denom;
            pk *= p;
        }
        for _ in 0..exponent {
            bound *= p;
        }
    }
    bound
}

fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn key(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut k = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            k.push(m.at(r, c).clone());
        }
    }
    k
}

/// Breadth-first closure under right multiplication by the generators,
/// with canonical hashing by entry tuple and a Minkowski cap.
///
/// Returns the full element list (a verified subgroup) or an infiniteness
/// witness: either a discovered element whose trace already certifies
/// infinite order, or the cap overflow itself.
pub fn is_finite(g: &MatGroupGens) -> FinitenessResult {
    let n = g.n;
    let cap_big = minkowski_bound(n);
    let cap = cap_big.to_u64().expect("M(n) fits u64 for n <= 8");
    let trace_bound = BigInt::from(n);

    let mut elements: Vec<IntegerMatrix> = vec![IntegerMatrix::identity(n)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    seen.insert(key(&elements[0]), 0);

    let mut head = 0usize;
    while head < elements.len() {
        for (gi, gen) in g.generators.iter().enumerate() {
            let prod = elements[head].mul(gen);
            let k = key(&prod);
            if seen.contains_key(&k) {
                continue;
            }
            let mut word = words[head].clone();
            word.push(gi);
            if prod.trace().abs() > trace_bound {
                return FinitenessResult::Infinite {
                    witness: InfiniteWitness::InfiniteOrderElement { word },
                };
            }
            seen.insert(k, elements.len());
            elements.push(prod);
            words.push(word);
            if elements.len() as u64 > cap {
                // Look for an explicit infinite-order element among what we
                // saw; otherwise the overflow itself is the certificate.
                for (e, w) in elements.iter().zip(words.iter()).skip(1) {
                    if matrix_order_capped(e, &cap_big).is_none() {
                        return FinitenessResult::Infinite {
                            witness: InfiniteWitness::InfiniteOrderElement { word: w.clone() },
                        };
                    }
                }
                return FinitenessResult::Infinite {
                    witness: InfiniteWitness::ClosureExceededCap { cap },
                };
            }
        }
        head += 1;
    }

    FinitenessResult::Finite {
        order: elements.len(),
        elements,
    }
}

fn matrix_order_capped(x: &IntegerMatrix, cap: &BigInt) -> Option<BigInt> {
    let n = BigInt::from(x.rows());
    let mut power = x.clone();
    let mut k = BigInt::one();
    while &k <= cap {
        if power.trace().abs() > n {
            return None;
        }
        if power.is_identity() {
            return Some(k);
        }
        power = power.mul(x);
        k += 1;
    }
    None
}

/// Order of a single matrix in GL(n,Z): the least `k >= 1` with `x^k = 1`
/// if that happens within the Minkowski cap, otherwise infinite.
pub fn matrix_order(x: &IntegerMatrix) -> crate::fgab::ElementOrder {
    assert!(x.is_square(), "order of a non-square matrix");
    assert!(x.abs_det().is_one(), "matrix is not invertible over Z");
    if x.rows() == 0 {
        return crate::fgab::ElementOrder::Finite(BigInt::one());
    }
    let cap = minkowski_bound(x.rows());
    match matrix_order_capped(x, &cap) {
        Some(k) => crate::fgab::ElementOrder::Finite(k),
        None => crate::fgab::ElementOrder::Infinite,
    }
}

/// Evaluates a generator word to a matrix (empty word = identity).
pub fn evaluate_word(g: &MatGroupGens, word: &[usize]) -> IntegerMatrix {
    let mut acc = IntegerMatrix::identity(g.n);
    for &i in word {
        acc = acc.mul(&g.generators[i]);
    }
    acc
}

/// Re-checks a finiteness result against its generators: finite closures
/// must be closed under multiplication with the stated order; infinite
/// witnesses must replay (an infinite-order element word, or the same cap
/// overflow).
pub fn replay(g: &MatGroupGens, result: &FinitenessResult) -> bool {
    match result {
        FinitenessResult::Finite { order, elements } => {
            if elements.len() != *order {
                return false;
            }
            let keys: std::collections::HashSet<Vec<BigInt>> = elements.iter().map(key).collect();
            if keys.len() != *order {
                return false;
            }
            elements.iter().all(|e| {
                g.generators.iter().all(|gen| keys.contains(&key(&e.mul(gen))))
            })
        }
        FinitenessResult::Infinite { witness } => match witness {
            InfiniteWitness::InfiniteOrderElement { word } => {
                let m = evaluate_word(g, word);
                matrix_order(&m) == crate::fgab::ElementOrder::Infinite
            }
            InfiniteWitness::ClosureExceededCap { .. } => !is_finite(g).is_finite(),
        },
    }
}
