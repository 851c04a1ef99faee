//! The Gram-form obstruction.
//!
//! Any homomorphism to a Euclidean-by-finite group that is injective on
//! every vertex group induces, by averaging the inner product over the
//! finite part and evaluating on |Q|-th powers, a symmetric bilinear form
//! `S` on the free part `F ⊗ Q` of the tree abelianization such that
//!
//! * `q_S(image of α_e(c)) = q_S(image of ω_e(c))` for every off-tree edge
//!   `e` and edge-group generator `c` (conjugation by the letter is an
//!   isometry), and
//! * `S` is positive definite on the span of each vertex group's image
//!   (injectivity on the vertex group survives the power map).
//!
//! If no such `S` exists the group cannot have the witness property, which
//! refutes (VRC). Feasibility is decided exactly for `dim F <= 2` (the
//! solution space of the linear constraints is analysed in closed form);
//! for higher rank only rational sampling is attempted, which can certify
//! feasibility but never infeasibility, keeping the obstruction sound.

use crate::graph::TreeAbelianization;
use crate::linalg::{rational_nullspace, rational_rank, QVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Outcome of the feasibility analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GramOutcome {
    /// Proven: no admissible form exists. Refutes (VRC).
    Infeasible { reason: String },
    /// An admissible form exists (closed form or sampled); no obstruction.
    Feasible { note: String },
    /// Rank >= 3 and sampling found nothing; no conclusion either way.
    Inconclusive { note: String },
}

impl GramOutcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, GramOutcome::Infeasible { .. })
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Index of the variable `s_{ij}` (`i <= j`) among the `d(d+1)/2` unknowns.
fn var_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < d);
    // Row-major over the upper triangle.
    i * d - i * (i + 1) / 2 + j
}

/// The linear functional `S -> q_S(w)` as a coefficient vector.
fn quadratic_functional(d: usize, w: &[BigRational]) -> QVec {
    let mut out = vec![BigRational::zero(); d * (d + 1) / 2];
    for i in 0..d {
        for j in i..d {
            let coeff = if i == j {
                &w[i] * &w[j]
            } else {
                q(2) * &w[i] * &w[j]
            };
            out[var_index(d, i, j)] = coeff;
        }
    }
    out
}

/// Symmetric `d x d` matrix from a variable vector.
fn form_matrix(d: usize, vars: &[BigRational]) -> Vec<QVec> {
    let mut m = vec![vec![BigRational::zero(); d]; d];
    for i in 0..d {
        for j in i..d {
            let v = vars[var_index(d, i, j)].clone();
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    m
}

fn det2(m: &[QVec]) -> BigRational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// Determinant by fraction-free Gaussian elimination (small matrices).
fn determinant(m: &[QVec]) -> BigRational {
    let n = m.len();
    let mut a: Vec<QVec> = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        let inv = a[c][c].recip();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let sub = &f * &a[c][k];
                a[r][k] -= sub;
            }
        }
    }
    det
}

#[cfg(test)]
fn eval_quadratic(s: &[QVec], w: &[BigRational]) -> BigRational {
    let d = s.len();
    let mut acc = BigRational::zero();
    for i in 0..d {
        for j in 0..d {
            acc += &s[i][j] * &w[i] * &w[j];
        }
    }
    acc
}

/// Sylvester test for positive definiteness of `S` restricted to the span
/// of `basis` (leading principal minors of the restricted Gram matrix).
fn positive_definite_on(s: &[QVec], basis: &[QVec]) -> bool {
    let k = basis.len();
    let mut gram = vec![vec![BigRational::zero(); k]; k];
    for p in 0..k {
        for r in 0..k {
            let mut acc = BigRational::zero();
            for i in 0..s.len() {
                for j in 0..s.len() {
                    acc += &basis[p][i] * &s[i][j] * &basis[r][j];
                }
            }
            gram[p][r] = acc;
        }
    }
    for lead in 1..=k {
        let minor: Vec<QVec> = (0..lead).map(|i| gram[i][..lead].to_vec()).collect();
        if determinant(&minor) <= BigRational::zero() {
            return false;
        }
    }
    true
}

/// Strict homogeneous linear feasibility `∃λ: rows·λ > 0 componentwise`,
/// by Fourier–Motzkin elimination. An all-zero constraint reads `0 > 0`.
fn strict_system_feasible(rows: &[QVec]) -> bool {
    let nvars = rows.first().map_or(0, |r| r.len());
    let mut cons: Vec<QVec> = rows.to_vec();
    for var in (0..nvars).rev() {
        if cons.iter().any(|c| c.iter().all(|x| x.is_zero())) {
            return false;
        }
        let mut pos: Vec<QVec> = Vec::new();
        let mut neg: Vec<QVec> = Vec::new();
        let mut next: Vec<QVec> = Vec::new();
        for c in cons.drain(..) {
            if c[var].is_positive() {
                pos.push(c);
            } else if c[var].is_negative() {
                neg.push(c);
            } else {
                let mut t = c;
                t.truncate(var);
                next.push(t);
            }
        }
        // A positive-coefficient constraint alone is met by pushing λ_var
        // up, a negative one by pushing it down; only mixed pairs survive
        // as conditions on the remaining variables.
        for p in &pos {
            for n in &neg {
                let scale_p = -n[var].clone();
                let scale_n = p[var].clone();
                let row: QVec = (0..var)
                    .map(|i| &scale_p * &p[i] + &scale_n * &n[i])
                    .collect();
                next.push(row);
            }
        }
        cons = next;
    }
    !cons.iter().any(|c| c.iter().all(|x| x.is_zero()))
}

/// Builds the constraint data and decides feasibility.
pub fn gram_obstruction(ab: &TreeAbelianization) -> GramOutcome {
    let d = ab.group().free_rank();
    let nvars = d * (d + 1) / 2;

    // Vertex subspaces: spans of the free parts of the generator images.
    let mut vertex_spans: Vec<Vec<QVec>> = Vec::new();
    for map in ab.vertex_maps() {
        let mut vecs: Vec<QVec> = Vec::new();
        for img in map.images() {
            let fp: QVec = img
                .free_part()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            if fp.iter().any(|x| !x.is_zero()) {
                vecs.push(fp);
            }
        }
        // Reduce to an independent spanning subset, greedily.
        let mut basis: Vec<QVec> = Vec::new();
        for v in vecs {
            basis.push(v);
            if rational_rank(&basis) != basis.len() {
                basis.pop();
            }
        }
        vertex_spans.push(basis);
    }

    if d == 0 || vertex_spans.iter().all(|b| b.is_empty()) {
        return GramOutcome::Feasible {
            note: "all vertex images are torsion; no form needed".into(),
        };
    }

    // One homogeneous constraint per off-tree pair and edge generator:
    // q_S(α-image) - q_S(ω-image) = 0. Off-tree entries come in (e, ē)
    // pairs, the ē entry carrying the ω-side vector.
    let offtree = ab.offtree();
    let mut constraints: Vec<QVec> = Vec::new();
    let mut idx = 0;
    while idx + 1 < offtree.len() {
        let pos = &offtree[idx];
        let inv = &offtree[idx + 1];
        idx += 2;
        for (a_img, w_img) in pos.images.iter().zip(inv.images.iter()) {
            let u: QVec = a_img
                .free_part()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            let w: QVec = w_img
                .free_part()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            let fu = quadratic_functional(d, &u);
            let fw = quadratic_functional(d, &w);
            let row: QVec = fu.iter().zip(fw.iter()).map(|(a, b)| a - b).collect();
            if row.iter().any(|x| !x.is_zero()) {
                constraints.push(row);
            }
        }
    }

    // Solution space W of the constraints.
    let w_basis: Vec<QVec> = if constraints.is_empty() {
        (0..nvars)
            .map(|i| {
                let mut e = vec![BigRational::zero(); nvars];
                e[i] = BigRational::one();
                e
            })
            .collect()
    } else {
        rational_nullspace(&constraints)
    };

    if w_basis.is_empty() {
        return GramOutcome::Infeasible {
            reason: "isometry constraints force the form to vanish".into(),
        };
    }

    // Forced-null test, valid in any rank: if q_S(w) vanishes identically
    // on W for some nonzero vertex vector w, positive definiteness is
    // impossible.
    for (v, span) in vertex_spans.iter().enumerate() {
        for w in span {
            let functional = quadratic_functional(d, w);
            let vanishes = w_basis.iter().all(|b| {
                functional
                    .iter()
                    .zip(b.iter())
                    .map(|(a, x)| a * x)
                    .sum::<BigRational>()
                    .is_zero()
            });
            if vanishes {
                return GramOutcome::Infeasible {
                    reason: format!(
                        "constraints force q_S = 0 on a nonzero image vector of vertex {v}"
                    ),
                };
            }
        }
    }

    match d {
        1 => GramOutcome::Feasible {
            note: "rank 1: a positive multiple satisfies all constraints".into(),
        },
        2 => decide_rank_two(&vertex_spans, &w_basis),
        _ => sample_higher_rank(d, &vertex_spans, &w_basis),
    }
}

/// Exact feasibility for `d = 2`.
fn decide_rank_two(vertex_spans: &[Vec<QVec>], w_basis: &[QVec]) -> GramOutcome {
    let d = 2;
    let need_full = vertex_spans.iter().any(|b| b.len() == 2);
    let mats: Vec<Vec<QVec>> = w_basis.iter().map(|b| form_matrix(d, b)).collect();

    if need_full {
        // Positive definiteness somewhere on W is equivalent to det S > 0
        // somewhere on W: definite forms come in ± pairs and the sign flip
        // stays inside W (it is a linear space).
        let feasible = match mats.len() {
            1 => det2(&mats[0]).is_positive(),
            2 => {
                // det(λ1 B1 + λ2 B2) = a λ1² + b λ1 λ2 + c λ2².
                let a = det2(&mats[0]);
                let c = det2(&mats[1]);
                let sum: Vec<QVec> = (0..2)
                    .map(|i| (0..2).map(|j| &mats[0][i][j] + &mats[1][i][j]).collect())
                    .collect();
                let b = det2(&sum) - &a - &c;
                // The binary form takes a positive value iff it is not
                // negative semidefinite.
                let nsd = !a.is_positive()
                    && !c.is_positive()
                    && (q(4) * &a * &c - &b * &b) >= BigRational::zero();
                !nsd
            }
            _ => true, // W = Sym_2 contains the identity.
        };
        if feasible {
            GramOutcome::Feasible {
                note: "rank 2: solution space carries a definite form".into(),
            }
        } else {
            GramOutcome::Infeasible {
                reason: "rank 2: no positive-definite form satisfies the isometry constraints"
                    .into(),
            }
        }
    } else {
        // Only 1-dimensional vertex spans: strict linear conditions
        // q_S(w_v) > 0 over the coordinates of W.
        let mut rows: Vec<QVec> = Vec::new();
        for span in vertex_spans {
            for w in span {
                let functional = quadratic_functional(d, w);
                let row: QVec = w_basis
                    .iter()
                    .map(|b| {
                        functional
                            .iter()
                            .zip(b.iter())
                            .map(|(a, x)| a * x)
                            .sum::<BigRational>()
                    })
                    .collect();
                rows.push(row);
            }
        }
        if strict_system_feasible(&rows) {
            GramOutcome::Feasible {
                note: "rank 2: linear positivity system is satisfiable".into(),
            }
        } else {
            GramOutcome::Infeasible {
                reason: "rank 2: positivity on the vertex lines is unsatisfiable".into(),
            }
        }
    }
}

/// Rational sampling for `d >= 3`: can only return Feasible or
/// Inconclusive.
fn sample_higher_rank(d: usize, vertex_spans: &[Vec<QVec>], w_basis: &[QVec]) -> GramOutcome {
    let dim = w_basis.len();
    let coeffs: [i64; 5] = [0, 1, -1, 2, -2];
    let mut counter = vec![0usize; dim];
    let sample_cap = 100_000usize;
    let mut tried = 0usize;
    loop {
        // Skip the all-zero sample.
        if counter.iter().any(|&c| c != 0) {
            let mut vars = vec![BigRational::zero(); d * (d + 1) / 2];
            for (ci, &c) in counter.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (vi, x) in w_basis[ci].iter().enumerate() {
                    vars[vi] += q(coeffs[c]) * x;
                }
            }
            let s = form_matrix(d, &vars);
            if vertex_spans
                .iter()
                .all(|span| span.is_empty() || positive_definite_on(&s, span))
            {
                return GramOutcome::Feasible {
                    note: format!("rank {d}: sampled form is positive definite on all vertex spans"),
                };
            }
            tried += 1;
            if tried >= sample_cap {
                break;
            }
        }
        // Odometer over the coefficient grid.
        let mut pos = 0;
        loop {
            if pos == dim {
                return GramOutcome::Inconclusive {
                    note: format!("rank {d}: sampling found no admissible form"),
                };
            }
            counter[pos] += 1;
            if counter[pos] < coeffs.len() {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
    GramOutcome::Inconclusive {
        note: format!("rank {d}: sampling budget exhausted"),
    }
}
