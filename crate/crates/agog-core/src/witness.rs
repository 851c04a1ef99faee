//! Witness homomorphisms `G -> Z^n ⋊ Q` with `Q` a finite subgroup of
//! GL(n,Z), their construction from near linear independence data, the
//! built-in lattice witnesses for the one-parameter double-HNN family, and
//! exact verification.
//!
//! Translations are rational vectors and the finite part acts by integer
//! matrices, so every check below is exact. The semidirect product law is
//! `(u, p)(v, q) = (u + p v, p q)`.

use crate::fgab::{AbElement, ElementOrder};
use crate::graph::{GraphOfGroups, SpanningTree, TreeAbelianization};
use crate::linalg::{
    integer_kernel_of_rational, qvec_from_int, rational_rank, rational_solve_square,
    IntegerMatrix, Lattice, QVec,
};
use crate::matgrp::{self, FinitenessResult, MatGroupGens};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness dimension mismatch: {0}")]
    Dimension(String),
    #[error("witness has no images for vertex `{0}`")]
    MissingVertex(String),
    #[error("witness has no image for stable letter `{0}`")]
    MissingLetter(String),
    #[error("vertex `{id}` needs {want} generator images, witness has {got}")]
    BadGeneratorCount { id: String, want: usize, got: usize },
    #[error("subset is not a near-linear-independence certificate: {0}")]
    NotNliCertificate(String),
    #[error("built-in witness exists only for |k| <= 1, got {0}")]
    UnsupportedK(i64),
    #[error("off-tree edge `{0}` does not have a cyclic edge group")]
    EdgeGroupNotCyclic(String),
    #[error(transparent)]
    MatGrp(#[from] crate::matgrp::MatGrpError),
}

/// The image of one generator or stable letter: a rational translation and
/// a finite part in GL(n,Z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryImage {
    pub translation: QVec,
    pub q_part: IntegerMatrix,
}

impl IsometryImage {
    pub fn translation_only(v: QVec, n: usize) -> Self {
        IsometryImage {
            translation: v,
            q_part: IntegerMatrix::identity(n),
        }
    }

    pub fn rotation_only(q: IntegerMatrix) -> Self {
        let n = q.rows();
        IsometryImage {
            translation: vec![BigRational::zero(); n],
            q_part: q,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::rotation_only(IntegerMatrix::identity(n))
    }

    /// `(u, p)(v, q) = (u + p v, p q)`.
    pub fn compose(&self, other: &IsometryImage) -> IsometryImage {
        let moved = apply_int_matrix(&self.q_part, &other.translation);
        let translation = self
            .translation
            .iter()
            .zip(moved.iter())
            .map(|(a, b)| a + b)
            .collect();
        IsometryImage {
            translation,
            q_part: self.q_part.mul(&other.q_part),
        }
    }

    /// `(u, p)^-1 = (-p^-1 u, p^-1)`; requires `p` unimodular.
    pub fn inverse(&self) -> IsometryImage {
        let p_inv = self.q_part.inverse_unimodular();
        let moved = apply_int_matrix(&p_inv, &self.translation);
        IsometryImage {
            translation: moved.into_iter().map(|x| -x).collect(),
            q_part: p_inv,
        }
    }

    pub fn pow(&self, exponent: &BigInt) -> IsometryImage {
        let n = self.q_part.rows();
        let (base, mut e) = match exponent.sign() {
            Sign::Minus => (self.inverse(), exponent.abs()),
            _ => (self.clone(), exponent.clone()),
        };
        let mut acc = IsometryImage::identity(n);
        let mut sq = base;
        while e > BigInt::zero() {
            if (&e % 2u8) == BigInt::one() {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > BigInt::zero() {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|x| x.is_zero()) && self.q_part.is_identity()
    }
}

fn apply_int_matrix(m: &IntegerMatrix, v: &QVec) -> QVec {
    assert_eq!(m.cols(), v.len());
    (0..m.rows())
        .map(|i| {
            let mut acc = BigRational::zero();
            for k in 0..m.cols() {
                acc += BigRational::from_integer(m.at(i, k).clone()) * &v[k];
            }
            acc
        })
        .collect()
}

/// A candidate homomorphism `G -> Z^n ⋊ Q`, keyed by vertex ids and by the
/// pair ids of positive off-tree edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanWitness {
    pub n: usize,
    pub q_generators: Vec<IntegerMatrix>,
    pub vertex_images: BTreeMap<String, Vec<IsometryImage>>,
    pub letter_images: BTreeMap<String, IsometryImage>,
}

impl EuclideanWitness {
    /// Image of a vertex-group element: the generator images raised to the
    /// element's canonical coordinates, in generator order.
    pub fn vertex_element_image(&self, vertex_id: &str, elem: &AbElement) -> IsometryImage {
        let images = &self.vertex_images[vertex_id];
        let mut acc = IsometryImage::identity(self.n);
        for (img, c) in images.iter().zip(elem.lift().iter()) {
            if !c.is_zero() {
                acc = acc.compose(&img.pow(c));
            }
        }
        acc
    }

    /// Evaluates a word syllable by syllable.
    pub fn evaluate_word(&self, gog: &GraphOfGroups, word: &crate::britton::Word) -> IsometryImage {
        let graph = gog.graph();
        let mut acc = IsometryImage::identity(self.n);
        for syll in &word.syllables {
            let factor = match syll {
                crate::britton::Syllable::Vertex { vertex, elem } => {
                    self.vertex_element_image(graph.vertex_id(*vertex), elem)
                }
                crate::britton::Syllable::Stable { edge, exponent } => {
                    let id = graph.pair_id_of(*edge);
                    self.letter_images[id].pow(&BigInt::from(*exponent))
                }
            };
            acc = acc.compose(&factor);
        }
        acc
    }

    fn all_q_parts(&self) -> Vec<&IntegerMatrix> {
        let mut out: Vec<&IntegerMatrix> = Vec::new();
        for imgs in self.vertex_images.values() {
            out.extend(imgs.iter().map(|i| &i.q_part));
        }
        out.extend(self.letter_images.values().map(|i| &i.q_part));
        out
    }
}

/// Per-vertex injectivity verdict with kernel evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityStatus {
    pub injective: bool,
    pub injective_on_free_part: bool,
    /// Lift coordinates of kernel elements (reduced, nonzero) when not
    /// injective.
    pub kernel_generators: Vec<Vec<BigInt>>,
}

/// Outcome of every verification stage; `passes` requires all of them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub relation_failures: Vec<String>,
    pub q_finite: bool,
    pub q_parts_in_group: bool,
    pub vertex_injectivity: Vec<(String, InjectivityStatus)>,
}

impl VerificationReport {
    pub fn relations_ok(&self) -> bool {
        self.relation_failures.is_empty()
    }

    pub fn all_injective(&self) -> bool {
        !self.vertex_injectivity.is_empty() && self.vertex_injectivity.iter().all(|(_, s)| s.injective)
    }

    pub fn injective_on_free_parts(&self) -> bool {
        !self.vertex_injectivity.is_empty()
            && self.vertex_injectivity.iter().all(|(_, s)| s.injective_on_free_part)
    }

    pub fn passes(&self) -> bool {
        self.relations_ok() && self.q_finite && self.q_parts_in_group && self.all_injective()
    }

    /// Pass with injectivity required only on the free parts of the vertex
    /// groups (what a construction that sends torsion to the identity can
    /// deliver).
    pub fn passes_on_free_parts(&self) -> bool {
        self.relations_ok() && self.q_finite && self.q_parts_in_group && self.injective_on_free_parts()
    }
}

const ORDER_ENUM_CAP: u64 = 200_000;

/// Verifies a witness against a graph of groups and spanning tree:
///
/// (a) vertex relations (generators commute, torsion orders are honored),
/// (b) edge relations (`φ(α_e(c)) = φ(ω_e(c))` for tree edges and
///     `φ(t_e) φ(ω_e(c)) φ(t_e)^-1 = φ(α_e(c))` for off-tree edges),
/// (c) finiteness of `<q_generators>` and membership of every q-part,
/// (d) injectivity on each vertex group, via the exponent lattice
///     `Λ = ker(Z^m -> Q)` and the translation homomorphism on it.
pub fn verify_witness(
    gog: &GraphOfGroups,
    tree: &SpanningTree,
    w: &EuclideanWitness,
) -> Result<VerificationReport, WitnessError> {
    let graph = gog.graph();
    let n = w.n;
    let mut report = VerificationReport::default();

    // Structural consistency is a precondition, not a reported failure.
    for v in 0..graph.vertex_count() {
        let id = graph.vertex_id(v);
        let images = w
            .vertex_images
            .get(id)
            .ok_or_else(|| WitnessError::MissingVertex(id.to_string()))?;
        if images.len() != gog.vertex_group(v).gen_count() {
            return Err(WitnessError::BadGeneratorCount {
                id: id.to_string(),
                want: gog.vertex_group(v).gen_count(),
                got: images.len(),
            });
        }
    }
    for e in tree.offtree_positive(graph) {
        let id = graph.pair_id_of(e);
        if !w.letter_images.contains_key(id) {
            return Err(WitnessError::MissingLetter(id.to_string()));
        }
    }
    for q in w.q_generators.iter().chain(w.all_q_parts()) {
        if q.rows() != n || q.cols() != n {
            return Err(WitnessError::Dimension(format!(
                "q matrix is {}x{}, expected {n}x{n}",
                q.rows(),
                q.cols()
            )));
        }
    }
    for imgs in w.vertex_images.values() {
        for img in imgs {
            if img.translation.len() != n {
                return Err(WitnessError::Dimension("translation length".into()));
            }
        }
    }
    for img in w.letter_images.values() {
        if img.translation.len() != n {
            return Err(WitnessError::Dimension("translation length".into()));
        }
    }

    // Invertibility over Z underlies every later computation.
    let mut all_unimodular = true;
    for q in w.q_generators.iter().chain(w.all_q_parts()) {
        if !q.abs_det().is_one() {
            report
                .relation_failures
                .push("a finite-part matrix has |det| != 1".into());
            all_unimodular = false;
            break;
        }
    }
    if !all_unimodular {
        return Ok(report);
    }

    // (a) vertex-group relations.
    for v in 0..graph.vertex_count() {
        let id = graph.vertex_id(v);
        let images = &w.vertex_images[id];
        let vg = gog.vertex_group(v);
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if images[i].compose(&images[j]) != images[j].compose(&images[i]) {
                    report.relation_failures.push(format!(
                        "vertex {id}: generator images {i} and {j} do not commute"
                    ));
                }
            }
        }
        for (t, d) in vg.torsion().iter().enumerate() {
            let idx = vg.free_rank() + t;
            if !images[idx].pow(d).is_identity() {
                report.relation_failures.push(format!(
                    "vertex {id}: torsion generator {idx} image is not killed by {d}"
                ));
            }
        }
    }

    // (b) edge relations.
    for e in (0..graph.edge_count()).filter(|&e| graph.is_positive(e)) {
        let edge_group = gog.edge_group(e);
        let origin_id = graph.vertex_id(graph.origin(e));
        let terminus_id = graph.vertex_id(graph.terminus(e));
        for i in 0..edge_group.gen_count() {
            let c = edge_group.generator(i);
            let alpha_img = w.vertex_element_image(origin_id, &gog.alpha(e).apply(&c));
            let omega_img = w.vertex_element_image(terminus_id, &gog.omega(e).apply(&c));
            if tree.contains(e) {
                if alpha_img != omega_img {
                    report.relation_failures.push(format!(
                        "tree edge {}: φ(α(c_{i})) != φ(ω(c_{i}))",
                        graph.pair_id_of(e)
                    ));
                }
            } else {
                let t_e = &w.letter_images[graph.pair_id_of(e)];
                let conjugated = t_e.compose(&omega_img).compose(&t_e.inverse());
                if conjugated != alpha_img {
                    report.relation_failures.push(format!(
                        "edge {}: φ(t)φ(ω(c_{i}))φ(t)^-1 != φ(α(c_{i}))",
                        graph.pair_id_of(e)
                    ));
                }
            }
        }
    }

    // (c) Q-finiteness and q-part membership.
    let gens = MatGroupGens::new(n, w.q_generators.clone())?;
    match matgrp::is_finite(&gens) {
        FinitenessResult::Finite { elements, .. } => {
            report.q_finite = true;
            report.q_parts_in_group = w
                .all_q_parts()
                .into_iter()
                .all(|p| elements.iter().any(|e| e == p));
        }
        FinitenessResult::Infinite { .. } => {
            report.q_finite = false;
            report.q_parts_in_group = false;
        }
    }

    // (d) injectivity, meaningful only when the witness is a homomorphism
    // into a genuine finite extension.
    if report.relations_ok() && report.q_finite && report.q_parts_in_group {
        for v in 0..graph.vertex_count() {
            let id = graph.vertex_id(v);
            let status = vertex_injectivity(gog, w, v);
            report.vertex_injectivity.push((id.to_string(), status));
        }
    }

    Ok(report)
}

/// Kernel of the restriction of the witness to one vertex group.
///
/// The exponent lattice `Λ = {x in Z^m : Π p_i^{x_i} = 1}` is computed by
/// enumerating residues modulo the generator orders; on `Λ` the q-part is
/// trivial, so the translation map is additive and its integer kernel `K`
/// (pushed through `Λ`) is the witness kernel in exponent coordinates. The
/// restriction is injective iff `K` lies in the relation lattice of the
/// vertex group.
fn vertex_injectivity(gog: &GraphOfGroups, w: &EuclideanWitness, v: usize) -> InjectivityStatus {
    let vg = gog.vertex_group(v);
    let m = vg.gen_count();
    let id = gog.graph().vertex_id(v);
    let images = &w.vertex_images[id];

    if m == 0 {
        return InjectivityStatus {
            injective: true,
            injective_on_free_part: true,
            kernel_generators: Vec::new(),
        };
    }

    let mut orders = Vec::with_capacity(m);
    let mut product: u64 = 1;
    for img in images {
        match matgrp::matrix_order(&img.q_part) {
            ElementOrder::Finite(k) => {
                let k64 = u64::try_from(&k).unwrap_or(u64::MAX);
                product = product.saturating_mul(k64);
                orders.push(k);
            }
            ElementOrder::Infinite => {
                // Unreachable once (c) passed; refuse to certify.
                return InjectivityStatus {
                    injective: false,
                    injective_on_free_part: false,
                    kernel_generators: Vec::new(),
                };
            }
        }
    }
    if product > ORDER_ENUM_CAP {
        // Too large to enumerate exactly; refuse to certify injectivity.
        return InjectivityStatus {
            injective: false,
            injective_on_free_part: false,
            kernel_generators: Vec::new(),
        };
    }

    // Λ generators: o_i e_i plus all residue vectors with trivial q-part.
    let mut lambda_gens: Vec<Vec<BigInt>> = Vec::new();
    for (i, o) in orders.iter().enumerate() {
        let mut col = vec![BigInt::zero(); m];
        col[i] = o.clone();
        lambda_gens.push(col);
    }
    let mut residue = vec![BigInt::zero(); m];
    loop {
        // Advance odometer; the all-zero residue is skipped as trivial.
        let mut pos = 0;
        loop {
            if pos == m {
                break;
            }
            residue[pos] += 1;
            if residue[pos] < orders[pos] {
                break;
            }
            residue[pos] = BigInt::zero();
            pos += 1;
        }
        if pos == m {
            break;
        }
        let mut q = IntegerMatrix::identity(w.n);
        for (img, x) in images.iter().zip(residue.iter()) {
            if !x.is_zero() {
                q = q.mul(&img.q_part.clone().pow_int(x));
            }
        }
        if q.is_identity() {
            lambda_gens.push(residue.clone());
        }
    }
    let lambda = Lattice::from_generators(m, &lambda_gens);

    // Translation map on a basis of Λ.
    let mut rows: Vec<QVec> = vec![Vec::new(); w.n];
    for col in lambda.basis_columns() {
        let elem = vg.element(&col).expect("coordinate count matches");
        let iso = w.vertex_element_image(id, &elem);
        for (r, val) in iso.translation.iter().enumerate() {
            rows[r].push(val.clone());
        }
    }
    let kernel_in_lambda = if lambda.rank() == 0 {
        Lattice::zero(0)
    } else {
        integer_kernel_of_rational(&rows)
    };
    let kernel_gens: Vec<Vec<BigInt>> = kernel_in_lambda
        .basis_columns()
        .iter()
        .map(|y| lambda.basis().mul_vec(y))
        .collect();
    let kernel = Lattice::from_generators(m, &kernel_gens);

    let relations = vg.relation_lattice();
    let injective = kernel.is_subset_of(&relations);

    let free_axes: Vec<Vec<BigInt>> = (0..vg.free_rank())
        .map(|i| {
            let mut col = vec![BigInt::zero(); m];
            col[i] = BigInt::one();
            col
        })
        .collect();
    let free_lattice = Lattice::from_generators(m, &free_axes);
    let injective_on_free_part = kernel.intersect(&free_lattice).is_zero();

    let kernel_generators = if injective {
        Vec::new()
    } else {
        kernel
            .basis_columns()
            .iter()
            .map(|c| {
                let reduced = vg.element(c).expect("coordinate count matches");
                reduced.lift()
            })
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect()
    };

    InjectivityStatus {
        injective,
        injective_on_free_part,
        kernel_generators,
    }
}

impl IntegerMatrix {
    /// Integer power with BigInt exponent (negative allowed for unimodular
    /// matrices).
    pub fn pow_int(&self, e: &BigInt) -> IntegerMatrix {
        let (base, mut k) = if e.is_negative() {
            (self.inverse_unimodular(), e.abs())
        } else {
            (self.clone(), e.clone())
        };
        let mut acc = IntegerMatrix::identity(self.rows());
        let mut sq = base;
        while k > BigInt::zero() {
            if (&k % 2u8) == BigInt::one() {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > BigInt::zero() {
                sq = sq.mul(&sq);
            }
        }
        acc
    }
}

/// The canonical off-tree vector list for near linear independence: for
/// each off-tree half-edge in index order, the free part of the image of
/// `α_e(c_e)` in the tree abelianization, as a rational vector. `None` when
/// some off-tree edge group is not cyclic on one generator.
pub fn offtree_free_vectors(ab: &TreeAbelianization) -> Option<Vec<(usize, QVec)>> {
    let mut out = Vec::new();
    for entry in ab.offtree() {
        if entry.images.len() != 1 {
            return None;
        }
        out.push((entry.edge, qvec_from_int(entry.images[0].free_part())));
    }
    Some(out)
}

/// Builds a witness from a near-linear-independence certificate.
///
/// The J-indexed vectors are completed greedily to a basis of `Q^n` by
/// standard basis vectors; vertex generators map to the rational
/// coordinates of their abelianized images in that basis (torsion
/// generators map to the identity), and each stable letter maps to the
/// signed permutation interchanging `ε(a) e_{j(a)}` with `ε(b) e_{j(b)}`.
/// The result always satisfies the relation and finiteness checks, and is
/// injective on the free part of every vertex group.
pub fn build_nli_witness(
    gog: &GraphOfGroups,
    ab: &TreeAbelianization,
    j_subset: &[usize],
) -> Result<EuclideanWitness, WitnessError> {
    let graph = gog.graph();
    let vectors = offtree_free_vectors(ab).ok_or_else(|| {
        WitnessError::EdgeGroupNotCyclic("some off-tree edge group is not cyclic".into())
    })?;
    let n = ab.group().free_rank();

    // Re-validate that J certifies near linear independence.
    for &j in j_subset {
        if j >= vectors.len() {
            return Err(WitnessError::NotNliCertificate(format!("index {j} out of range")));
        }
    }
    let j_vecs: Vec<QVec> = j_subset.iter().map(|&j| vectors[j].1.clone()).collect();
    if rational_rank(&j_vecs) != j_subset.len() {
        return Err(WitnessError::NotNliCertificate(
            "J-indexed vectors are not linearly independent".into(),
        ));
    }
    let mut assignment: Vec<(usize, i8)> = Vec::with_capacity(vectors.len());
    for (i, (_, v)) in vectors.iter().enumerate() {
        if v.iter().all(|x| x.is_zero()) {
            return Err(WitnessError::NotNliCertificate(format!(
                "vector {i} is zero"
            )));
        }
        let mut found = None;
        for (jpos, &j) in j_subset.iter().enumerate() {
            let w = &vectors[j].1;
            if v == w {
                found = Some((jpos, 1i8));
                break;
            }
            if v.iter().zip(w.iter()).all(|(a, b)| *a == -b) {
                found = Some((jpos, -1i8));
                break;
            }
        }
        match found {
            Some(f) => assignment.push(f),
            None => {
                return Err(WitnessError::NotNliCertificate(format!(
                    "vector {i} is not ±(a J vector)"
                )))
            }
        }
    }

    // Complete to a basis of Q^n with standard basis vectors.
    let mut basis: Vec<QVec> = j_vecs.clone();
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        basis.push(e);
        if rational_rank(&basis) != basis.len() {
            basis.pop();
        }
    }
    assert_eq!(basis.len(), n, "completed set must be a basis");
    // Row matrix of the basis-change system `P x = w` (columns are basis
    // vectors).
    let p_rows: Vec<QVec> = (0..n)
        .map(|r| (0..n).map(|c| basis[c][r].clone()).collect())
        .collect();

    let mut vertex_images = BTreeMap::new();
    for v in 0..graph.vertex_count() {
        let vg = gog.vertex_group(v);
        let mut images = Vec::with_capacity(vg.gen_count());
        for g in 0..vg.gen_count() {
            if g < vg.free_rank() {
                let a_img = ab.vertex_map(v).apply(&vg.generator(g));
                let coords = rational_solve_square(&p_rows, &qvec_from_int(a_img.free_part()))
                    .expect("completed basis is invertible");
                images.push(IsometryImage::translation_only(coords, n));
            } else {
                images.push(IsometryImage::identity(n));
            }
        }
        vertex_images.insert(graph.vertex_id(v).to_string(), images);
    }

    let mut letter_images = BTreeMap::new();
    let mut q_generators: Vec<IntegerMatrix> = Vec::new();
    for (pos, (edge, _)) in vectors.iter().enumerate() {
        if !graph.is_positive(*edge) {
            continue;
        }
        // Positive edge at list position `pos`; its inverse follows at
        // `pos + 1`. The letter must conjugate ψ(ω-image) to ψ(α-image).
        let (j_b, eps_b) = assignment[pos];
        let (j_a, eps_a) = assignment[pos + 1];
        let sign = BigInt::from((eps_a * eps_b) as i64);
        let mut q = IntegerMatrix::identity(n);
        if j_a == j_b {
            q.set(j_a, j_a, sign);
        } else {
            q.set(j_a, j_a, BigInt::zero());
            q.set(j_b, j_b, BigInt::zero());
            q.set(j_b, j_a, sign.clone());
            q.set(j_a, j_b, sign);
        }
        if !q_generators.contains(&q) {
            q_generators.push(q.clone());
        }
        letter_images.insert(
            graph.pair_id_of(*edge).to_string(),
            IsometryImage::rotation_only(q),
        );
    }
    if q_generators.is_empty() {
        q_generators.push(IntegerMatrix::identity(n));
    }

    Ok(EuclideanWitness {
        n,
        q_generators,
        vertex_images,
        letter_images,
    })
}

/// The explicit lattice witnesses for the double HNN-extension of `Z^2`
/// with relations `s a s^-1 = b`, `t b t^-1 = a b^k`, `|k| <= 1`, keyed to
/// the given vertex and loop ids.
///
/// For `k = 0` the finite part is generated by the coordinate swap; for
/// `k = ±1` it is the dihedral group of order 12 written in the hexagonal
/// lattice basis, where the rotation by π/3 is `[[0,-1],[1,1]]` for
/// `k = -1` and `[[1,-1],[1,0]]` for `k = 1`.
pub fn builtin_gk_witness_for(
    k: i64,
    vertex_id: &str,
    s_id: &str,
    t_id: &str,
) -> Result<EuclideanWitness, WitnessError> {
    let swap = IntegerMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]);
    let (q_generators, s_img, t_img) = match k {
        0 => (vec![swap.clone()], swap.clone(), swap.clone()),
        -1 => {
            let r = IntegerMatrix::from_rows_i64(&[vec![0, -1], vec![1, 1]]);
            let t = r.pow_int(&BigInt::from(4));
            (vec![r, swap.clone()], swap.clone(), t)
        }
        1 => {
            let r = IntegerMatrix::from_rows_i64(&[vec![1, -1], vec![1, 0]]);
            let d = IntegerMatrix::from_rows_i64(&[vec![1, 0], vec![1, -1]]);
            let s = d.mul(&r.pow_int(&BigInt::from(-1)));
            let t = r.pow_int(&BigInt::from(-1));
            (vec![r, d], s, t)
        }
        other => return Err(WitnessError::UnsupportedK(other)),
    };

    let e1 = vec![BigRational::one(), BigRational::zero()];
    let e2 = vec![BigRational::zero(), BigRational::one()];
    let mut vertex_images = BTreeMap::new();
    vertex_images.insert(
        vertex_id.to_string(),
        vec![
            IsometryImage::translation_only(e1, 2),
            IsometryImage::translation_only(e2, 2),
        ],
    );
    let mut letter_images = BTreeMap::new();
    letter_images.insert(s_id.to_string(), IsometryImage::rotation_only(s_img));
    letter_images.insert(t_id.to_string(), IsometryImage::rotation_only(t_img));

    Ok(EuclideanWitness {
        n: 2,
        q_generators,
        vertex_images,
        letter_images,
    })
}

/// [`builtin_gk_witness_for`] with the canonical family encoding ids.
pub fn builtin_gk_witness(k: i64) -> Result<EuclideanWitness, WitnessError> {
    builtin_gk_witness_for(k, "v", "s", "t")
}
