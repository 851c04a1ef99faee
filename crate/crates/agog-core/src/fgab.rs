//! Finitely generated abelian groups in canonical form, their elements and
//! homomorphisms.
//!
//! A group is `Z^r x Z/d_1 x ... x Z/d_k` with `d_1 | d_2 | ... | d_k` and
//! every `d_i >= 2`; two groups are equal iff their `(r, torsion)` data
//! agree. Elements carry their group and keep torsion coordinates reduced.
//!
//! Every subgroup question is answered by lifting to the presentation
//! `Z^{r+k}` modulo the relation lattice generated by `d_i e_{r+i}` and
//! delegating to the exact lattice arithmetic in [`crate::linalg`].

use crate::linalg::{kernel, solve, IntegerMatrix, Lattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FgabError {
    #[error("invariant factors must satisfy d_i >= 2 and d_i | d_{{i+1}}, got {0:?}")]
    BadInvariantFactors(Vec<BigInt>),
    #[error("element has {got} coordinates, group needs {want}")]
    BadCoordinateCount { want: usize, got: usize },
    #[error("homomorphism needs {want} generator images, got {got}")]
    BadImageCount { want: usize, got: usize },
    #[error("image of torsion generator {index} is not killed by its order")]
    NotWellDefined { index: usize },
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("homomorphism is not bijective")]
    NotBijective,
}

/// A finitely generated abelian group in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, FgabError> {
        let two = BigInt::from(2);
        for (i, d) in torsion.iter().enumerate() {
            if d < &two {
                return Err(FgabError::BadInvariantFactors(torsion.clone()));
            }
            if i + 1 < torsion.len() && !(&torsion[i + 1] % d).is_zero() {
                return Err(FgabError::BadInvariantFactors(torsion.clone()));
            }
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: u64) -> Self {
        assert!(order >= 2);
        FgAbGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(order)],
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn gen_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.gen_count() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn zero(&self) -> AbElement {
        AbElement {
            group: self.clone(),
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    /// The `i`-th canonical generator (free generators first, then torsion).
    pub fn generator(&self, i: usize) -> AbElement {
        assert!(i < self.gen_count());
        let mut coords = vec![BigInt::zero(); self.gen_count()];
        coords[i] = BigInt::one();
        self.element(&coords).expect("generator coordinates are valid")
    }

    /// Element from a full coordinate vector (free first, then torsion);
    /// torsion coordinates are reduced modulo their invariant factor.
    pub fn element(&self, coords: &[BigInt]) -> Result<AbElement, FgabError> {
        if coords.len() != self.gen_count() {
            return Err(FgabError::BadCoordinateCount {
                want: self.gen_count(),
                got: coords.len(),
            });
        }
        let free = coords[..self.free_rank].to_vec();
        let torsion = coords[self.free_rank..]
            .iter()
            .zip(self.torsion.iter())
            .map(|(t, d)| t.mod_floor(d))
            .collect();
        Ok(AbElement {
            group: self.clone(),
            free,
            torsion,
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<AbElement, FgabError> {
        let coords: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        self.element(&coords)
    }

    /// Columns `d_i * e_{r+i}` spanning the relation lattice of the lifted
    /// presentation `Z^{r+k} -> self`.
    pub fn relation_columns(&self) -> Vec<Vec<BigInt>> {
        let n = self.gen_count();
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut col = vec![BigInt::zero(); n];
                col[self.free_rank + i] = d.clone();
                col
            })
            .collect()
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_generators(self.gen_count(), &self.relation_columns())
    }

    pub fn identity_hom(&self) -> AbHom {
        let images = (0..self.gen_count()).map(|i| self.generator(i)).collect();
        AbHom::new(self.clone(), self.clone(), images).expect("identity is well defined")
    }

    /// Order of the whole group: the product of the invariant factors when
    /// finite.
    pub fn order(&self) -> ElementOrder {
        if self.free_rank > 0 {
            return ElementOrder::Infinite;
        }
        let mut o = BigInt::one();
        for d in &self.torsion {
            o *= d;
        }
        ElementOrder::Finite(o)
    }
}

/// Order of a group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(BigInt),
    Infinite,
}

impl ElementOrder {
    pub fn is_finite(&self) -> bool {
        matches!(self, ElementOrder::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            ElementOrder::Finite(n) => Some(n),
            ElementOrder::Infinite => None,
        }
    }
}

impl std::fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => write!(f, "infinity"),
        }
    }
}

/// An element of an [`FgAbGroup`]; torsion coordinates stay reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbElement {
    group: FgAbGroup,
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl AbElement {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn free_part(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Full coordinate vector in the lifted presentation `Z^{r+k}`.
    pub fn lift(&self) -> Vec<BigInt> {
        let mut v = self.free.clone();
        v.extend(self.torsion.iter().cloned());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|x| x.is_zero()) && self.torsion.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &AbElement) -> AbElement {
        assert_eq!(self.group, other.group, "elements of different groups");
        let coords: Vec<BigInt> = self
            .lift()
            .iter()
            .zip(other.lift().iter())
            .map(|(a, b)| a + b)
            .collect();
        self.group.element(&coords).expect("coordinate count preserved")
    }

    pub fn neg(&self) -> AbElement {
        let coords: Vec<BigInt> = self.lift().iter().map(|a| -a).collect();
        self.group.element(&coords).expect("coordinate count preserved")
    }

    pub fn sub(&self, other: &AbElement) -> AbElement {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, n: &BigInt) -> AbElement {
        let coords: Vec<BigInt> = self.lift().iter().map(|a| a * n).collect();
        self.group.element(&coords).expect("coordinate count preserved")
    }

    /// Infinite iff the free part is nonzero; otherwise the lcm of
    /// `d_i / gcd(d_i, t_i)`.
    pub fn order(&self) -> ElementOrder {
        if self.free.iter().any(|x| !x.is_zero()) {
            return ElementOrder::Infinite;
        }
        let mut m = BigInt::one();
        for (t, d) in self.torsion.iter().zip(self.group.torsion.iter()) {
            let o = d / t.gcd(d);
            m = m.lcm(&o);
        }
        ElementOrder::Finite(m)
    }
}

/// A homomorphism between finitely generated abelian groups, given by the
/// images of the canonical generators of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbHom {
    source: FgAbGroup,
    target: FgAbGroup,
    images: Vec<AbElement>,
}

impl AbHom {
    /// Checks well-definedness: each torsion generator of order `d` must map
    /// to an element killed by `d`.
    pub fn new(
        source: FgAbGroup,
        target: FgAbGroup,
        images: Vec<AbElement>,
    ) -> Result<Self, FgabError> {
        if images.len() != source.gen_count() {
            return Err(FgabError::BadImageCount {
                want: source.gen_count(),
                got: images.len(),
            });
        }
        for img in &images {
            if img.group != target {
                return Err(FgabError::GroupMismatch);
            }
        }
        for (i, d) in source.torsion.iter().enumerate() {
            let idx = source.free_rank + i;
            if !images[idx].scalar_mul(d).is_zero() {
                return Err(FgabError::NotWellDefined { index: idx });
            }
        }
        Ok(AbHom {
            source,
            target,
            images,
        })
    }

    /// Builds a homomorphism from a matrix whose columns are the images of
    /// the source generators in target coordinates (free then torsion).
    pub fn from_matrix(
        source: FgAbGroup,
        target: FgAbGroup,
        matrix: &IntegerMatrix,
    ) -> Result<Self, FgabError> {
        if matrix.rows() != target.gen_count() || matrix.cols() != source.gen_count() {
            return Err(FgabError::BadImageCount {
                want: source.gen_count(),
                got: matrix.cols(),
            });
        }
        let images: Result<Vec<AbElement>, FgabError> =
            (0..matrix.cols()).map(|j| target.element(&matrix.column(j))).collect();
        Self::new(source, target, images?)
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn images(&self) -> &[AbElement] {
        &self.images
    }

    pub fn apply(&self, x: &AbElement) -> AbElement {
        assert_eq!(x.group, self.source, "element not in the source group");
        self.apply_coords(&x.lift())
    }

    /// Applies to a raw coordinate vector of the lifted presentation.
    pub fn apply_coords(&self, coords: &[BigInt]) -> AbElement {
        assert_eq!(coords.len(), self.source.gen_count());
        let mut acc = self.target.zero();
        for (c, img) in coords.iter().zip(self.images.iter()) {
            if !c.is_zero() {
                acc = acc.add(&img.scalar_mul(c));
            }
        }
        acc
    }

    /// The matrix of lifted generator images (target lift coordinates).
    pub fn matrix(&self) -> IntegerMatrix {
        let cols: Vec<Vec<BigInt>> = self.images.iter().map(|i| i.lift()).collect();
        IntegerMatrix::from_columns(self.target.gen_count(), &cols)
    }

    /// A preimage of `x` under the homomorphism, if one exists. Solutions
    /// differing by the kernel all map to `x`; the choice is the canonical
    /// one of [`crate::linalg::solve`].
    pub fn preimage(&self, x: &AbElement) -> Option<AbElement> {
        assert_eq!(x.group, self.target, "element not in the target group");
        let f = self.matrix();
        let rel =
            IntegerMatrix::from_columns(self.target.gen_count(), &self.target.relation_columns());
        let stacked = f.hstack(&rel);
        let sol = solve(&stacked, &x.lift())?;
        let coords = sol[..self.source.gen_count()].to_vec();
        Some(self.source.element(&coords).expect("coordinate count matches"))
    }

    pub fn is_injective(&self) -> bool {
        hom_kernel(self).0.is_trivial()
    }

    /// Whether the generator images generate the whole target.
    pub fn is_surjective(&self) -> bool {
        let mut cols: Vec<Vec<BigInt>> = self.images.iter().map(|i| i.lift()).collect();
        cols.extend(self.target.relation_columns());
        let m = IntegerMatrix::from_columns(self.target.gen_count(), &cols);
        let (coker, _) = from_relations(self.target.gen_count(), &m);
        coker.is_trivial()
    }

    pub fn compose(&self, inner: &AbHom) -> AbHom {
        assert_eq!(inner.target, self.source, "composition mismatch");
        let images = inner.images.iter().map(|i| self.apply(i)).collect();
        AbHom::new(inner.source.clone(), self.target.clone(), images)
            .expect("composition of well-defined homs is well defined")
    }
}

/// Cokernel of an integer matrix, with enough transform data to project
/// ambient vectors and to lift canonical generators back.
#[derive(Debug, Clone)]
pub(crate) struct Cokernel {
    pub group: FgAbGroup,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    free_pos: Vec<usize>,
    tors_pos: Vec<usize>,
}

impl Cokernel {
    pub fn new(ambient: usize, relations: &IntegerMatrix) -> Self {
        assert_eq!(relations.rows(), ambient, "relations must have `ambient` rows");
        let full = crate::linalg::smith_full(relations);
        let n = ambient.min(relations.cols());
        let mut free_pos = Vec::new();
        let mut tors_pos = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..ambient {
            let d = if i < n { full.d.at(i, i).clone() } else { BigInt::zero() };
            if d.is_zero() {
                free_pos.push(i);
            } else if d > BigInt::one() {
                tors_pos.push(i);
                torsion.push(d);
            }
        }
        let group = FgAbGroup::new(free_pos.len(), torsion)
            .expect("Smith chain yields valid invariant factors");
        Cokernel {
            group,
            u: full.u,
            u_inv: full.u_inv,
            free_pos,
            tors_pos,
        }
    }

    pub fn project(&self, x: &[BigInt]) -> AbElement {
        let y = self.u.mul_vec(x);
        let mut coords: Vec<BigInt> = self.free_pos.iter().map(|&i| y[i].clone()).collect();
        coords.extend(self.tors_pos.iter().map(|&i| y[i].clone()));
        self.group.element(&coords).expect("projection coordinates valid")
    }

    /// An ambient vector projecting to the `gen`-th canonical generator.
    pub fn section(&self, gen: usize) -> Vec<BigInt> {
        let pos = if gen < self.free_pos.len() {
            self.free_pos[gen]
        } else {
            self.tors_pos[gen - self.free_pos.len()]
        };
        self.u_inv.column(pos)
    }
}

/// Cokernel `Z^ambient / colspan(relations)` in canonical form, together
/// with the projection homomorphism from the free group `Z^ambient`.
pub fn from_relations(ambient_rank: usize, relations: &IntegerMatrix) -> (FgAbGroup, AbHom) {
    let coker = Cokernel::new(ambient_rank, relations);
    let ambient = FgAbGroup::free(ambient_rank);
    let images: Vec<AbElement> = (0..ambient_rank)
        .map(|i| {
            let mut e = vec![BigInt::zero(); ambient_rank];
            e[i] = BigInt::one();
            coker.project(&e)
        })
        .collect();
    let proj = AbHom::new(ambient, coker.group.clone(), images)
        .expect("projection from a free group is always well defined");
    (coker.group, proj)
}

/// Lattice `{x : f(x) in L}` for the lifted matrix `f` of a homomorphism
/// and a lattice `L` in the target lift space.
pub(crate) fn preimage_lattice(f: &IntegerMatrix, l: &Lattice) -> Lattice {
    let source_dim = f.cols();
    let stacked = if l.rank() == 0 {
        f.clone()
    } else {
        f.hstack(l.basis())
    };
    let ker = kernel(&stacked);
    let gens: Vec<Vec<BigInt>> = ker
        .basis_columns()
        .iter()
        .map(|c| c[..source_dim].to_vec())
        .collect();
    Lattice::from_generators(source_dim, &gens)
}

/// Kernel of `f` as an abstract group plus its embedding into the source.
///
/// The kernel is `L / R_s` where `L = f^{-1}(R_t)` in the lifted
/// presentation and `R_s` the source relation lattice; `f` is injective iff
/// the kernel group is trivial.
pub fn hom_kernel(f: &AbHom) -> (FgAbGroup, AbHom) {
    let n_s = f.source().gen_count();
    let l = preimage_lattice(&f.matrix(), &f.target().relation_lattice());
    let rank_l = l.rank();

    // Express the source relations in the basis of L.
    let rel_cols = f.source().relation_columns();
    let mut c_cols: Vec<Vec<BigInt>> = Vec::with_capacity(rel_cols.len());
    for r in &rel_cols {
        let c = solve(l.basis(), r).expect("source relations lie in the preimage lattice");
        c_cols.push(c);
    }
    let c = IntegerMatrix::from_columns(rank_l, &c_cols);
    let coker = Cokernel::new(rank_l, &c);

    let images: Vec<AbElement> = (0..coker.group.gen_count())
        .map(|g| {
            let w = coker.section(g);
            let x = if rank_l == 0 {
                vec![BigInt::zero(); n_s]
            } else {
                l.basis().mul_vec(&w)
            };
            f.source().element(&x).expect("lift has source coordinate count")
        })
        .collect();
    let embedding = AbHom::new(coker.group.clone(), f.source().clone(), images)
        .expect("kernel embedding is well defined");
    (coker.group, embedding)
}

/// Whether the cyclic subgroups generated by `a` and `b` intersect
/// trivially. The kernel `K <= Z^2` of `(s,t) -> s*a - t*b` describes the
/// coincidences `s*a = t*b`; the intersection is trivial iff `s*a = 0` for
/// every generator `(s,t)` of `K`.
pub fn cyclic_intersection_trivial(a: &AbElement, b: &AbElement) -> bool {
    assert_eq!(a.group, b.group, "elements of different groups");
    let n = a.group.gen_count();
    let m = IntegerMatrix::from_columns(n, &[a.lift(), b.neg().lift()]);
    let k = preimage_lattice(&m, &a.group.relation_lattice());
    k.basis_columns().iter().all(|st| a.scalar_mul(&st[0]).is_zero())
}

/// Least `m >= 1` with `m*b = eps*m*a` for a sign `eps`, preferring
/// `eps = +1` at equal `m`; `None` when no such `m` exists. For each sign
/// the candidates are exactly the multiples of `order(b - eps*a)`.
pub fn power_conjugacy_diag(a: &AbElement, b: &AbElement) -> Option<(BigInt, i8)> {
    assert_eq!(a.group, b.group, "elements of different groups");
    let plus = b.sub(a).order();
    let minus = b.add(a).order();
    match (plus, minus) {
        (ElementOrder::Finite(p), ElementOrder::Finite(m)) => {
            if p <= m {
                Some((p, 1))
            } else {
                Some((m, -1))
            }
        }
        (ElementOrder::Finite(p), ElementOrder::Infinite) => Some((p, 1)),
        (ElementOrder::Infinite, ElementOrder::Finite(m)) => Some((m, -1)),
        (ElementOrder::Infinite, ElementOrder::Infinite) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    fn z2() -> FgAbGroup {
        FgAbGroup::free(2)
    }

    #[test]
    fn from_relations_examples() {
        // Z^2 / <(2,0)> = Z x Z/2, e1 -> torsion generator.
        let rel = IntegerMatrix::from_rows_i64(&[vec![2], vec![0]]);
        let (g, proj) = from_relations(2, &rel);
        assert_eq!(g, FgAbGroup::new(1, vec![bi(2)]).unwrap());
        let e1 = FgAbGroup::free(2).generator(0);
        let img = proj.apply(&e1);
        assert!(img.free_part().iter().all(|x| x.is_zero()));
        assert_eq!(img.torsion_part(), &[bi(1)]);

        // No relations: identity on Z^n.
        let (g, proj) = from_relations(3, &IntegerMatrix::zero(3, 0));
        assert_eq!(g, FgAbGroup::free(3));
        for i in 0..3 {
            let e = FgAbGroup::free(3).generator(i);
            assert_eq!(proj.apply(&e).lift(), e.lift());
        }

        // Z / <1> is trivial.
        let (g, _) = from_relations(1, &IntegerMatrix::from_rows_i64(&[vec![1]]));
        assert!(g.is_trivial());
    }

    #[test]
    fn projection_kills_exactly_the_relations() {
        let rel = IntegerMatrix::from_rows_i64(&[vec![2, 0], vec![0, 3], vec![0, 0]]);
        let (_, proj) = from_relations(3, &rel);
        let span = Lattice::from_basis_matrix(&rel);
        for x in [
            vec![2, 0, 0],
            vec![0, 3, 0],
            vec![2, 3, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![4, -3, 0],
            vec![1, 1, 1],
        ] {
            let xe: Vec<BigInt> = x.iter().map(|&v| bi(v)).collect();
            let elem = FgAbGroup::free(3).element(&xe).unwrap();
            assert_eq!(proj.apply(&elem).is_zero(), span.contains(&xe), "at {x:?}");
        }
    }

    #[test]
    fn element_order_examples() {
        let g = z2();
        assert_eq!(g.element_i64(&[1, 0]).unwrap().order(), ElementOrder::Infinite);

        let z4 = FgAbGroup::cyclic(4);
        assert_eq!(z4.element_i64(&[1]).unwrap().order(), ElementOrder::Finite(bi(4)));
        assert_eq!(z4.element_i64(&[2]).unwrap().order(), ElementOrder::Finite(bi(2)));
        assert_eq!(z4.zero().order(), ElementOrder::Finite(bi(1)));
    }

    #[test]
    fn hom_kernel_examples() {
        // x2 : Z -> Z has trivial kernel.
        let f = AbHom::from_matrix(z(), z(), &IntegerMatrix::from_rows_i64(&[vec![2]])).unwrap();
        assert!(hom_kernel(&f).0.is_trivial());
        assert!(f.is_injective());

        // Z -> Z/2: kernel is Z embedded as 2Z.
        let f = AbHom::from_matrix(
            z(),
            FgAbGroup::cyclic(2),
            &IntegerMatrix::from_rows_i64(&[vec![1]]),
        )
        .unwrap();
        let (k, emb) = hom_kernel(&f);
        assert_eq!(k, z());
        assert_eq!(emb.images()[0].lift(), vec![bi(2)]);

        // (x,y) -> x+y: kernel Z generated by (1,-1) up to sign.
        let f = AbHom::from_matrix(z2(), z(), &IntegerMatrix::from_rows_i64(&[vec![1, 1]])).unwrap();
        let (k, emb) = hom_kernel(&f);
        assert_eq!(k, z());
        let gen = emb.images()[0].lift();
        assert!(gen == vec![bi(1), bi(-1)] || gen == vec![bi(-1), bi(1)]);
    }

    #[test]
    fn cyclic_intersection_examples() {
        let g = z2();
        let a = g.element_i64(&[1, 0]).unwrap();
        let b = g.element_i64(&[0, 1]).unwrap();
        assert!(cyclic_intersection_trivial(&a, &b));

        let g = z();
        let a = g.element_i64(&[2]).unwrap();
        let b = g.element_i64(&[3]).unwrap();
        assert!(!cyclic_intersection_trivial(&a, &b));

        // Z x Z/2: torsion generator vs free generator.
        let g = FgAbGroup::new(1, vec![bi(2)]).unwrap();
        let a = g.element_i64(&[0, 1]).unwrap();
        let b = g.element_i64(&[1, 0]).unwrap();
        assert!(cyclic_intersection_trivial(&a, &b));
    }

    /// Brute-force oracle: scan s*a = t*b over |s|,|t| <= bound, looking for
    /// a coincidence with s*a != 0.
    fn cyclic_intersection_trivial_brute(a: &AbElement, b: &AbElement, bound: i64) -> bool {
        for s in -bound..=bound {
            for t in -bound..=bound {
                let sa = a.scalar_mul(&bi(s));
                let tb = b.scalar_mul(&bi(t));
                if sa == tb && !sa.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn cyclic_intersection_matches_brute_force_on_finite_groups() {
        let g = FgAbGroup::new(0, vec![bi(2), bi(4)]).unwrap();
        let elems: Vec<AbElement> = (0..2)
            .flat_map(|x| (0..4).map(move |y| (x, y)))
            .map(|(x, y)| g.element_i64(&[x, y]).unwrap())
            .collect();
        for a in &elems {
            for b in &elems {
                // Orders divide 4, so scanning |s|,|t| <= 4 is exhaustive.
                assert_eq!(
                    cyclic_intersection_trivial(a, b),
                    cyclic_intersection_trivial_brute(a, b, 4),
                    "a={a:?} b={b:?}"
                );
            }
        }
    }

    #[test]
    fn cyclic_intersection_matches_brute_force_on_rank_two() {
        // For coordinates bounded by 2 in Z^2, a minimal coincidence
        // s*a = t*b has |s|,|t| <= 4 (cross-multiply coordinates), so the
        // bounded scan is an oracle on this sample.
        let g = z2();
        let vals = [-2i64, -1, 0, 1, 2];
        for &ax in &vals {
            for &ay in &vals {
                for &bx in &vals {
                    for &by in &vals {
                        let a = g.element_i64(&[ax, ay]).unwrap();
                        let b = g.element_i64(&[bx, by]).unwrap();
                        assert_eq!(
                            cyclic_intersection_trivial(&a, &b),
                            cyclic_intersection_trivial_brute(&a, &b, 4),
                            "a=({ax},{ay}) b=({bx},{by})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn power_conjugacy_examples() {
        let g = z2();
        let a = g.element_i64(&[1, 0]).unwrap();
        let b = a.neg();
        assert_eq!(power_conjugacy_diag(&a, &b), Some((bi(1), -1)));

        let g = z();
        let a = g.element_i64(&[2]).unwrap();
        let b = g.element_i64(&[3]).unwrap();
        assert_eq!(power_conjugacy_diag(&a, &b), None);

        let z4 = FgAbGroup::cyclic(4);
        let a = z4.element_i64(&[1]).unwrap();
        assert_eq!(power_conjugacy_diag(&a, &a), Some((bi(1), 1)));
    }

    #[test]
    fn power_conjugacy_invariants() {
        let g = FgAbGroup::new(1, vec![bi(6)]).unwrap();
        for coords in [[1, 0], [0, 1], [2, 3], [-1, 5], [0, 2]] {
            let a = g.element_i64(&coords).unwrap();
            assert_eq!(power_conjugacy_diag(&a, &a), Some((bi(1), 1)));
            if a != a.neg() {
                assert_eq!(power_conjugacy_diag(&a, &a.neg()), Some((bi(1), -1)));
            }
        }
        // Equal finite order n on both sides bounds m by n.
        let z6 = FgAbGroup::cyclic(6);
        for x in 1..6i64 {
            for y in 1..6i64 {
                let a = z6.element_i64(&[x]).unwrap();
                let b = z6.element_i64(&[y]).unwrap();
                if a.order() == b.order() {
                    let n = a.order().finite().unwrap().clone();
                    let (m, _) = power_conjugacy_diag(&a, &b).expect("finite orders always meet");
                    assert!(m <= n, "m={m} exceeds order {n}");
                }
            }
        }
    }

    #[test]
    fn hom_well_definedness_is_enforced() {
        // Z/2 -> Z must kill the generator.
        let bad = AbHom::from_matrix(
            FgAbGroup::cyclic(2),
            z(),
            &IntegerMatrix::from_rows_i64(&[vec![1]]),
        );
        assert!(matches!(bad, Err(FgabError::NotWellDefined { .. })));

        let good = AbHom::from_matrix(
            FgAbGroup::cyclic(2),
            FgAbGroup::cyclic(4),
            &IntegerMatrix::from_rows_i64(&[vec![2]]),
        );
        assert!(good.is_ok());
    }

    #[test]
    fn preimage_round_trip() {
        let f = AbHom::from_matrix(z2(), z(), &IntegerMatrix::from_rows_i64(&[vec![2, 3]])).unwrap();
        let target = z().element_i64(&[7]).unwrap();
        let pre = f.preimage(&target).unwrap();
        assert_eq!(f.apply(&pre), target);
        assert!(f.preimage(&z().element_i64(&[1]).unwrap()).is_some());

        let double = AbHom::from_matrix(z(), z(), &IntegerMatrix::from_rows_i64(&[vec![2]])).unwrap();
        assert!(double.preimage(&z().element_i64(&[3]).unwrap()).is_none());
    }
}
