//! Reduced and cyclically reduced expressions for the fundamental group of
//! a graph of groups relative to a spanning tree.
//!
//! Words are sequences of syllables: nontrivial vertex elements and powers
//! of the stable letters of positively oriented off-tree edges (tree
//! letters are the identity and never appear). A reduced word contains no
//! trivial vertex element, no `t_e t_e^-1` or `t_e^-1 t_e`, no adjacent
//! vertex elements equivalent into a common vertex group, and no pinch
//! `t_e^-1 g t_e` / `t_e g t_e^-1` with `g` equivalent into the respective
//! edge image. A non-empty reduced word never represents the identity,
//! which makes `is_trivial` a decision procedure for the word problem.
//!
//! Reduction is a streaming normal-form automaton. Each incoming syllable
//! is pushed onto a stack that is kept normalized: trivial elements are
//! dropped, mutually inverse letters cancel, adjacent vertex elements with
//! intersecting transport-reachable subtrees merge at the common vertex
//! nearest the left operand, and a vertex element pushed after a letter is
//! coset-normalized — its component in the relevant edge image is carried
//! through the letter via `t_e ω_e(c) t_e^-1 = α_e(c)` and only the
//! canonical coset representative stays. Pinches then reduce to plain
//! letter cancellations. The resulting syllable count is canonical (it is
//! the length of the classical transversal normal form), so every reduced
//! form of a fixed element produced here has the same length; the word
//! itself is deterministic but not a unique normal form, and equality
//! testing goes through `is_trivial` of the quotient.

use crate::fgab::{AbElement, ElementOrder};
use crate::graph::{GraphOfGroups, SpanningTree};
use crate::linalg::Lattice;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("vertex index {0} out of range")]
    BadVertex(usize),
    #[error("element does not belong to the group of vertex {0}")]
    WrongGroup(usize),
    #[error("edge index {0} is not a positively oriented edge")]
    NotPositive(usize),
    #[error("edge `{0}` is a tree edge; tree letters are the identity and must be omitted")]
    TreeLetter(String),
    #[error("stable letter exponent must be +1 or -1")]
    BadExponent,
}

/// One factor of an expression: a vertex group element or a stable letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Syllable {
    Vertex { vertex: usize, elem: AbElement },
    Stable { edge: usize, exponent: i8 },
}

/// A word in the fundamental group, tied to a `(graph, tree)` context via
/// the indices it carries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    pub syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word { syllables: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// Conjugacy-free classification of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Elliptic { vertex: usize, elem: AbElement },
    Hyperbolic,
}

/// Pulls a lattice of lifted coordinates at vertex `w` back along the
/// tree path from `v` to `w`: the result describes the elements of `G_v`
/// whose transport to `w` is defined and lands in the seed lattice. Each
/// crossing `e` (with origin at the current vertex) is pulled back through
/// `z = α_e(c), ω_e(c) ∈ previous`.
fn pullback_along_tree(
    gog: &GraphOfGroups,
    tree: &SpanningTree,
    v: usize,
    w: usize,
    seed_at_w: Lattice,
) -> Lattice {
    let graph = gog.graph();
    let mut lattice = seed_at_w;
    let path = gog.tree_path(tree, v, w);
    for &e in path.iter().rev() {
        let c_lattice = crate::fgab::preimage_lattice(&gog.omega(e).matrix(), &lattice);
        let alpha_matrix = gog.alpha(e).matrix();
        let source_group = gog.vertex_group(graph.origin(e));
        let mut cols: Vec<_> = c_lattice
            .basis_columns()
            .iter()
            .map(|col| alpha_matrix.mul_vec(col))
            .collect();
        cols.extend(source_group.relation_columns());
        lattice = Lattice::from_generators(source_group.gen_count(), &cols);
    }
    lattice
}

/// Lifted coordinates of `{x in G_v : x ~ some element of im(α_f)}`.
fn transported_image_lattice(
    gog: &GraphOfGroups,
    tree: &SpanningTree,
    f: usize,
    v: usize,
) -> Lattice {
    let hom = gog.alpha(f);
    let mut cols = hom.matrix().columns();
    cols.extend(hom.target().relation_columns());
    let image = Lattice::from_generators(hom.target().gen_count(), &cols);
    pullback_along_tree(gog, tree, v, gog.graph().origin(f), image)
}

/// Lifted coordinates of `{x in G_v : transport of x to w is defined}`.
fn transport_domain_lattice(
    gog: &GraphOfGroups,
    tree: &SpanningTree,
    v: usize,
    w: usize,
) -> Lattice {
    let full = Lattice::full(gog.vertex_group(w).gen_count());
    pullback_along_tree(gog, tree, v, w, full)
}

/// The reduction engine for one `(graph of groups, spanning tree)` context.
pub struct Britton<'a> {
    gog: &'a GraphOfGroups,
    tree: &'a SpanningTree,
    /// `absorb_lattices[f][v]` is the lattice of lifted coordinates of the
    /// elements of `G_v` that are equivalent (via tree transport) to an
    /// element of `im(α_f)` — the subgroup a vertex element standing at
    /// `v` can be normalized against when it follows the letter whose
    /// incoming side is `f`. An element is pinchable iff it lies in this
    /// lattice, i.e. iff its canonical representative is zero.
    absorb_lattices: Vec<Vec<Lattice>>,
    /// `merge_domains[v][w]`: lifted coordinates of the elements of `G_v`
    /// whose tree transport to `w` is defined; used to move the movable
    /// component of a vertex syllable into its left neighbour.
    merge_domains: Vec<Vec<Lattice>>,
}

impl<'a> Britton<'a> {
    pub fn new(gog: &'a GraphOfGroups, tree: &'a SpanningTree) -> Self {
        let graph = gog.graph();
        let absorb_lattices = (0..graph.edge_count())
            .map(|f| {
                (0..graph.vertex_count())
                    .map(|v| transported_image_lattice(gog, tree, f, v))
                    .collect()
            })
            .collect();
        let merge_domains = (0..graph.vertex_count())
            .map(|v| {
                (0..graph.vertex_count())
                    .map(|w| transport_domain_lattice(gog, tree, v, w))
                    .collect()
            })
            .collect();
        Britton {
            gog,
            tree,
            absorb_lattices,
            merge_domains,
        }
    }

    pub fn graph_of_groups(&self) -> &GraphOfGroups {
        self.gog
    }

    /// Validates syllable data against the context.
    pub fn word(&self, syllables: Vec<Syllable>) -> Result<Word, WordError> {
        let g = self.gog.graph();
        for s in &syllables {
            match s {
                Syllable::Vertex { vertex, elem } => {
                    if *vertex >= g.vertex_count() {
                        return Err(WordError::BadVertex(*vertex));
                    }
                    if elem.group() != self.gog.vertex_group(*vertex) {
                        return Err(WordError::WrongGroup(*vertex));
                    }
                }
                Syllable::Stable { edge, exponent } => {
                    if *edge >= g.edge_count() || !g.is_positive(*edge) {
                        return Err(WordError::NotPositive(*edge));
                    }
                    if self.tree.contains(*edge) {
                        return Err(WordError::TreeLetter(g.pair_id_of(*edge).to_string()));
                    }
                    if *exponent != 1 && *exponent != -1 {
                        return Err(WordError::BadExponent);
                    }
                }
            }
        }
        Ok(Word { syllables })
    }

    /// `w^-1`: reverse the word, inverting each syllable.
    pub fn inverse(&self, w: &Word) -> Word {
        let syllables = w
            .syllables
            .iter()
            .rev()
            .map(|s| match s {
                Syllable::Vertex { vertex, elem } => Syllable::Vertex {
                    vertex: *vertex,
                    elem: elem.neg(),
                },
                Syllable::Stable { edge, exponent } => Syllable::Stable {
                    edge: *edge,
                    exponent: -exponent,
                },
            })
            .collect();
        Word { syllables }
    }

    pub fn concat(&self, parts: &[&Word]) -> Word {
        let mut syllables = Vec::new();
        for p in parts {
            syllables.extend(p.syllables.iter().cloned());
        }
        Word { syllables }
    }

    fn tree_distance(&self, v: usize, w: usize) -> usize {
        self.gog.tree_path(self.tree, v, w).len()
    }

    /// Whether some reducedness clause is violated somewhere in the word:
    /// a trivial vertex element, a cancelling letter pair, a mergeable
    /// adjacent vertex pair, or a pinchable subword.
    fn find_violation(&self, sylls: &[Syllable]) -> bool {
        for i in 0..sylls.len() {
            if let Syllable::Vertex { elem, .. } = &sylls[i] {
                if elem.is_zero() {
                    return true;
                }
            }
            if i + 1 < sylls.len() {
                if let (
                    Syllable::Stable { edge: e1, exponent: x1 },
                    Syllable::Stable { edge: e2, exponent: x2 },
                ) = (&sylls[i], &sylls[i + 1])
                {
                    if e1 == e2 && *x1 == -*x2 {
                        return true;
                    }
                }
                if let (
                    Syllable::Vertex { vertex: v, elem: g },
                    Syllable::Vertex { vertex: w, elem: h },
                ) = (&sylls[i], &sylls[i + 1])
                {
                    if self.merge_target(*v, g, *w, h).is_some() {
                        return true;
                    }
                }
            }
            if i + 2 < sylls.len() {
                if let (
                    Syllable::Stable { edge: e1, exponent: x1 },
                    Syllable::Vertex { vertex: v, elem: g },
                    Syllable::Stable { edge: e2, exponent: x2 },
                ) = (&sylls[i], &sylls[i + 1], &sylls[i + 2])
                {
                    if e1 == e2 && *x1 == -*x2 && self.pinch_target(*e1, *x1, *v, g).is_some() {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Merge point and merged element for two adjacent vertex syllables, if
    /// their transport-reachable subtrees meet: the common vertex nearest
    /// the left operand's vertex.
    fn merge_target(
        &self,
        v: usize,
        g: &AbElement,
        w: usize,
        h: &AbElement,
    ) -> Option<(usize, AbElement)> {
        let reach_g = self.gog.transport_reach(self.tree, g, v);
        let reach_h = self.gog.transport_reach(self.tree, h, w);
        let common: Vec<usize> = reach_g.iter().copied().filter(|x| reach_h.contains(x)).collect();
        let u = common.into_iter().min_by_key(|&x| (self.tree_distance(v, x), x))?;
        let gu = self.gog.transport(self.tree, g, v, u).expect("u is reachable for g");
        let hu = self.gog.transport(self.tree, h, w, u).expect("u is reachable for h");
        Some((u, gu.add(&hu)))
    }

    /// Pinch result for `t_e^{x} g t_e^{-x}`. For `x = -1` the subword is
    /// `t_e^-1 g t_e`; it collapses when `g` transports into the image of
    /// `α_e`, producing `ω_e(α_e^-1(g'))` at `ω(e)`. For `x = +1` the roles
    /// of `α` and `ω` swap.
    fn pinch_target(
        &self,
        edge: usize,
        x1: i8,
        v: usize,
        g: &AbElement,
    ) -> Option<(usize, AbElement)> {
        let graph = self.gog.graph();
        if x1 == -1 {
            let at_alpha = self.gog.transport(self.tree, g, v, graph.origin(edge))?;
            let c = self.gog.alpha(edge).preimage(&at_alpha)?;
            Some((graph.terminus(edge), self.gog.omega(edge).apply(&c)))
        } else {
            let at_omega = self.gog.transport(self.tree, g, v, graph.terminus(edge))?;
            let c = self.gog.omega(edge).preimage(&at_omega)?;
            Some((graph.origin(edge), self.gog.alpha(edge).apply(&c)))
        }
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        !self.find_violation(&w.syllables)
    }

    /// Reduction by the four reducedness clauses only (no coset
    /// normalization): delete trivial elements, cancel letter pairs, merge
    /// adjacent vertex elements, pinch. Every step strictly decreases the
    /// syllable count, which is what the cyclic-reduction loop needs for
    /// termination; the output is reduced but its length is not canonical.
    fn reduce_basic(&self, sylls: &[Syllable]) -> Vec<Syllable> {
        let mut sylls = sylls.to_vec();
        'outer: loop {
            for i in 0..sylls.len() {
                if let Syllable::Vertex { elem, .. } = &sylls[i] {
                    if elem.is_zero() {
                        sylls.remove(i);
                        continue 'outer;
                    }
                }
                if i + 1 < sylls.len() {
                    if let (
                        Syllable::Stable { edge: e1, exponent: x1 },
                        Syllable::Stable { edge: e2, exponent: x2 },
                    ) = (&sylls[i], &sylls[i + 1])
                    {
                        if e1 == e2 && *x1 == -*x2 {
                            sylls.drain(i..i + 2);
                            continue 'outer;
                        }
                    }
                    if let (
                        Syllable::Vertex { vertex: v, elem: g },
                        Syllable::Vertex { vertex: w, elem: h },
                    ) = (&sylls[i], &sylls[i + 1])
                    {
                        if let Some((u, merged)) = self.merge_target(*v, g, *w, h) {
                            sylls.splice(i..i + 2, [Syllable::Vertex { vertex: u, elem: merged }]);
                            continue 'outer;
                        }
                    }
                }
                if i + 2 < sylls.len() {
                    if let (
                        Syllable::Stable { edge: e1, exponent: x1 },
                        Syllable::Vertex { vertex: v, elem: g },
                        Syllable::Stable { edge: e2, exponent: x2 },
                    ) = (&sylls[i], &sylls[i + 1], &sylls[i + 2])
                    {
                        if e1 == e2 && *x1 == -*x2 {
                            if let Some((u, pinched)) = self.pinch_target(*e1, *x1, *v, g) {
                                sylls.splice(
                                    i..i + 3,
                                    [Syllable::Vertex { vertex: u, elem: pinched }],
                                );
                                continue 'outer;
                            }
                        }
                    }
                }
            }
            break;
        }
        sylls
    }

    /// Splits `g` at vertex `v` as `s + r` where `s` is equivalent through
    /// the tree to `α_f(c)` and `r` is the canonical representative of `g`
    /// modulo the transported image of `α_f` at `v`. Returns `(c, r)`.
    fn decompose(&self, f: usize, v: usize, g: &AbElement) -> (AbElement, AbElement) {
        let target = self.gog.graph().origin(f);
        let hom = self.gog.alpha(f);
        let r_lift = self.absorb_lattices[f][v].reduce_vector(&g.lift());
        let r = self
            .gog
            .vertex_group(v)
            .element(&r_lift)
            .expect("reduced vector has vertex coordinate count");
        let s = g.sub(&r);
        let c = if s.is_zero() {
            hom.source().zero()
        } else {
            let moved = self
                .gog
                .transport(self.tree, &s, v, target)
                .expect("absorbable component transports by construction");
            hom.preimage(&moved)
                .expect("transported component lies in the edge image by construction")
        };
        (c, r)
    }

    /// Pushes a vertex syllable onto the normalized stack.
    fn push_vertex(&self, stack: &mut Vec<Syllable>, vertex: usize, elem: AbElement) {
        if elem.is_zero() {
            return;
        }
        match stack.last() {
            Some(Syllable::Vertex { vertex: w, elem: h }) => {
                let (w, h) = (*w, h.clone());
                // The stack top is the left operand of the merge.
                if let Some((u, merged)) = self.merge_target(w, &h, vertex, &elem) {
                    stack.pop();
                    self.push_vertex(stack, u, merged);
                    return;
                }
                // Partial merge: the component of the incoming element
                // whose transport all the way to `w` is defined joins the
                // left neighbour; the canonical remainder stays here.
                let domain = &self.merge_domains[vertex][w];
                let r_lift = domain.reduce_vector(&elem.lift());
                let r = self
                    .gog
                    .vertex_group(vertex)
                    .element(&r_lift)
                    .expect("reduced vector has vertex coordinate count");
                let s = elem.sub(&r);
                if !s.is_zero() {
                    let moved = self
                        .gog
                        .transport(self.tree, &s, vertex, w)
                        .expect("movable component transports by construction");
                    stack.pop();
                    self.push_vertex(stack, w, h.add(&moved));
                    self.push_vertex(stack, vertex, r);
                    return;
                }
                if self.cascade_merge(stack, w, &h, vertex, &elem) {
                    return;
                }
                stack.push(Syllable::Vertex { vertex, elem });
            }
            Some(Syllable::Stable { edge, exponent }) => {
                let graph = self.gog.graph();
                let (edge, exponent) = (*edge, *exponent);
                // For `t_e g` the absorbable part is equivalent into the
                // ω_e-image (it moves left as an α_e-image); for
                // `t_e^-1 g` the roles swap.
                let (in_edge, out_edge) = if exponent == 1 {
                    (graph.inverse(edge), edge)
                } else {
                    (edge, graph.inverse(edge))
                };
                // Relocate the element as close to the letter's vertex as
                // transport allows; anchoring slot fronts next to their
                // letter is what makes the output shape canonical.
                let tv = graph.origin(in_edge);
                let mut anchor = vertex;
                let mut carried = elem;
                if vertex != tv {
                    let mut stops = vec![vertex];
                    for e in self.gog.tree_path(self.tree, vertex, tv) {
                        stops.push(graph.terminus(e));
                    }
                    for &u in stops.iter().rev() {
                        if u == vertex {
                            break;
                        }
                        if let Some(moved) = self.gog.transport(self.tree, &carried, vertex, u) {
                            anchor = u;
                            carried = moved;
                            break;
                        }
                    }
                }
                let (c, r) = self.decompose(in_edge, anchor, &carried);
                if c.is_zero() {
                    stack.push(Syllable::Vertex {
                        vertex: anchor,
                        elem: carried,
                    });
                } else {
                    let letter = stack.pop().expect("top was a letter");
                    let out = self.gog.alpha(out_edge).apply(&c);
                    self.push_vertex(stack, graph.origin(out_edge), out);
                    self.push_letter_raw(stack, letter);
                    self.push_vertex(stack, anchor, r);
                }
            }
            None => stack.push(Syllable::Vertex { vertex, elem }),
        }
    }

    /// Compensator cascade. With the stack ending in `[…, t, h@w]` and an
    /// incoming `g@v` that neither merges with `h` nor has movable mass,
    /// the slot would grow to two syllables. But the slot content is only
    /// well defined up to the image subgroup of the letter: if some
    /// compensator `s* = (transported image element) at w` makes
    /// `h + s*` transportable to `v`, then `t (h g) = out^-1 t ((h+s*) g)`
    /// with the right factor a single merged syllable — strictly shorter.
    /// Returns true when it fired.
    fn cascade_merge(
        &self,
        stack: &mut Vec<Syllable>,
        w: usize,
        h: &AbElement,
        vertex: usize,
        elem: &AbElement,
    ) -> bool {
        let graph = self.gog.graph();
        if stack.len() < 2 {
            return false;
        }
        let Syllable::Stable { edge, exponent } = stack[stack.len() - 2] else {
            return false;
        };
        let (in_edge, out_edge) = if exponent == 1 {
            (graph.inverse(edge), edge)
        } else {
            (edge, graph.inverse(edge))
        };
        let comp = &self.absorb_lattices[in_edge][w];
        if comp.rank() == 0 {
            return false;
        }
        // Solve lift(h) + comp*y ∈ D(w→v).
        let d = &self.merge_domains[w][vertex];
        let stacked = if d.rank() == 0 {
            comp.basis().clone()
        } else {
            comp.basis().hstack(d.basis())
        };
        let rhs: Vec<_> = h.lift().iter().map(|x| -x).collect();
        let Some(sol) = crate::linalg::solve(&stacked, &rhs) else {
            return false;
        };
        let y = &sol[..comp.rank()];
        let s_star = self
            .gog
            .vertex_group(w)
            .element(&comp.basis().mul_vec(y))
            .expect("lattice lives in the lift space of G_w");
        if s_star.is_zero() {
            return false;
        }
        let (c_star, rem) = self.decompose(in_edge, w, &s_star);
        debug_assert!(rem.is_zero(), "compensator lies in the transported image");
        let out = self.gog.alpha(out_edge).apply(&c_star);
        let new_front = h.add(&s_star);
        let Some((u, merged)) = self.merge_target(w, &new_front, vertex, elem) else {
            return false;
        };
        stack.pop();
        let letter = stack.pop().expect("checked to be a letter");
        self.push_vertex(stack, graph.origin(out_edge), out.neg());
        self.push_letter_raw(stack, letter);
        self.push_vertex(stack, u, merged);
        true
    }

    fn push_letter_raw(&self, stack: &mut Vec<Syllable>, letter: Syllable) {
        let Syllable::Stable { edge, exponent } = letter else {
            unreachable!("push_letter_raw takes stable letters only");
        };
        if let Some(Syllable::Stable { edge: e2, exponent: x2 }) = stack.last() {
            if *e2 == edge && *x2 == -exponent {
                stack.pop();
                return;
            }
        }
        stack.push(letter);
    }

    /// Britton reduction: streams the syllables through the normalized
    /// stack. The output satisfies every reducedness clause and its
    /// syllable count is canonical for the represented element.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut stack: Vec<Syllable> = Vec::with_capacity(w.len());
        for syll in &w.syllables {
            match syll {
                Syllable::Vertex { vertex, elem } => {
                    self.push_vertex(&mut stack, *vertex, elem.clone())
                }
                Syllable::Stable { .. } => self.push_letter_raw(&mut stack, syll.clone()),
            }
        }
        debug_assert!(!self.find_violation(&stack), "stack output not reduced");
        Word { syllables: stack }
    }

    /// Sound and complete word problem: a word is trivial iff its reduced
    /// form is empty.
    pub fn is_trivial(&self, w: &Word) -> bool {
        self.reduce(w).is_empty()
    }

    /// Cyclically reduces `w`, returning `(w', c)` with `w = c w' c^-1` and
    /// every cyclic permutation of `w'` reduced.
    ///
    /// This loop uses the four-rule reducer: a rotation that violates a
    /// reducedness clause strictly shrinks under it, so the loop
    /// terminates. (The coset-normalizing reducer may grow a word and, on
    /// cyclic words, would chase absorbable mass around the circle
    /// forever.)
    pub fn cyclically_reduce(&self, w: &Word) -> (Word, Word) {
        let mut cur = self.reduce_basic(&w.syllables);
        let mut conj: Vec<Syllable> = Vec::new();
        loop {
            if cur.len() <= 1 {
                break;
            }
            let mut bad_rotation = None;
            for k in 1..cur.len() {
                let mut rotated = cur[k..].to_vec();
                rotated.extend_from_slice(&cur[..k]);
                if self.find_violation(&rotated) {
                    bad_rotation = Some((k, rotated));
                    break;
                }
            }
            match bad_rotation {
                None => break,
                Some((k, rotated)) => {
                    conj.extend_from_slice(&cur[..k]);
                    // The rotation is not reduced, so this strictly shrinks.
                    cur = self.reduce_basic(&rotated);
                }
            }
        }
        (Word { syllables: cur }, Word { syllables: conj })
    }

    /// Elliptic/hyperbolic classification: after cyclic reduction, length 0
    /// or a single vertex syllable is elliptic (with the conjugacy
    /// representative); length >= 2 or a single stable letter is
    /// hyperbolic.
    pub fn classify(&self, w: &Word) -> Classification {
        let (cyc, _) = self.cyclically_reduce(w);
        match cyc.syllables.as_slice() {
            [] => Classification::Elliptic {
                vertex: 0,
                elem: self.gog.vertex_group(0).zero(),
            },
            [Syllable::Vertex { vertex, elem }] => Classification::Elliptic {
                vertex: *vertex,
                elem: elem.clone(),
            },
            _ => Classification::Hyperbolic,
        }
    }

    /// Hyperbolic elements have infinite order; elliptic ones have the
    /// order of their vertex-group representative.
    pub fn word_order(&self, w: &Word) -> ElementOrder {
        match self.classify(w) {
            Classification::Hyperbolic => ElementOrder::Infinite,
            Classification::Elliptic { elem, .. } => elem.order(),
        }
    }
}
