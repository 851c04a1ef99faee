//! Serre graphs, graphs of abelian groups, spanning trees and the tree
//! abelianization.
//!
//! Graphs follow Serre's convention: every geometric edge is a pair of
//! mutually inverse half-edges `e, ē` with `ē != e`, `ē̄ = e` and
//! `ω(ē) = α(e)`. Externally an edge is stored once per pair; internally
//! the pair occupies indices `2i` (the stored, positively oriented edge)
//! and `2i + 1` (its inverse), so `inverse(e) = e ^ 1`. The orientation
//! `E⁺` is the set of stored edges.

use crate::fgab::{from_relations, hom_kernel, AbElement, AbHom, FgAbGroup, FgabError};
use crate::linalg::IntegerMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not connected")]
    NotConnected,
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("edge `{id}`: {what}")]
    BadEdgeData { id: String, what: String },
    #[error(transparent)]
    Fgab(#[from] FgabError),
}

/// A finite graph in Serre's sense. Half-edges are indexed so that the
/// involution is `e ^ 1`; this is the only representation the library
/// constructs, but [`SerreGraph::from_raw`] admits arbitrary incidence data
/// so that the validator can be exercised on broken inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreGraph {
    vertex_ids: Vec<String>,
    pair_ids: Vec<String>,
    origin: Vec<usize>,
    terminus: Vec<usize>,
    inverse: Vec<usize>,
}

impl SerreGraph {
    /// Builds a graph from one record per geometric edge. Vertices and edge
    /// pairs are sorted by id, which fixes all downstream orderings.
    pub fn from_pairs(
        vertices: Vec<String>,
        pairs: Vec<(String, String, String)>,
    ) -> Result<Self, GraphError> {
        let mut vertex_ids = vertices;
        vertex_ids.sort();
        if vertex_ids.windows(2).any(|w| w[0] == w[1]) {
            let dup = vertex_ids
                .windows(2)
                .find(|w| w[0] == w[1])
                .map(|w| w[0].clone())
                .unwrap_or_default();
            return Err(GraphError::DuplicateId(dup));
        }
        if vertex_ids.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut sorted_pairs = pairs;
        sorted_pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if sorted_pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            let dup = sorted_pairs
                .windows(2)
                .find(|w| w[0].0 == w[1].0)
                .map(|w| w[0].0.clone())
                .unwrap_or_default();
            return Err(GraphError::DuplicateId(dup));
        }
        let vix = |id: &str| -> Result<usize, GraphError> {
            vertex_ids
                .binary_search_by(|v| v.as_str().cmp(id))
                .map_err(|_| GraphError::UnknownVertex(id.to_string()))
        };
        let mut pair_ids = Vec::with_capacity(sorted_pairs.len());
        let mut origin = Vec::new();
        let mut terminus = Vec::new();
        let mut inverse = Vec::new();
        for (id, from, to) in &sorted_pairs {
            let f = vix(from)?;
            let t = vix(to)?;
            let e = origin.len();
            pair_ids.push(id.clone());
            origin.push(f);
            terminus.push(t);
            inverse.push(e + 1);
            origin.push(t);
            terminus.push(f);
            inverse.push(e);
        }
        Ok(SerreGraph {
            vertex_ids,
            pair_ids,
            origin,
            terminus,
            inverse,
        })
    }

    /// Raw constructor with explicit incidence data; `edge_ids` are
    /// per half-edge. No axioms are checked, so the result may violate the
    /// inversion laws — that is what [`GraphOfGroups::validate`] reports.
    pub fn from_raw(
        vertex_ids: Vec<String>,
        edge_ids: Vec<String>,
        origin: Vec<usize>,
        terminus: Vec<usize>,
        inverse: Vec<usize>,
    ) -> Self {
        assert_eq!(edge_ids.len(), origin.len());
        assert_eq!(edge_ids.len(), terminus.len());
        assert_eq!(edge_ids.len(), inverse.len());
        SerreGraph {
            vertex_ids,
            pair_ids: edge_ids,
            origin,
            terminus,
            inverse,
        }
    }

    fn is_raw(&self) -> bool {
        self.pair_ids.len() == self.origin.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }

    /// Number of half-edges (Serre's `|EΓ|`).
    pub fn edge_count(&self) -> usize {
        self.origin.len()
    }

    pub fn pair_count(&self) -> usize {
        self.edge_count() / 2
    }

    pub fn pair_ids(&self) -> &[String] {
        &self.pair_ids
    }

    pub fn origin(&self, e: usize) -> usize {
        self.origin[e]
    }

    pub fn terminus(&self, e: usize) -> usize {
        self.terminus[e]
    }

    pub fn inverse(&self, e: usize) -> usize {
        self.inverse[e]
    }

    pub fn is_positive(&self, e: usize) -> bool {
        e % 2 == 0
    }

    pub fn pair_of(&self, e: usize) -> usize {
        e / 2
    }

    pub fn pair_id_of(&self, e: usize) -> &str {
        let idx = if self.is_raw() { e } else { self.pair_of(e) };
        &self.pair_ids[idx]
    }

    pub fn edge_index_of_pair(&self, pair_id: &str) -> Option<usize> {
        if self.is_raw() {
            self.pair_ids.iter().position(|p| p == pair_id)
        } else {
            self.pair_ids.iter().position(|p| p == pair_id).map(|i| 2 * i)
        }
    }

    /// Human-readable label, `id` for stored edges and `id^-1` for inverses.
    pub fn edge_label(&self, e: usize) -> String {
        if self.is_positive(e) {
            self.pair_id_of(e).to_string()
        } else {
            format!("{}^-1", self.pair_id_of(e))
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_ids.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in 0..self.edge_count() {
                if self.origin[e] == v && !seen[self.terminus[e]] {
                    seen[self.terminus[e]] = true;
                    stack.push(self.terminus[e]);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// `χ(Γ) = |VΓ| - |EΓ|/2`, counting half-edges.
pub fn euler_characteristic(g: &SerreGraph) -> BigRational {
    let v = BigRational::from_integer(BigInt::from(g.vertex_count()));
    let e = BigRational::new(BigInt::from(g.edge_count()), BigInt::from(2));
    v - e
}

/// A maximal tree, stored as the set of edge pairs it uses (closed under
/// inversion by construction). The orientation `E⁺` is the set of stored
/// edges of the ambient graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    in_tree: Vec<bool>,
}

impl SpanningTree {
    pub fn contains(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    /// Pair indices of tree edges, in order.
    pub fn tree_pairs(&self) -> Vec<usize> {
        (0..self.in_tree.len() / 2)
            .filter(|&p| self.in_tree[2 * p])
            .collect()
    }

    pub fn tree_pair_ids(&self, g: &SerreGraph) -> Vec<String> {
        self.tree_pairs()
            .into_iter()
            .map(|p| g.pair_ids()[p].to_string())
            .collect()
    }

    /// Positive off-tree edges, in index order.
    pub fn offtree_positive(&self, g: &SerreGraph) -> Vec<usize> {
        (0..g.edge_count())
            .filter(|&e| g.is_positive(e) && !self.in_tree[e])
            .collect()
    }

    /// All off-tree half-edges, in index order.
    pub fn offtree_edges(&self, g: &SerreGraph) -> Vec<usize> {
        (0..g.edge_count()).filter(|&e| !self.in_tree[e]).collect()
    }
}

/// Deterministic BFS spanning tree: start at the least vertex id, explore
/// edges in index order (pairs sorted by id).
pub fn spanning_tree_canonical(g: &SerreGraph) -> Result<SpanningTree, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    let mut in_tree = vec![false; g.edge_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    seen[0] = true;
    queue.push_back(0usize);
    while let Some(v) = queue.pop_front() {
        for e in 0..g.edge_count() {
            if g.origin(e) == v && !seen[g.terminus(e)] {
                seen[g.terminus(e)] = true;
                in_tree[e] = true;
                in_tree[g.inverse(e)] = true;
                queue.push_back(g.terminus(e));
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GraphError::NotConnected);
    }
    Ok(SpanningTree { in_tree })
}

/// Spanning tree from an explicit set of pair ids, verified to span.
pub fn spanning_tree_explicit(g: &SerreGraph, pair_ids: &[String]) -> Result<SpanningTree, GraphError> {
    let mut in_tree = vec![false; g.edge_count()];
    for id in pair_ids {
        let e = g
            .edge_index_of_pair(id)
            .ok_or_else(|| GraphError::UnknownEdge(id.clone()))?;
        in_tree[e] = true;
        in_tree[g.inverse(e)] = true;
    }
    let t = SpanningTree { in_tree };
    let pairs = t.tree_pairs();
    if pairs.len() + 1 != g.vertex_count() {
        return Err(GraphError::NotSpanningTree(format!(
            "{} edges cannot span {} vertices",
            pairs.len(),
            g.vertex_count()
        )));
    }
    // A spanning set of |V| - 1 acyclic edges: check reachability via DSU.
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &p in &pairs {
        let e = 2 * p;
        let (a, b) = (find(&mut parent, g.origin(e)), find(&mut parent, g.terminus(e)));
        if a == b {
            return Err(GraphError::NotSpanningTree("edge set contains a cycle".into()));
        }
        parent[a] = b;
    }
    Ok(t)
}

/// All spanning trees up to `cap`, by deletion/contraction style subset
/// recursion over pairs in sorted id order; returns the trees found and
/// whether the enumeration was truncated at the cap.
pub fn enumerate_spanning_trees(g: &SerreGraph, cap: usize) -> (Vec<SpanningTree>, bool) {
    let n = g.vertex_count();
    let pairs = g.pair_count();
    let mut out = Vec::new();
    let mut truncated = false;

    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    fn recurse(
        g: &SerreGraph,
        idx: usize,
        chosen: &mut Vec<usize>,
        parent: Vec<usize>,
        components: usize,
        out: &mut Vec<SpanningTree>,
        truncated: &mut bool,
        cap: usize,
    ) {
        if out.len() >= cap {
            *truncated = true;
            return;
        }
        if components == 1 {
            let mut in_tree = vec![false; g.edge_count()];
            for &p in chosen.iter() {
                in_tree[2 * p] = true;
                in_tree[2 * p + 1] = true;
            }
            out.push(SpanningTree { in_tree });
            return;
        }
        if idx == g.pair_count() || g.pair_count() - idx < components - 1 {
            return;
        }
        // Include pair `idx` if it joins two components.
        let e = 2 * idx;
        let mut p1 = parent.clone();
        let (a, b) = (find(&mut p1, g.origin(e)), find(&mut p1, g.terminus(e)));
        if a != b {
            p1[a] = b;
            chosen.push(idx);
            recurse(g, idx + 1, chosen, p1, components - 1, out, truncated, cap);
            chosen.pop();
        }
        // Exclude pair `idx`.
        recurse(g, idx + 1, chosen, parent, components, out, truncated, cap);
    }

    if n == 0 {
        return (out, truncated);
    }
    recurse(
        g,
        0,
        &mut Vec::with_capacity(pairs),
        (0..n).collect(),
        n,
        &mut out,
        &mut truncated,
        cap,
    );
    (out, truncated)
}

/// One violated axiom, locating the offending vertex or edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub axiom: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.location, self.axiom)
    }
}

/// Input for one geometric edge of a graph of groups.
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub group: FgAbGroup,
    /// Columns are images of the edge-group generators in `from`-vertex
    /// coordinates (free then torsion).
    pub alpha: IntegerMatrix,
    /// Columns are images of the edge-group generators in `to`-vertex
    /// coordinates.
    pub omega: IntegerMatrix,
}

/// A finite connected graph of finitely generated abelian groups with
/// injective edge monomorphisms.
#[derive(Debug, Clone)]
pub struct GraphOfGroups {
    graph: SerreGraph,
    vertex_groups: Vec<FgAbGroup>,
    edge_groups: Vec<FgAbGroup>,
    alpha: Vec<AbHom>,
}

impl GraphOfGroups {
    pub fn build(
        vertices: Vec<(String, FgAbGroup)>,
        edges: Vec<EdgeSpec>,
    ) -> Result<Self, GraphError> {
        let vertex_names: Vec<String> = vertices.iter().map(|(id, _)| id.clone()).collect();
        let pairs: Vec<(String, String, String)> = edges
            .iter()
            .map(|e| (e.id.clone(), e.from.clone(), e.to.clone()))
            .collect();
        let graph = SerreGraph::from_pairs(vertex_names, pairs)?;

        let mut vertex_groups = vec![FgAbGroup::trivial(); graph.vertex_count()];
        for (id, grp) in vertices {
            let v = graph.vertex_index(&id).expect("vertex id came from the list");
            vertex_groups[v] = grp;
        }

        let mut edge_groups = vec![FgAbGroup::trivial(); graph.edge_count()];
        let mut alpha: Vec<Option<AbHom>> = vec![None; graph.edge_count()];
        let mut sorted_edges = edges;
        sorted_edges.sort_by(|a, b| a.id.cmp(&b.id));
        for (pair, spec) in sorted_edges.into_iter().enumerate() {
            let e = 2 * pair;
            let from = graph.vertex_index(&spec.from).expect("checked by from_pairs");
            let to = graph.vertex_index(&spec.to).expect("checked by from_pairs");
            let a = AbHom::from_matrix(spec.group.clone(), vertex_groups[from].clone(), &spec.alpha)
                .map_err(|err| GraphError::BadEdgeData {
                    id: spec.id.clone(),
                    what: format!("alpha: {err}"),
                })?;
            let o = AbHom::from_matrix(spec.group.clone(), vertex_groups[to].clone(), &spec.omega)
                .map_err(|err| GraphError::BadEdgeData {
                    id: spec.id.clone(),
                    what: format!("omega: {err}"),
                })?;
            edge_groups[e] = spec.group.clone();
            edge_groups[e + 1] = spec.group;
            alpha[e] = Some(a);
            alpha[e + 1] = Some(o);
        }
        Ok(GraphOfGroups {
            graph,
            vertex_groups,
            edge_groups,
            alpha: alpha.into_iter().map(|a| a.expect("every edge filled")).collect(),
        })
    }

    /// Assembles a graph of groups over a raw Serre graph without checking
    /// any axioms; used to feed the validator with broken data.
    pub fn from_raw_parts(
        graph: SerreGraph,
        vertex_groups: Vec<FgAbGroup>,
        edge_groups: Vec<FgAbGroup>,
        alpha: Vec<AbHom>,
    ) -> Self {
        GraphOfGroups {
            graph,
            vertex_groups,
            edge_groups,
            alpha,
        }
    }

    pub fn graph(&self) -> &SerreGraph {
        &self.graph
    }

    pub fn vertex_group(&self, v: usize) -> &FgAbGroup {
        &self.vertex_groups[v]
    }

    pub fn edge_group(&self, e: usize) -> &FgAbGroup {
        &self.edge_groups[e]
    }

    /// The monomorphism `G_e -> G_{α(e)}`.
    pub fn alpha(&self, e: usize) -> &AbHom {
        &self.alpha[e]
    }

    /// The monomorphism `G_e -> G_{ω(e)}`, i.e. `alpha` of the inverse.
    pub fn omega(&self, e: usize) -> &AbHom {
        &self.alpha[self.graph.inverse(e)]
    }

    /// Checks every structural axiom and returns the violations; an empty
    /// list means the graph of groups is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let g = &self.graph;
        if g.vertex_count() == 0 {
            out.push(Violation {
                location: "graph".into(),
                axiom: "graph is empty".into(),
            });
            return out;
        }
        for e in 0..g.edge_count() {
            let inv = g.inverse(e);
            if inv == e {
                out.push(Violation {
                    location: format!("edge {}", g.edge_label(e)),
                    axiom: "inversion fixed point (ē = e)".into(),
                });
                continue;
            }
            if inv >= g.edge_count() || g.inverse(inv) != e {
                out.push(Violation {
                    location: format!("edge {}", g.edge_label(e)),
                    axiom: "inversion is not an involution (ē̄ != e)".into(),
                });
            }
            if inv < g.edge_count() && g.terminus(inv) != g.origin(e) {
                out.push(Violation {
                    location: format!("edge {}", g.edge_label(e)),
                    axiom: "ω(ē) != α(e)".into(),
                });
            }
            if inv < g.edge_count() && self.edge_groups[e] != self.edge_groups[inv] {
                out.push(Violation {
                    location: format!("edge {}", g.edge_label(e)),
                    axiom: "edge groups of e and ē differ".into(),
                });
            }
        }
        if !g.is_connected() {
            out.push(Violation {
                location: "graph".into(),
                axiom: "graph is not connected".into(),
            });
        }
        for e in 0..g.edge_count() {
            let a = &self.alpha[e];
            if a.source() != &self.edge_groups[e] {
                out.push(Violation {
                    location: format!("edge {}", g.edge_label(e)),
                    axiom: "alpha source is not the edge group".into(),
                });
                continue;
            }
            if a.target() != &self.vertex_groups[g.origin(e)] {
                out.push(Violation {
                    location: format!("edge {}", g.edge_label(e)),
                    axiom: "alpha target is not the origin vertex group".into(),
                });
                continue;
            }
            if !a.is_injective() {
                out.push(Violation {
                    location: format!("edge {}", g.edge_label(e)),
                    axiom: "alpha not injective".into(),
                });
            }
        }
        out
    }

    /// Unique path of tree half-edges from `v` to `w` (each with origin at
    /// the current vertex).
    pub fn tree_path(&self, t: &SpanningTree, v: usize, w: usize) -> Vec<usize> {
        let g = &self.graph;
        if v == w {
            return Vec::new();
        }
        let mut prev: Vec<Option<usize>> = vec![None; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        let mut queue = std::collections::VecDeque::new();
        seen[v] = true;
        queue.push_back(v);
        while let Some(x) = queue.pop_front() {
            if x == w {
                break;
            }
            for e in 0..g.edge_count() {
                if t.contains(e) && g.origin(e) == x && !seen[g.terminus(e)] {
                    seen[g.terminus(e)] = true;
                    prev[g.terminus(e)] = Some(e);
                    queue.push_back(g.terminus(e));
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = w;
        while cur != v {
            let e = prev[cur].expect("tree spans all vertices");
            path.push(e);
            cur = self.graph.origin(e);
        }
        path.reverse();
        path
    }

    /// Transports `g` from vertex `v` to vertex `w` along the unique tree
    /// path, realizing the equivalence `α_e(c) ~ ω_e(c)` step by step.
    /// Returns `None` as soon as the current element leaves the image of
    /// the edge map to be crossed.
    pub fn transport(
        &self,
        t: &SpanningTree,
        elem: &AbElement,
        v: usize,
        w: usize,
    ) -> Option<AbElement> {
        assert_eq!(elem.group(), &self.vertex_groups[v], "element not at vertex v");
        let mut cur = elem.clone();
        for e in self.tree_path(t, v, w) {
            let c = self.alpha(e).preimage(&cur)?;
            cur = self.omega(e).apply(&c);
        }
        Some(cur)
    }

    /// Vertices reachable from `v` by transporting `elem`, always including
    /// `v` itself. The set is a subtree because transport composes along
    /// tree paths.
    pub fn transport_reach(&self, t: &SpanningTree, elem: &AbElement, v: usize) -> Vec<usize> {
        (0..self.graph.vertex_count())
            .filter(|&w| self.transport(t, elem, v, w).is_some())
            .collect()
    }
}

/// The abelianization of the tree part `(G_T, T)` together with the maps of
/// the vertex groups into it and the images of off-tree edge groups.
///
/// `A = (⊕_v G_v) / ⟨α_e(c) - ω_e(c) : e ∈ tree E⁺, c generator⟩`, computed
/// as a cokernel over the lifted ambient `Z^N` (vertices in sorted id
/// order, free generators before torsion generators within a vertex).
/// Every vertex map is injective; this is theorem-backed and asserted at
/// construction.
#[derive(Debug, Clone)]
pub struct TreeAbelianization {
    group: FgAbGroup,
    vertex_maps: Vec<AbHom>,
    vertex_offsets: Vec<usize>,
    ambient_rank: usize,
    relation_columns: Vec<Vec<BigInt>>,
    offtree: Vec<OfftreeEdgeImages>,
}

/// Images in `A` of the generators of `α_e(G_e)` for one off-tree
/// half-edge, with their ambient lifts kept for certificate arithmetic.
#[derive(Debug, Clone)]
pub struct OfftreeEdgeImages {
    pub edge: usize,
    pub images: Vec<AbElement>,
    pub lifts: Vec<Vec<BigInt>>,
}

impl TreeAbelianization {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn vertex_map(&self, v: usize) -> &AbHom {
        &self.vertex_maps[v]
    }

    pub fn vertex_maps(&self) -> &[AbHom] {
        &self.vertex_maps
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Torsion and tree-edge relation columns in ambient coordinates.
    pub fn relation_columns(&self) -> &[Vec<BigInt>] {
        &self.relation_columns
    }

    pub fn offtree(&self) -> &[OfftreeEdgeImages] {
        &self.offtree
    }

    pub fn offtree_for(&self, edge: usize) -> Option<&OfftreeEdgeImages> {
        self.offtree.iter().find(|o| o.edge == edge)
    }

    /// Ambient lift of an element of the `v`-th vertex group.
    pub fn lift_at(&self, v: usize, elem: &AbElement) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient_rank];
        for (i, c) in elem.lift().into_iter().enumerate() {
            out[self.vertex_offsets[v] + i] = c;
        }
        out
    }
}

/// Builds the tree abelianization of `(g, t)`.
///
/// Panics if some vertex map fails the injectivity assertion, which cannot
/// happen for valid input (abelian vertex groups, injective edge maps,
/// actual spanning tree).
pub fn tree_abelianization(g: &GraphOfGroups, t: &SpanningTree) -> TreeAbelianization {
    let graph = g.graph();
    let nv = graph.vertex_count();

    if nv == 1 {
        // Empty tree: A is the vertex group itself with the identity map.
        let vg = g.vertex_group(0).clone();
        let ambient = vg.gen_count();
        let relations = vg.relation_columns();
        let identity = vg.identity_hom();
        let offtree = t
            .offtree_edges(graph)
            .into_iter()
            .map(|e| {
                let edge_group = g.edge_group(e);
                let images: Vec<AbElement> = (0..edge_group.gen_count())
                    .map(|i| g.alpha(e).apply(&edge_group.generator(i)))
                    .collect();
                let lifts = images.iter().map(|x| x.lift()).collect();
                OfftreeEdgeImages { edge: e, images, lifts }
            })
            .collect();
        return TreeAbelianization {
            group: vg,
            vertex_maps: vec![identity],
            vertex_offsets: vec![0],
            ambient_rank: ambient,
            relation_columns: relations,
            offtree,
        };
    }

    let mut offsets = Vec::with_capacity(nv);
    let mut ambient = 0usize;
    for v in 0..nv {
        offsets.push(ambient);
        ambient += g.vertex_group(v).gen_count();
    }

    let lift_at = |v: usize, elem: &AbElement| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); ambient];
        for (i, c) in elem.lift().into_iter().enumerate() {
            out[offsets[v] + i] = c;
        }
        out
    };

    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for v in 0..nv {
        for col in g.vertex_group(v).relation_columns() {
            let mut full = vec![BigInt::zero(); ambient];
            for (i, c) in col.into_iter().enumerate() {
                full[offsets[v] + i] = c;
            }
            relations.push(full);
        }
    }
    for e in (0..graph.edge_count()).filter(|&e| graph.is_positive(e) && t.contains(e)) {
        let edge_group = g.edge_group(e);
        for i in 0..edge_group.gen_count() {
            let c = edge_group.generator(i);
            let a = lift_at(graph.origin(e), &g.alpha(e).apply(&c));
            let o = lift_at(graph.terminus(e), &g.omega(e).apply(&c));
            let col: Vec<BigInt> = a.iter().zip(o.iter()).map(|(x, y)| x - y).collect();
            relations.push(col);
        }
    }

    let rel_matrix = IntegerMatrix::from_columns(ambient, &relations);
    let (group, proj) = from_relations(ambient, &rel_matrix);

    let mut vertex_maps = Vec::with_capacity(nv);
    for v in 0..nv {
        let vg = g.vertex_group(v);
        let images: Vec<AbElement> = (0..vg.gen_count())
            .map(|i| proj.apply_coords(&lift_at(v, &vg.generator(i))))
            .collect();
        let map = AbHom::new(vg.clone(), group.clone(), images)
            .expect("vertex map well defined: torsion relations are among the quotient relations");
        let (ker, _) = hom_kernel(&map);
        assert!(
            ker.is_trivial(),
            "tree abelianization vertex map must be injective at vertex {}",
            graph.vertex_id(v)
        );
        vertex_maps.push(map);
    }

    let mut offtree = Vec::new();
    for e in t.offtree_edges(graph) {
        let edge_group = g.edge_group(e);
        let mut images = Vec::new();
        let mut lifts = Vec::new();
        for i in 0..edge_group.gen_count() {
            let c = edge_group.generator(i);
            let at_vertex = g.alpha(e).apply(&c);
            lifts.push(lift_at(graph.origin(e), &at_vertex));
            images.push(vertex_maps[graph.origin(e)].apply(&at_vertex));
        }
        offtree.push(OfftreeEdgeImages { edge: e, images, lifts });
    }

    TreeAbelianization {
        group,
        vertex_maps,
        vertex_offsets: offsets,
        ambient_rank: ambient,
        relation_columns: relations,
        offtree,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use num_traits::One;

    fn zn(n: usize) -> FgAbGroup {
        FgAbGroup::free(n)
    }

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows_i64(rows)
    }

    /// The path-of-length-3 graph: three Z^2 vertices, two Z edges glued
    /// along the shared generators.
    pub(crate) fn raag_path3() -> GraphOfGroups {
        GraphOfGroups::build(
            vec![
                ("v_ab".into(), zn(2)),
                ("v_bc".into(), zn(2)),
                ("v_cd".into(), zn(2)),
            ],
            vec![
                EdgeSpec {
                    id: "e_b".into(),
                    from: "v_ab".into(),
                    to: "v_bc".into(),
                    group: zn(1),
                    alpha: m(&[vec![0], vec![1]]),
                    omega: m(&[vec![1], vec![0]]),
                },
                EdgeSpec {
                    id: "e_c".into(),
                    from: "v_bc".into(),
                    to: "v_cd".into(),
                    group: zn(1),
                    alpha: m(&[vec![0], vec![1]]),
                    omega: m(&[vec![1], vec![0]]),
                },
            ],
        )
        .unwrap()
    }

    /// Two vertices B = Z^3, C = Z^2; tree edge e1 with Z^2 edge group
    /// (b1^3 = c1^2, b2^4 = c2^3), off-tree e2 (B-to-C) and loop e3 on B.
    pub(crate) fn two_vertex_rank5_graph() -> GraphOfGroups {
        GraphOfGroups::build(
            vec![("B".into(), zn(3)), ("C".into(), zn(2))],
            vec![
                EdgeSpec {
                    id: "e1".into(),
                    from: "B".into(),
                    to: "C".into(),
                    group: zn(2),
                    alpha: m(&[vec![3, 0], vec![0, 4], vec![0, 0]]),
                    omega: m(&[vec![2, 0], vec![0, 3]]),
                },
                EdgeSpec {
                    id: "e2".into(),
                    from: "B".into(),
                    to: "C".into(),
                    group: zn(1),
                    alpha: m(&[vec![2], vec![2], vec![0]]),
                    omega: m(&[vec![2], vec![2]]),
                },
                EdgeSpec {
                    id: "e3".into(),
                    from: "B".into(),
                    to: "B".into(),
                    group: zn(1),
                    alpha: m(&[vec![-2], vec![-2], vec![0]]),
                    omega: m(&[vec![1], vec![1], vec![1]]),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn raag_path3_graph_is_valid() {
        assert!(raag_path3().validate().is_empty());
    }

    #[test]
    fn non_injective_alpha_is_reported() {
        // Edge map sends the Z generator to a torsion element of order 2.
        let g = GraphOfGroups::build(
            vec![
                ("u".into(), FgAbGroup::new(1, vec![BigInt::from(2)]).unwrap()),
                ("w".into(), zn(1)),
            ],
            vec![EdgeSpec {
                id: "e".into(),
                from: "u".into(),
                to: "w".into(),
                group: zn(1),
                alpha: m(&[vec![0], vec![1]]),
                omega: m(&[vec![1]]),
            }],
        )
        .unwrap();
        let violations = g.validate();
        assert!(violations.iter().any(|v| v.axiom.contains("alpha not injective")));
    }

    #[test]
    fn inversion_fixed_point_is_reported() {
        // One half-edge that is its own inverse.
        let graph = SerreGraph::from_raw(
            vec!["v".into()],
            vec!["e".into()],
            vec![0],
            vec![0],
            vec![0],
        );
        let grp = zn(1);
        let hom = grp.identity_hom();
        let g = GraphOfGroups::from_raw_parts(graph, vec![grp.clone()], vec![grp], vec![hom]);
        let violations = g.validate();
        assert!(violations.iter().any(|v| v.axiom.contains("inversion fixed point")));
    }

    #[test]
    fn euler_characteristic_examples() {
        let loop_graph = SerreGraph::from_pairs(
            vec!["v".into()],
            vec![("e".into(), "v".into(), "v".into())],
        )
        .unwrap();
        assert_eq!(euler_characteristic(&loop_graph), BigRational::zero());

        assert_eq!(
            euler_characteristic(raag_path3().graph()),
            BigRational::one()
        );

        let gk_shape = SerreGraph::from_pairs(
            vec!["v".into()],
            vec![
                ("s".into(), "v".into(), "v".into()),
                ("t".into(), "v".into(), "v".into()),
            ],
        )
        .unwrap();
        assert_eq!(
            euler_characteristic(&gk_shape),
            -BigRational::one()
        );
    }

    #[test]
    fn canonical_spanning_trees() {
        let path = raag_path3();
        let t = spanning_tree_canonical(path.graph()).unwrap();
        assert_eq!(t.tree_pairs().len(), 2);
        assert!(t.offtree_positive(path.graph()).is_empty());

        let gk = SerreGraph::from_pairs(
            vec!["v".into()],
            vec![
                ("s".into(), "v".into(), "v".into()),
                ("t".into(), "v".into(), "v".into()),
            ],
        )
        .unwrap();
        let t = spanning_tree_canonical(&gk).unwrap();
        assert!(t.tree_pairs().is_empty());
        assert_eq!(t.offtree_positive(&gk).len(), 2);

        let rank5 = two_vertex_rank5_graph();
        let t = spanning_tree_canonical(rank5.graph()).unwrap();
        assert_eq!(t.tree_pair_ids(rank5.graph()), vec!["e1".to_string()]);
    }

    #[test]
    fn explicit_tree_is_checked() {
        let rank5 = two_vertex_rank5_graph();
        assert!(spanning_tree_explicit(rank5.graph(), &["e2".into()]).is_ok());
        assert!(spanning_tree_explicit(rank5.graph(), &["e3".into()]).is_err());
        assert!(spanning_tree_explicit(rank5.graph(), &["e1".into(), "e2".into()]).is_err());
    }

    #[test]
    fn enumerate_trees_examples() {
        let path = raag_path3();
        let (trees, truncated) = enumerate_spanning_trees(path.graph(), 256);
        assert_eq!(trees.len(), 1);
        assert!(!truncated);

        // A cycle of 4 vertices has 4 spanning trees.
        let cycle = SerreGraph::from_pairs(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                ("e0".into(), "a".into(), "b".into()),
                ("e1".into(), "b".into(), "c".into()),
                ("e2".into(), "c".into(), "d".into()),
                ("e3".into(), "d".into(), "a".into()),
            ],
        )
        .unwrap();
        let (trees, truncated) = enumerate_spanning_trees(&cycle, 256);
        assert_eq!(trees.len(), 4);
        assert!(!truncated);

        let (trees, truncated) = enumerate_spanning_trees(&cycle, 1);
        assert_eq!(trees.len(), 1);
        assert!(truncated);
    }

    #[test]
    fn amalgam_tree_abelianization() {
        // Z *_{a^2 = b^3} Z abelianizes to Z with a -> ±3, b -> ±2.
        let g = GraphOfGroups::build(
            vec![("u".into(), zn(1)), ("w".into(), zn(1))],
            vec![EdgeSpec {
                id: "e".into(),
                from: "u".into(),
                to: "w".into(),
                group: zn(1),
                alpha: m(&[vec![2]]),
                omega: m(&[vec![3]]),
            }],
        )
        .unwrap();
        let t = spanning_tree_canonical(g.graph()).unwrap();
        let ab = tree_abelianization(&g, &t);
        assert_eq!(ab.group(), &zn(1));
        let a_img = ab.vertex_map(0).images()[0].clone();
        let b_img = ab.vertex_map(1).images()[0].clone();
        assert_eq!(a_img.scalar_mul(&BigInt::from(2)), b_img.scalar_mul(&BigInt::from(3)));
        let av = a_img.lift()[0].clone();
        let bv = b_img.lift()[0].clone();
        assert_eq!(
            (num_traits::Signed::abs(&av), num_traits::Signed::abs(&bv)),
            (BigInt::from(3), BigInt::from(2))
        );
    }

    #[test]
    fn single_vertex_tree_abelianization_is_identity() {
        let g = GraphOfGroups::build(
            vec![("v".into(), FgAbGroup::new(2, vec![BigInt::from(4)]).unwrap())],
            vec![],
        )
        .unwrap();
        let t = spanning_tree_canonical(g.graph()).unwrap();
        let ab = tree_abelianization(&g, &t);
        assert_eq!(ab.group(), g.vertex_group(0));
        for i in 0..3 {
            assert_eq!(
                ab.vertex_map(0).apply(&g.vertex_group(0).generator(i)),
                ab.group().generator(i)
            );
        }
    }

    #[test]
    fn two_vertex_rank5_tree_abelianization() {
        let g = two_vertex_rank5_graph();
        let t = spanning_tree_canonical(g.graph()).unwrap();
        let ab = tree_abelianization(&g, &t);
        // (B x C) / <(b1^3, c1^-2), (b2^4, c2^-3)> is free of rank 3.
        assert_eq!(ab.group(), &zn(3));
        assert_eq!(ab.offtree().len(), 4);
    }

    #[test]
    fn transport_examples() {
        let g = raag_path3();
        let t = spanning_tree_canonical(g.graph()).unwrap();
        let v_ab = g.graph().vertex_index("v_ab").unwrap();
        let v_bc = g.graph().vertex_index("v_bc").unwrap();

        // b = (0,1) in <a,b> transports to (1,0) in <b,c>.
        let b = g.vertex_group(v_ab).element_i64(&[0, 1]).unwrap();
        let moved = g.transport(&t, &b, v_ab, v_bc).unwrap();
        assert_eq!(moved, g.vertex_group(v_bc).element_i64(&[1, 0]).unwrap());

        // a = (1,0) does not lie in the edge group <b>.
        let a = g.vertex_group(v_ab).element_i64(&[1, 0]).unwrap();
        assert!(g.transport(&t, &a, v_ab, v_bc).is_none());

        // Transport to the same vertex is the identity.
        assert_eq!(g.transport(&t, &a, v_ab, v_ab), Some(a));
    }

    #[test]
    fn invariant_factors_are_label_invariant() {
        // The same abstract amalgam with permuted vertex labels (hence a
        // different generator ordering) yields the same canonical group.
        let build = |first: &str, second: &str| {
            let g = GraphOfGroups::build(
                vec![
                    (first.to_string(), zn(2)),
                    (second.to_string(), FgAbGroup::new(1, vec![BigInt::from(2)]).unwrap()),
                ],
                vec![EdgeSpec {
                    id: "e".into(),
                    from: first.to_string(),
                    to: second.to_string(),
                    group: zn(1),
                    alpha: m(&[vec![2], vec![2]]),
                    omega: m(&[vec![1], vec![0]]),
                }],
            )
            .unwrap();
            let t = spanning_tree_canonical(g.graph()).unwrap();
            tree_abelianization(&g, &t).group().clone()
        };
        assert_eq!(build("p", "q"), build("q", "p"));
    }
}
