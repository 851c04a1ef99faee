//! Exact-arithmetic deciders for virtual retraction properties of fundamental
//! groups of finite graphs of finitely generated abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: arbitrary-precision integer matrices, Smith/Hermite normal
//!   forms, integer kernels and lattice arithmetic. Everything above is built
//!   on this substrate; no floating point is used anywhere.
//! - [`fgab`]: finitely generated abelian groups in canonical form
//!   (free rank plus invariant factors), their elements and homomorphisms.
//! - [`graph`]: Serre graphs with edge inversion, graphs of abelian groups,
//!   spanning trees and the tree abelianization.
//! - [`britton`]: reduced and cyclically reduced expressions for the
//!   fundamental group relative to a spanning tree (word problem,
//!   elliptic/hyperbolic classification, element orders).
//! - [`matgrp`]: finiteness of finitely generated subgroups of GL(n,Z).
//! - [`witness`]: Euclidean-by-finite witness homomorphisms G -> Z^n ⋊ Q,
//!   their construction from near linear independence data and their
//!   exact verification.
//! - [`deciders`]: the verdict pipeline (balancedness, near linear
//!   independence, Gram-form obstructions, (VRC)/(LR) deciders and
//!   closed-form family facts) producing machine-checkable certificates.

pub mod britton;
pub mod deciders;
pub mod docs;
pub mod fgab;
pub mod graph;
pub mod linalg;
pub mod matgrp;
pub mod witness;

pub use fgab::{AbElement, AbHom, ElementOrder, FgAbGroup};
pub use graph::{GraphOfGroups, SerreGraph, SpanningTree, TreeAbelianization};
pub use linalg::{IntegerMatrix, Lattice, SmithDecomposition};

