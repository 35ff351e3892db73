#![forbid(unsafe_code)]

//! Completely independent Steiner trees (CISSTs) on small graphs.
//!
//! Given a host graph and a terminal set `S`, an S-Steiner tree is a subtree
//! spanning `S` whose leaves all lie in `S`. A family of such trees is
//! *completely independent* when the trees are pairwise edge-disjoint, meet
//! only in `S`, and connect every terminal pair through internally disjoint
//! paths. This crate provides:
//!
//! - immutable graph, terminal-set, and tree types ([`graph`], [`tree`]);
//! - two independent verifiers for complete independence ([`verify`]);
//! - terminal-subset reduction by iterated leaf deletion ([`prune`]);
//! - explicit tree families for complete graphs ([`complete`]) and complete
//!   bipartite graphs ([`bipartite`]), together with the piecewise lower
//!   bound on the bipartite packing number;
//! - an exhaustive, symmetry-pruned exact solver for the packing number
//!   `kappa*` on small hosts ([`solver`]);
//! - JSON ingestion and DOT rendering for offline use ([`json`], [`dot`]).
//!
//! Everything is immutable after construction and safe to share across
//! threads.

pub mod bipartite;
pub mod complete;
pub mod dot;
pub mod error;
pub mod graph;
pub mod json;
pub mod prune;
pub mod solver;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{BipartiteLabeling, Edge, Graph, Side};
pub use tree::{SteinerTree, TerminalSet, TreeDefect, TreeFamily};
pub use verify::{verify_characterization, verify_definitional, Verdict, Violation};

/// Dense vertex identifier in `0..n`.
pub type VertexId = u32;
