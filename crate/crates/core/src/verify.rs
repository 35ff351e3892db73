//! Deciding whether a tree family is completely independent.
//!
//! Two independent routes are provided and must always agree:
//!
//! - [`verify_definitional`] checks the raw definition: pairwise
//!   edge-disjointness, pairwise vertex intersection exactly `S`, and
//!   internally disjoint paths for every terminal pair. Quadratic in the
//!   number of terminal pairs.
//! - [`verify_characterization`] checks the equivalent structural condition:
//!   pairwise edge-disjointness plus "every vertex has tree-degree greater
//!   than one in at most one tree". Linear in the total family size.
//!
//! Both report the first violation found in a deterministic scan order so
//! that failures replay exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::tree::{TerminalSet, TreeFamily};
use crate::VertexId;

/// The kind of independence violation, without its witness.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    SharedEdge,
    ExtraSharedVertex,
    PathIntersection,
    DoubleInternal,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::SharedEdge => "SHARED_EDGE",
            ViolationKind::ExtraSharedVertex => "EXTRA_SHARED_VERTEX",
            ViolationKind::PathIntersection => "PATH_INTERSECTION",
            ViolationKind::DoubleInternal => "DOUBLE_INTERNAL",
        };
        f.write_str(s)
    }
}

/// A concrete, replayable witness that a family is not completely
/// independent. Tree indices refer to positions within the family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Both trees contain `edge`.
    SharedEdge {
        first_tree: usize,
        second_tree: usize,
        edge: Edge,
    },
    /// Both trees contain `vertex`, which is not a terminal.
    ExtraSharedVertex {
        first_tree: usize,
        second_tree: usize,
        vertex: VertexId,
    },
    /// The paths joining `terminals` in the two trees share the internal
    /// vertex `vertex`.
    PathIntersection {
        first_tree: usize,
        second_tree: usize,
        terminals: (VertexId, VertexId),
        vertex: VertexId,
    },
    /// `vertex` has degree at least two in both trees.
    DoubleInternal {
        first_tree: usize,
        second_tree: usize,
        vertex: VertexId,
    },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::SharedEdge { .. } => ViolationKind::SharedEdge,
            Violation::ExtraSharedVertex { .. } => ViolationKind::ExtraSharedVertex,
            Violation::PathIntersection { .. } => ViolationKind::PathIntersection,
            Violation::DoubleInternal { .. } => ViolationKind::DoubleInternal,
        }
    }

    /// The pair of tree indices involved.
    pub fn tree_indices(&self) -> (usize, usize) {
        match *self {
            Violation::SharedEdge {
                first_tree,
                second_tree,
                ..
            }
            | Violation::ExtraSharedVertex {
                first_tree,
                second_tree,
                ..
            }
            | Violation::PathIntersection {
                first_tree,
                second_tree,
                ..
            }
            | Violation::DoubleInternal {
                first_tree,
                second_tree,
                ..
            } => (first_tree, second_tree),
        }
    }

    /// Re-checks the witness against the family in time linear in the
    /// family size. A reported violation must always replay to `true`.
    pub fn replay(&self, family: &TreeFamily) -> bool {
        let trees = family.trees();
        match *self {
            Violation::SharedEdge {
                first_tree,
                second_tree,
                edge,
            } => {
                first_tree < trees.len()
                    && second_tree < trees.len()
                    && trees[first_tree].has_edge(edge)
                    && trees[second_tree].has_edge(edge)
            }
            Violation::ExtraSharedVertex {
                first_tree,
                second_tree,
                vertex,
            } => {
                first_tree < trees.len()
                    && second_tree < trees.len()
                    && trees[first_tree].contains_vertex(vertex)
                    && trees[second_tree].contains_vertex(vertex)
                    && !family.terminals().contains(vertex)
            }
            Violation::PathIntersection {
                first_tree,
                second_tree,
                terminals: (a, b),
                vertex,
            } => {
                let internal = |idx: usize| -> bool {
                    trees[idx]
                        .path_between(a, b)
                        .map(|p| p.len() > 2 && p[1..p.len() - 1].contains(&vertex))
                        .unwrap_or(false)
                };
                first_tree < trees.len()
                    && second_tree < trees.len()
                    && internal(first_tree)
                    && internal(second_tree)
            }
            Violation::DoubleInternal {
                first_tree,
                second_tree,
                vertex,
            } => {
                first_tree < trees.len()
                    && second_tree < trees.len()
                    && trees[first_tree].degree(vertex) > 1
                    && trees[second_tree].degree(vertex) > 1
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.tree_indices();
        match self {
            Violation::SharedEdge { edge, .. } => {
                write!(f, "{} trees=({p},{q}) edge={edge}", self.kind())
            }
            Violation::ExtraSharedVertex { vertex, .. } => {
                write!(f, "{} trees=({p},{q}) vertex={vertex}", self.kind())
            }
            Violation::PathIntersection {
                terminals: (a, b),
                vertex,
                ..
            } => write!(
                f,
                "{} trees=({p},{q}) terminals=({a},{b}) vertex={vertex}",
                self.kind()
            ),
            Violation::DoubleInternal { vertex, .. } => {
                write!(f, "{} trees=({p},{q}) vertex={vertex}", self.kind())
            }
        }
    }
}

/// Outcome of a verification run over a well-formed family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Independent,
    Violated(Violation),
}

impl Verdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, Verdict::Independent)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Independent => None,
            Verdict::Violated(v) => Some(v),
        }
    }
}

/// Checks complete independence directly from the definition.
///
/// Scan order is deterministic: tree pairs `(p, q)` with `p < q` in
/// lexicographic order; within a pair, shared edges first (ascending), then
/// extra shared vertices (ascending), then terminal pairs (ascending) with
/// the intersecting vertex taken in path order of the first tree.
pub fn verify_definitional(family: &TreeFamily) -> Result<Verdict> {
    family.validate_trees()?;
    let trees = family.trees();
    let s = family.terminals();
    let terminals: Vec<VertexId> = s.to_vec();
    for p in 0..trees.len() {
        for q in (p + 1)..trees.len() {
            for e in trees[p].edges() {
                if trees[q].has_edge(e) {
                    return Ok(Verdict::Violated(Violation::SharedEdge {
                        first_tree: p,
                        second_tree: q,
                        edge: e,
                    }));
                }
            }
            for v in trees[p].vertices() {
                if trees[q].contains_vertex(v) && !s.contains(v) {
                    return Ok(Verdict::Violated(Violation::ExtraSharedVertex {
                        first_tree: p,
                        second_tree: q,
                        vertex: v,
                    }));
                }
            }
            for (ia, &a) in terminals.iter().enumerate() {
                for &b in &terminals[ia + 1..] {
                    let path_p = trees[p].path_between(a, b)?;
                    let path_q = trees[q].path_between(a, b)?;
                    let internal_q: BTreeSet<VertexId> =
                        path_q[1..path_q.len() - 1].iter().copied().collect();
                    for &v in &path_p[1..path_p.len() - 1] {
                        if internal_q.contains(&v) {
                            return Ok(Verdict::Violated(Violation::PathIntersection {
                                first_tree: p,
                                second_tree: q,
                                terminals: (a, b),
                                vertex: v,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Independent)
}

/// Checks the equivalent structural condition: pairwise edge-disjointness,
/// and no vertex internal (tree-degree > 1) in more than one tree.
///
/// Shared edges are scanned before degrees, so when both defects exist the
/// shared edge is reported. Runs in time linear in the total family size;
/// no paths are extracted.
pub fn verify_characterization(family: &TreeFamily) -> Result<Verdict> {
    family.validate_trees()?;
    let trees = family.trees();
    let mut first_owner: BTreeMap<Edge, usize> = BTreeMap::new();
    for (q, t) in trees.iter().enumerate() {
        for e in t.edges() {
            if let Some(&p) = first_owner.get(&e) {
                return Ok(Verdict::Violated(Violation::SharedEdge {
                    first_tree: p,
                    second_tree: q,
                    edge: e,
                }));
            }
            first_owner.insert(e, q);
        }
    }
    // degree > 1 in at most one tree, per vertex
    let degree_maps: Vec<BTreeMap<VertexId, usize>> = trees
        .iter()
        .map(|t| {
            t.adjacency_map()
                .into_iter()
                .map(|(v, adj)| (v, adj.len()))
                .collect()
        })
        .collect();
    for v in family.host().vertices() {
        let mut internal_in: Option<usize> = None;
        for (idx, degs) in degree_maps.iter().enumerate() {
            if degs.get(&v).copied().unwrap_or(0) > 1 {
                if let Some(p) = internal_in {
                    return Ok(Verdict::Violated(Violation::DoubleInternal {
                        first_tree: p,
                        second_tree: idx,
                        vertex: v,
                    }));
                }
                internal_in = Some(idx);
            }
        }
    }
    Ok(Verdict::Independent)
}

/// Upper bound for the packing number obtained from an exact value on the
/// induced terminal subgraph: every tree that leaves `S` consumes at least
/// one non-terminal as an internal vertex, so at most `|V| - |S|` trees can
/// do so.
pub fn induced_upper_bound(g: &Graph, s: &TerminalSet, exact_on_induced: usize) -> usize {
    exact_on_induced + (g.vertex_count() - s.len())
}

/// Gate for constructors: a family is only released if the verifier accepts
/// it, otherwise the construction fails loudly.
pub(crate) fn ensure_independent(family: TreeFamily) -> Result<TreeFamily> {
    family.validate_trees()?;
    match verify_characterization(&family)? {
        Verdict::Independent => Ok(family),
        Verdict::Violated(v) => Err(Error::ConstructionFailedVerification(v)),
    }
}
