//! Terminal sets, candidate Steiner trees, and tree families.
//!
//! [`SteinerTree`] is a plain container: it stores a vertex set and an edge
//! set without enforcing anything at construction time, so corrupted inputs
//! are representable. [`SteinerTree::validate`] decides whether the
//! structure is an actual S-Steiner tree of a host graph and names the
//! first violated invariant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::VertexId;

/// The set `S` of required terminals; always at least two vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TerminalSet {
    members: BTreeSet<VertexId>,
}

impl TerminalSet {
    pub fn new(members: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let members: BTreeSet<VertexId> = members.into_iter().collect();
        if members.len() < 2 {
            return Err(Error::TooFewTerminals { got: members.len() });
        }
        Ok(TerminalSet { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least two members
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.members.iter().copied().collect()
    }

    pub fn is_subset_of(&self, other: &TerminalSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// All members must be valid vertex ids of `g`.
    pub fn validate_against(&self, g: &Graph) -> Result<()> {
        for &v in &self.members {
            if v as usize >= g.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: g.vertex_count(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for TerminalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// The first structural invariant a candidate tree violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TreeDefect {
    #[error("vertex {vertex} out of range for a host on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {edge} has an endpoint outside the tree's vertex set")]
    EdgeOutsideVertexSet { edge: Edge },
    #[error("edge {edge} is not an edge of the host graph")]
    EdgeNotInHost { edge: Edge },
    #[error("edge count {edges} does not equal vertex count {vertices} minus one")]
    WrongEdgeCount { edges: usize, vertices: usize },
    #[error("the tree is not connected")]
    Disconnected,
    #[error("terminal {vertex} is missing from the tree")]
    MissingTerminal { vertex: VertexId },
    #[error("vertex {vertex} is a leaf but not a terminal")]
    NonTerminalLeaf { vertex: VertexId },
}

/// A candidate S-Steiner tree: an explicit vertex set plus an edge set.
///
/// The vertex set is stored rather than inferred from the edges so that a
/// degenerate single-vertex structure stays representable (it is then
/// rejected by the terminal-set rules, which live in [`TerminalSet`]).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SteinerTree {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
}

impl SteinerTree {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        SteinerTree {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    /// Builds a tree whose vertex set is exactly the endpoints of `edges`.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let mut vertices = BTreeSet::new();
        for e in &edges {
            let (a, b) = e.endpoints();
            vertices.insert(a);
            vertices.insert(b);
        }
        SteinerTree { vertices, edges }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    /// Vertices of degree exactly one.
    pub fn leaves(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.degree(v) == 1)
            .collect()
    }

    /// Vertices of degree at least two.
    pub fn internal_vertices(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.degree(v) >= 2)
            .collect()
    }

    pub(crate) fn adjacency_map(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &self.edges {
            let (a, b) = e.endpoints();
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// Checks every S-Steiner-tree invariant against the host and terminal
    /// set, reporting the first violation. Connectivity is decided with a
    /// union-find over the tree's own edges.
    pub fn validate(&self, g: &Graph, s: &TerminalSet) -> std::result::Result<(), TreeDefect> {
        let n = g.vertex_count();
        for &v in &self.vertices {
            if v as usize >= n {
                return Err(TreeDefect::VertexOutOfRange { vertex: v, n });
            }
        }
        for e in &self.edges {
            let (a, b) = e.endpoints();
            if !self.vertices.contains(&a) || !self.vertices.contains(&b) {
                return Err(TreeDefect::EdgeOutsideVertexSet { edge: *e });
            }
            if !g.contains_edge(*e) {
                return Err(TreeDefect::EdgeNotInHost { edge: *e });
            }
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(TreeDefect::WrongEdgeCount {
                edges: self.edges.len(),
                vertices: self.vertices.len(),
            });
        }
        if !self.connected_by_union_find() {
            return Err(TreeDefect::Disconnected);
        }
        for t in s.iter() {
            if !self.vertices.contains(&t) {
                return Err(TreeDefect::MissingTerminal { vertex: t });
            }
        }
        for &v in &self.vertices {
            if self.degree(v) == 1 && !s.contains(v) {
                return Err(TreeDefect::NonTerminalLeaf { vertex: v });
            }
        }
        Ok(())
    }

    pub fn is_steiner_tree(&self, g: &Graph, s: &TerminalSet) -> bool {
        self.validate(g, s).is_ok()
    }

    fn connected_by_union_find(&self) -> bool {
        let ids: Vec<VertexId> = self.vertices.iter().copied().collect();
        if ids.is_empty() {
            return false;
        }
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = ids.len();
        for e in &self.edges {
            let (a, b) = e.endpoints();
            let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components == 1
    }

    /// The unique path between two tree vertices, as a vertex sequence.
    /// `a == b` yields the single-vertex sequence.
    pub fn path_between(&self, a: VertexId, b: VertexId) -> Result<Vec<VertexId>> {
        if !self.vertices.contains(&a) {
            return Err(Error::MissingVertex(a));
        }
        if !self.vertices.contains(&b) {
            return Err(Error::MissingVertex(b));
        }
        if a == b {
            return Ok(vec![a]);
        }
        let adj = self.adjacency_map();
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([a]);
        parent.insert(a, a);
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for &w in &adj[&v] {
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(w) {
                    slot.insert(v);
                    queue.push_back(w);
                }
            }
        }
        if !parent.contains_key(&b) {
            return Err(Error::Internal(format!(
                "no path between {a} and {b}; the structure is not a tree"
            )));
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }
}

/// An ordered family of candidate trees over one host and terminal set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeFamily {
    host: Graph,
    terminals: TerminalSet,
    trees: Vec<SteinerTree>,
}

impl TreeFamily {
    pub fn new(host: Graph, terminals: TerminalSet, trees: Vec<SteinerTree>) -> Self {
        TreeFamily {
            host,
            terminals,
            trees,
        }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn terminals(&self) -> &TerminalSet {
        &self.terminals
    }

    pub fn trees(&self) -> &[SteinerTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Every member must be a valid Steiner tree for the shared host and
    /// terminals; the error names the first offending tree.
    pub fn validate_trees(&self) -> Result<()> {
        for (index, t) in self.trees.iter().enumerate() {
            if let Err(defect) = t.validate(&self.host, &self.terminals) {
                return Err(Error::MalformedTree { index, defect });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(center: VertexId, leaves: &[VertexId]) -> SteinerTree {
        SteinerTree::from_edges(leaves.iter().map(|&u| Edge::new(center, u).unwrap()))
    }

    #[test]
    fn terminal_set_needs_two_vertices() {
        assert!(matches!(
            TerminalSet::new([3]),
            Err(Error::TooFewTerminals { got: 1 })
        ));
        assert!(matches!(
            TerminalSet::new([3, 3]),
            Err(Error::TooFewTerminals { got: 1 })
        ));
        assert_eq!(TerminalSet::new([4, 2]).unwrap().to_vec(), vec![2, 4]);
    }

    #[test]
    fn star_inside_complete_graph_is_steiner_tree() {
        let g = Graph::complete(6).unwrap();
        let s = TerminalSet::new([0, 1, 2, 3]).unwrap();
        let t = star(4, &[0, 1, 2, 3]);
        assert!(t.is_steiner_tree(&g, &s));
    }

    #[test]
    fn non_terminal_leaf_is_rejected() {
        let g = Graph::complete(6).unwrap();
        let s = TerminalSet::new([0, 1, 2]).unwrap();
        let t = star(4, &[0, 1, 2, 5]); // 5 is a leaf but not a terminal
        assert_eq!(
            t.validate(&g, &s),
            Err(TreeDefect::NonTerminalLeaf { vertex: 5 })
        );
        assert!(!t.is_steiner_tree(&g, &s));
    }

    #[test]
    fn missing_terminal_is_rejected() {
        let g = Graph::complete(6).unwrap();
        let s = TerminalSet::new([0, 1, 2, 3]).unwrap();
        let t = star(4, &[0, 1, 2]);
        assert_eq!(
            t.validate(&g, &s),
            Err(TreeDefect::MissingTerminal { vertex: 3 })
        );
    }

    #[test]
    fn cycle_and_disconnection_are_rejected() {
        let g = Graph::complete(6).unwrap();
        let s = TerminalSet::new([0, 1, 2]).unwrap();
        let cycle = SteinerTree::from_edges([
            Edge::new(0, 1).unwrap(),
            Edge::new(1, 2).unwrap(),
            Edge::new(2, 0).unwrap(),
        ]);
        assert_eq!(
            cycle.validate(&g, &s),
            Err(TreeDefect::WrongEdgeCount {
                edges: 3,
                vertices: 3
            })
        );
        // same edge count as a tree on 4 vertices, but split in two pieces
        let split = SteinerTree::new(
            [0, 1, 2, 3],
            [Edge::new(0, 1).unwrap(), Edge::new(0, 2).unwrap()],
        );
        assert!(matches!(
            split.validate(&g, &s),
            Err(TreeDefect::WrongEdgeCount { .. })
        ));
        let split = SteinerTree::new(
            [0, 1, 2, 3],
            [
                Edge::new(0, 1).unwrap(),
                Edge::new(0, 2).unwrap(),
                Edge::new(0, 3).unwrap(),
                Edge::new(1, 2).unwrap(),
            ],
        );
        assert!(matches!(
            split.validate(&g, &s),
            Err(TreeDefect::WrongEdgeCount { .. })
        ));
    }

    #[test]
    fn edge_not_in_host_is_rejected() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = TerminalSet::new([0, 2]).unwrap();
        let t = SteinerTree::from_edges([Edge::new(0, 2).unwrap()]);
        assert_eq!(
            t.validate(&g, &s),
            Err(TreeDefect::EdgeNotInHost {
                edge: Edge::new(0, 2).unwrap()
            })
        );
    }

    #[test]
    fn path_in_star_goes_through_center() {
        let t = star(7, &[1, 3, 5]);
        assert_eq!(t.path_between(1, 5).unwrap(), vec![1, 7, 5]);
        assert_eq!(t.path_between(3, 3).unwrap(), vec![3]);
        assert!(matches!(t.path_between(1, 9), Err(Error::MissingVertex(9))));
    }
}
