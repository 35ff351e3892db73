//! Simple undirected graphs over dense integer vertex ids, plus the
//! fixed bipartite labeling used by the complete-bipartite constructions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::VertexId;

/// An undirected edge. Endpoints are stored sorted, so two edges over the
/// same vertex pair always compare equal regardless of construction order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    a: VertexId,
    b: VertexId,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Result<Self> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(if u < v {
            Edge { a: u, b: v }
        } else {
            Edge { a: v, b: u }
        })
    }

    /// Endpoints in ascending order.
    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.a, self.b)
    }

    pub fn touches(self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(self, v: VertexId) -> Option<VertexId> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
    adjacency: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges, and endpoints outside `0..n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewVertices { min: 1, got: 0 });
        }
        let mut set = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            let e = Edge::new(u, v)?;
            let (a, b) = e.endpoints();
            if b as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: b, n });
            }
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e));
            }
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: set,
            adjacency,
        })
    }

    /// The complete graph on `n >= 1` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewVertices { min: 1, got: 0 });
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u as VertexId, v as VertexId));
            }
        }
        Self::new(n, edges)
    }

    /// The complete bipartite graph with sides of size `m1 <= m2`, together
    /// with the labeling that fixes which vertex ids form which side.
    pub fn complete_bipartite(m1: usize, m2: usize) -> Result<(Self, BipartiteLabeling)> {
        let labeling = BipartiteLabeling::new(m1, m2)?;
        let mut edges = Vec::with_capacity(m1 * m2);
        for i in 1..=m1 {
            for j in 1..=m2 {
                edges.push((labeling.x(i), labeling.y(j)));
            }
        }
        let g = Self::new(m1 + m2, edges)?;
        Ok((g, labeling))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.n as VertexId
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Symmetric adjacency query; false for out-of-range ids or `u == v`.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match Edge::new(u, v) {
            Ok(e) => self.edges.contains(&e),
            Err(_) => false,
        }
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0 as VertexId];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// A proper 2-coloring `(X, Y)` if the graph is bipartite, `None`
    /// otherwise. In each connected component the smallest vertex goes to
    /// `X`, so the result is deterministic.
    pub fn bipartition(&self) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
        let mut color = vec![None::<bool>; self.n];
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(true);
            let mut stack = vec![root as VertexId];
            while let Some(v) = stack.pop() {
                let cv = color[v as usize].unwrap();
                for &w in self.neighbors(v) {
                    match color[w as usize] {
                        None => {
                            color[w as usize] = Some(!cv);
                            stack.push(w);
                        }
                        Some(cw) if cw == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (v, c) in color.iter().enumerate() {
            if *c == Some(true) {
                xs.push(v as VertexId);
            } else {
                ys.push(v as VertexId);
            }
        }
        Some((xs, ys))
    }
}

/// Which side of a bipartition a vertex belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    X,
    Y,
}

/// Names the sides of `K_{m1,m2}`: side `X` holds `x_1..x_m1` mapped to ids
/// `0..m1`, side `Y` holds `y_1..y_m2` mapped to ids `m1..m1+m2`. Indices in
/// the `x_i`/`y_j` notation are 1-based throughout.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BipartiteLabeling {
    m1: usize,
    m2: usize,
}

impl BipartiteLabeling {
    pub fn new(m1: usize, m2: usize) -> Result<Self> {
        if m1 < 2 || m1 > m2 {
            return Err(Error::InvalidBipartiteSizes { m1, m2 });
        }
        Ok(BipartiteLabeling { m1, m2 })
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.m2
    }

    pub fn vertex_count(&self) -> usize {
        self.m1 + self.m2
    }

    /// Vertex id of `x_i`, `1 <= i <= m1`.
    pub fn x(&self, i: usize) -> VertexId {
        assert!(i >= 1 && i <= self.m1, "x index {i} out of 1..={}", self.m1);
        (i - 1) as VertexId
    }

    /// Vertex id of `y_j`, `1 <= j <= m2`.
    pub fn y(&self, j: usize) -> VertexId {
        assert!(j >= 1 && j <= self.m2, "y index {j} out of 1..={}", self.m2);
        (self.m1 + j - 1) as VertexId
    }

    pub fn side(&self, v: VertexId) -> Side {
        if (v as usize) < self.m1 {
            Side::X
        } else {
            Side::Y
        }
    }

    /// 1-based position of `v` within side X, if it lies there.
    pub fn x_index(&self, v: VertexId) -> Option<usize> {
        ((v as usize) < self.m1).then(|| v as usize + 1)
    }

    /// 1-based position of `v` within side Y, if it lies there.
    pub fn y_index(&self, v: VertexId) -> Option<usize> {
        let v = v as usize;
        (v >= self.m1 && v < self.m1 + self.m2).then(|| v - self.m1 + 1)
    }

    pub fn x_ids(&self) -> Vec<VertexId> {
        (1..=self.m1).map(|i| self.x(i)).collect()
    }

    pub fn y_ids(&self) -> Vec<VertexId> {
        (1..=self.m2).map(|j| self.y(j)).collect()
    }

    /// Human-readable label, e.g. `x3` or `y1`.
    pub fn label(&self, v: VertexId) -> String {
        match self.side(v) {
            Side::X => format!("x{}", self.x_index(v).unwrap()),
            Side::Y => format!("y{}", self.y_index(v).unwrap()),
        }
    }

    /// Parses `x3` / `y1` style labels back to vertex ids.
    pub fn parse_label(&self, token: &str) -> Result<VertexId> {
        let err = || Error::OutOfRange(format!("invalid bipartite label {token:?}"));
        let (side, rest) = token.split_at(1);
        let idx: usize = rest.parse().map_err(|_| err())?;
        match side {
            "x" if (1..=self.m1).contains(&idx) => Ok(self.x(idx)),
            "y" if (1..=self.m2).contains(&idx) => Ok(self.y(idx)),
            _ => Err(err()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_edge_counts() {
        assert_eq!(Graph::complete(1).unwrap().edge_count(), 0);
        assert_eq!(Graph::complete(4).unwrap().edge_count(), 6);
        // C(9,2) counted by hand: 9*8/2.
        assert_eq!(Graph::complete(9).unwrap().edge_count(), 36);
    }

    #[test]
    fn complete_graph_rejects_zero() {
        assert!(matches!(
            Graph::complete(0),
            Err(Error::TooFewVertices { .. })
        ));
    }

    #[test]
    fn complete_bipartite_edge_counts() {
        let (g, _) = Graph::complete_bipartite(2, 2).unwrap();
        assert_eq!(g.edge_count(), 4);
        let (g, _) = Graph::complete_bipartite(5, 6).unwrap();
        assert_eq!(g.edge_count(), 30);
        let (g, _) = Graph::complete_bipartite(3, 5).unwrap();
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn complete_bipartite_rejects_bad_sizes() {
        assert!(matches!(
            Graph::complete_bipartite(1, 5),
            Err(Error::InvalidBipartiteSizes { .. })
        ));
        assert!(matches!(
            Graph::complete_bipartite(4, 3),
            Err(Error::InvalidBipartiteSizes { .. })
        ));
    }

    #[test]
    fn graph_rejects_invalid_edges() {
        assert!(matches!(
            Graph::new(3, vec![(0, 0)]),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            Graph::new(3, vec![(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            Graph::new(3, vec![(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn labeling_maps_and_parses() {
        let bl = BipartiteLabeling::new(2, 3).unwrap();
        assert_eq!(bl.x(1), 0);
        assert_eq!(bl.x(2), 1);
        assert_eq!(bl.y(1), 2);
        assert_eq!(bl.y(3), 4);
        assert_eq!(bl.side(1), Side::X);
        assert_eq!(bl.side(2), Side::Y);
        assert_eq!(bl.label(4), "y3");
        assert_eq!(bl.parse_label("x2").unwrap(), 1);
        assert_eq!(bl.parse_label("y1").unwrap(), 2);
        assert!(bl.parse_label("y4").is_err());
        assert!(bl.parse_label("z1").is_err());
    }

    #[test]
    fn bipartition_of_complete_bipartite() {
        let (g, bl) = Graph::complete_bipartite(3, 4).unwrap();
        let (xs, ys) = g.bipartition().unwrap();
        assert_eq!(xs, bl.x_ids());
        assert_eq!(ys, bl.y_ids());
        assert!(Graph::complete(3).unwrap().bipartition().is_none());
    }
}
