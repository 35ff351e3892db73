//! Explicit completely independent tree families in complete graphs, and
//! the exact packing-number formula they realize.
//!
//! The spanning-tree (CIST) construction pairs consecutive vertices and
//! makes each pair the internal spine of its own tree, attaching every
//! foreign pair crosswise so that no edge repeats between trees. Terminal
//! subsets combine those induced trees with one star per outside vertex.
//! Every constructor re-verifies its output and refuses to return an
//! unverified family.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::tree::{SteinerTree, TerminalSet, TreeFamily};
use crate::verify::ensure_independent;
use crate::VertexId;

/// Pairwise-independent spanning trees over the vertices `ids` (ascending,
/// at least 4): one tree per pair `(ids[2t], ids[2t+1])`. In tree `t` the
/// pair is joined by its own edge; a foreign pair `j > t` attaches straight
/// (`first->first`, `second->second`) while `j < t` attaches crossed, which
/// keeps the edge sets disjoint. An odd leftover vertex hangs off the first
/// pair member in every tree and so stays a leaf everywhere.
fn paired_cist_trees(ids: &[VertexId]) -> Vec<SteinerTree> {
    debug_assert!(ids.len() >= 4);
    debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
    let pairs = ids.len() / 2;
    let leftover = (ids.len() % 2 == 1).then(|| ids[ids.len() - 1]);
    let mut trees = Vec::with_capacity(pairs);
    for t in 0..pairs {
        let (p1, p2) = (ids[2 * t], ids[2 * t + 1]);
        let mut edges = vec![Edge::new(p1, p2).unwrap()];
        for j in 0..pairs {
            if j == t {
                continue;
            }
            let (q1, q2) = (ids[2 * j], ids[2 * j + 1]);
            if j > t {
                edges.push(Edge::new(q1, p1).unwrap());
                edges.push(Edge::new(q2, p2).unwrap());
            } else {
                edges.push(Edge::new(q1, p2).unwrap());
                edges.push(Edge::new(q2, p1).unwrap());
            }
        }
        if let Some(v) = leftover {
            edges.push(Edge::new(v, p1).unwrap());
        }
        trees.push(SteinerTree::new(ids.iter().copied(), edges));
    }
    trees
}

/// `floor(n/2)` completely independent spanning trees of `K_n`, `n >= 4`.
pub fn build_cists_complete(n: usize) -> Result<TreeFamily> {
    if n < 4 {
        return Err(Error::TooFewVertices { min: 4, got: n });
    }
    let g = Graph::complete(n)?;
    let ids: Vec<VertexId> = (0..n as VertexId).collect();
    let trees = paired_cist_trees(&ids);
    let terminals = TerminalSet::new(ids)?;
    ensure_independent(TreeFamily::new(g, terminals, trees))
}

/// `n - ceil(|s|/2)` completely independent S-Steiner trees of `K_n`:
/// `floor(|s|/2)` trees inside the terminal set (a single edge or star when
/// `|s| <= 3`) plus one star per outside vertex.
pub fn build_cissts_complete(n: usize, s: &TerminalSet) -> Result<TreeFamily> {
    let g = Graph::complete(n)?;
    s.validate_against(&g)?;
    let terms = s.to_vec();
    let mut trees = match terms.len() {
        2 => vec![SteinerTree::from_edges([Edge::new(terms[0], terms[1])?])],
        3 => vec![SteinerTree::from_edges([
            Edge::new(terms[0], terms[1])?,
            Edge::new(terms[0], terms[2])?,
        ])],
        _ => paired_cist_trees(&terms),
    };
    for v in 0..n as VertexId {
        if s.contains(v) {
            continue;
        }
        trees.push(SteinerTree::from_edges(
            terms.iter().map(|&u| Edge::new(v, u).unwrap()),
        ));
    }
    ensure_independent(TreeFamily::new(g, s.clone(), trees))
}

/// Exact packing number of s-element terminal sets in `K_n`:
/// `n - ceil(s/2)`, for `2 <= s <= n` and `n >= 4`.
pub fn kappa_star_complete(n: usize, s: usize) -> Result<usize> {
    if n < 4 || s < 2 || s > n {
        return Err(Error::OutOfRange(format!(
            "need 2 <= s <= n and n >= 4, got n={n} s={s}"
        )));
    }
    Ok(n - s.div_ceil(2))
}
