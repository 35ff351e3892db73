//! Terminal-subset reduction by iterated leaf deletion.
//!
//! Shrinking the terminal set never loses trees: deleting, round by round,
//! every current leaf that is not a (new) terminal turns an S'-Steiner tree
//! into an S-Steiner tree for any S inside S', and no vertex degree ever
//! increases, so complete independence of a family is preserved.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::tree::{SteinerTree, TerminalSet, TreeFamily};
use crate::VertexId;

/// Prunes one tree from terminals `s_old` down to `s_new ⊆ s_old`.
///
/// Each round deletes *all* current non-terminal leaves at once, then
/// recomputes; the loop stops when a round deletes nothing. `s_new == s_old`
/// returns the tree unchanged. Vertex ids are preserved.
pub fn prune_to_subset(
    tree: &SteinerTree,
    s_old: &TerminalSet,
    s_new: &TerminalSet,
) -> Result<SteinerTree> {
    if s_new == s_old {
        return Ok(tree.clone());
    }
    if !s_new.is_subset_of(s_old) {
        return Err(Error::NotASubset);
    }
    let mut vertices: BTreeSet<VertexId> = tree.vertices().collect();
    let mut edges: BTreeSet<Edge> = tree.edges().collect();
    loop {
        let mut degree: BTreeMap<VertexId, usize> = vertices.iter().map(|&v| (v, 0)).collect();
        for e in &edges {
            let (a, b) = e.endpoints();
            *degree.get_mut(&a).unwrap() += 1;
            *degree.get_mut(&b).unwrap() += 1;
        }
        let doomed: Vec<VertexId> = vertices
            .iter()
            .copied()
            .filter(|&v| !s_new.contains(v) && degree[&v] <= 1)
            .collect();
        if doomed.is_empty() {
            break;
        }
        for v in &doomed {
            vertices.remove(v);
        }
        edges.retain(|e| {
            let (a, b) = e.endpoints();
            vertices.contains(&a) && vertices.contains(&b)
        });
    }
    Ok(SteinerTree::new(vertices, edges))
}

/// Prunes every tree of a completely independent family to a terminal
/// subset. The output has the same number of trees and, for well-formed
/// input, is again completely independent over `s_new`.
pub fn prune_family(family: &TreeFamily, s_new: &TerminalSet) -> Result<TreeFamily> {
    if !s_new.is_subset_of(family.terminals()) {
        return Err(Error::NotASubset);
    }
    let trees = family
        .trees()
        .iter()
        .map(|t| prune_to_subset(t, family.terminals(), s_new))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeFamily::new(family.host().clone(), s_new.clone(), trees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::build_cissts_complete;
    use crate::graph::Graph;
    use crate::verify::{verify_characterization, verify_definitional};

    #[test]
    fn star_pruning_drops_removed_leaves() {
        // star over {0,1,2,3} centered at 5 inside K_6
        let t = SteinerTree::from_edges([0, 1, 2, 3].map(|u| Edge::new(5, u).unwrap()));
        let s_old = TerminalSet::new([0, 1, 2, 3]).unwrap();
        let s_new = TerminalSet::new([0, 2]).unwrap();
        let pruned = prune_to_subset(&t, &s_old, &s_new).unwrap();
        let expected =
            SteinerTree::from_edges([Edge::new(5, 0).unwrap(), Edge::new(5, 2).unwrap()]);
        assert_eq!(pruned, expected);
    }

    #[test]
    fn identical_terminal_sets_are_an_identity() {
        let t = SteinerTree::from_edges([Edge::new(0, 1).unwrap()]);
        let s = TerminalSet::new([0, 1]).unwrap();
        assert_eq!(prune_to_subset(&t, &s, &s).unwrap(), t);
    }

    #[test]
    fn chain_pruning_removes_vertices_round_by_round() {
        // path 0 - 10 - 1 - 11 - 2 with terminals {0,1,2}; restricting to
        // {0,1} first deletes 2, then 11.
        let t = SteinerTree::from_edges([
            Edge::new(0, 10).unwrap(),
            Edge::new(10, 1).unwrap(),
            Edge::new(1, 11).unwrap(),
            Edge::new(11, 2).unwrap(),
        ]);
        let s_old = TerminalSet::new([0, 1, 2]).unwrap();
        let s_new = TerminalSet::new([0, 1]).unwrap();
        let pruned = prune_to_subset(&t, &s_old, &s_new).unwrap();
        let expected =
            SteinerTree::from_edges([Edge::new(0, 10).unwrap(), Edge::new(10, 1).unwrap()]);
        assert_eq!(pruned, expected);
    }

    #[test]
    fn non_subset_is_rejected() {
        let t = SteinerTree::from_edges([Edge::new(0, 1).unwrap()]);
        let s_old = TerminalSet::new([0, 1]).unwrap();
        let s_other = TerminalSet::new([0, 2]).unwrap();
        assert!(matches!(
            prune_to_subset(&t, &s_old, &s_other),
            Err(Error::NotASubset)
        ));
    }

    #[test]
    fn pruned_families_stay_independent() {
        let s = TerminalSet::new(0..4).unwrap();
        let family = build_cissts_complete(6, &s).unwrap();
        let s_new = TerminalSet::new([0, 2]).unwrap();
        let pruned = prune_family(&family, &s_new).unwrap();
        assert_eq!(pruned.len(), family.len());
        assert!(verify_characterization(&pruned).unwrap().is_independent());
        assert!(verify_definitional(&pruned).unwrap().is_independent());
    }

    #[test]
    fn single_tree_family_prunes_alone() {
        let g = Graph::complete(4).unwrap();
        let s = TerminalSet::new([0, 1, 2]).unwrap();
        let t = SteinerTree::from_edges([0, 1, 2].map(|u| Edge::new(3, u).unwrap()));
        let f = TreeFamily::new(g, s, vec![t]);
        let s_new = TerminalSet::new([0, 1]).unwrap();
        let pruned = prune_family(&f, &s_new).unwrap();
        assert_eq!(pruned.len(), 1);
        assert!(pruned.trees()[0].is_steiner_tree(pruned.host(), &s_new));
    }

    #[test]
    fn pruning_never_raises_a_degree() {
        let s = TerminalSet::new(0..5).unwrap();
        let family = build_cissts_complete(8, &s).unwrap();
        let s_new = TerminalSet::new([0, 1, 4]).unwrap();
        for t in family.trees() {
            let pruned = prune_to_subset(t, &s, &s_new).unwrap();
            for v in pruned.vertices() {
                assert!(pruned.degree(v) <= t.degree(v));
            }
        }
    }
}
