//! Cross-cutting invariants, mostly property-based: path symmetry, leaf
//! pruning, witness replay, connectivity cross-checks, and format round
//! trips.

mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

use cisst_core::complete::build_cissts_complete;
use cisst_core::graph::Graph;
use cisst_core::json::{family_to_json, graph_to_json, parse_family_json, parse_graph_json};
use cisst_core::prune::prune_family;
use cisst_core::solver::enumerate_steiner_trees;
use cisst_core::tree::{SteinerTree, TerminalSet};
use cisst_core::verify::{verify_characterization, verify_definitional};
use cisst_core::VertexId;

use common::{mutate_family, oracle_all_steiner_trees, random_valid_family};

/// BFS reachability count, independent of the union-find used by
/// `SteinerTree::validate`.
fn bfs_reaches_all(tree: &SteinerTree) -> bool {
    let vertices: Vec<VertexId> = tree.vertices().collect();
    let Some(&start) = vertices.first() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for e in tree.edges() {
            if let Some(w) = e.other(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    seen.len() == vertices.len()
}

proptest! {
    #[test]
    fn tree_paths_reverse_cleanly(n in 4usize..10, s_len in 2usize..6, seed in 0u64..500) {
        let s_len = s_len.min(n);
        let s = TerminalSet::new(0..s_len as VertexId).unwrap();
        let family = build_cissts_complete(n, &s).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let tree = &family.trees()[rng.random_range(0..family.len())];
        let verts: Vec<VertexId> = tree.vertices().collect();
        let a = verts[rng.random_range(0..verts.len())];
        let b = verts[rng.random_range(0..verts.len())];
        let forward = tree.path_between(a, b).unwrap();
        let mut backward = tree.path_between(b, a).unwrap();
        backward.reverse();
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn pruning_preserves_independence_and_degrees(
        n in 5usize..10,
        s_len in 3usize..7,
        keep in 2usize..5,
        seed in 0u64..500,
    ) {
        let s_len = s_len.min(n);
        let keep = keep.min(s_len - 1).max(2);
        let s = TerminalSet::new(0..s_len as VertexId).unwrap();
        let family = build_cissts_complete(n, &s).unwrap();
        let mut ids: Vec<VertexId> = s.to_vec();
        let mut rng = StdRng::seed_from_u64(seed);
        for k in (1..ids.len()).rev() {
            let j = rng.random_range(0..=k);
            ids.swap(k, j);
        }
        let s_new = TerminalSet::new(ids[..keep].iter().copied()).unwrap();
        let pruned = prune_family(&family, &s_new).unwrap();
        prop_assert_eq!(pruned.len(), family.len());
        prop_assert!(verify_definitional(&pruned).unwrap().is_independent());
        prop_assert!(verify_characterization(&pruned).unwrap().is_independent());
        for (before, after) in family.trees().iter().zip(pruned.trees()) {
            for v in after.vertices() {
                prop_assert!(after.degree(v) <= before.degree(v));
            }
        }
    }

    #[test]
    fn violations_always_replay(seed in 0u64..800) {
        let mut rng = StdRng::seed_from_u64(seed);
        let family = random_valid_family(&mut rng);
        let family = mutate_family(&mut rng, &family).unwrap_or(family);
        for verdict in [
            verify_definitional(&family).unwrap(),
            verify_characterization(&family).unwrap(),
        ] {
            if let Some(v) = verdict.violation() {
                prop_assert!(v.replay(&family), "witness failed to replay: {}", v);
            }
        }
    }

    #[test]
    fn validation_connectivity_matches_bfs(seed in 0u64..500) {
        // random host edge subsets: union-find acceptance must agree with
        // BFS reachability whenever the other tree invariants hold
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.random_range(4..8usize);
        let g = Graph::complete(n).unwrap();
        let s = TerminalSet::new([0, 1]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        let subset: Vec<_> = edges
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.4))
            .collect();
        let t = SteinerTree::from_edges(subset);
        if t.vertex_count() > 0 && t.edge_count() + 1 == t.vertex_count() {
            let by_validate = t.validate(&g, &s).is_ok();
            if by_validate {
                prop_assert!(bfs_reaches_all(&t));
            }
            if !bfs_reaches_all(&t) {
                prop_assert!(!by_validate);
            }
        }
    }

    #[test]
    fn every_tree_edge_lies_on_a_terminal_path(n in 4usize..9, s_len in 2usize..6) {
        // equivalent form of the all-leaves-are-terminals condition: no
        // edge dangles off the terminal-to-terminal routing structure
        let s_len = s_len.min(n);
        let s = TerminalSet::new(0..s_len as VertexId).unwrap();
        let family = build_cissts_complete(n, &s).unwrap();
        let terms = s.to_vec();
        for tree in family.trees() {
            let mut covered = BTreeSet::new();
            for (k, &a) in terms.iter().enumerate() {
                for &b in &terms[k + 1..] {
                    let path = tree.path_between(a, b).unwrap();
                    for pair in path.windows(2) {
                        covered.insert(cisst_core::graph::Edge::new(pair[0], pair[1]).unwrap());
                    }
                }
            }
            for e in tree.edges() {
                prop_assert!(covered.contains(&e), "edge {} off every terminal path", e);
            }
        }
    }

    #[test]
    fn graph_json_round_trips(n in 2usize..10, seed in 0u64..500) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n as VertexId {
            for v in (u + 1)..n as VertexId {
                if rng.random_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        let text = graph_to_json(&g, None, None);
        let parsed = parse_graph_json(&text).unwrap();
        prop_assert_eq!(parsed.graph, g);
    }

    #[test]
    fn family_json_round_trips(n in 4usize..10, s_len in 2usize..6) {
        let s_len = s_len.min(n);
        let s = TerminalSet::new(0..s_len as VertexId).unwrap();
        let family = build_cissts_complete(n, &s).unwrap();
        let trees = parse_family_json(&family_to_json(&family)).unwrap();
        prop_assert_eq!(trees, family.trees());
    }
}

#[test]
fn enumeration_matches_the_subset_oracle() {
    // hosts small enough for raw edge-subset enumeration
    let cases: Vec<(Graph, TerminalSet)> = vec![
        (
            Graph::complete(4).unwrap(),
            TerminalSet::new([0, 1]).unwrap(),
        ),
        (Graph::complete(4).unwrap(), TerminalSet::new(0..4).unwrap()),
        (
            Graph::complete(5).unwrap(),
            TerminalSet::new([0, 2, 4]).unwrap(),
        ),
        (
            Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
            TerminalSet::new([0, 2]).unwrap(),
        ),
        (
            Graph::complete_bipartite(2, 3).unwrap().0,
            TerminalSet::new([0, 1]).unwrap(),
        ),
    ];
    for (g, s) in cases {
        let mask = vec![true; g.vertex_count()];
        let enumerated = enumerate_steiner_trees(&g, &s, &mask).unwrap();
        let mut oracle = oracle_all_steiner_trees(&g, &s);
        let mut sorted = enumerated.clone();
        sorted.sort_by_key(|t| t.edges().collect::<Vec<_>>());
        oracle.sort_by_key(|t| t.edges().collect::<Vec<_>>());
        assert_eq!(sorted.len(), oracle.len());
        assert_eq!(sorted, oracle);
        // enumeration order is canonical: ascending edge counts
        for pair in enumerated.windows(2) {
            assert!(pair[0].edge_count() <= pair[1].edge_count());
        }
    }
}

#[test]
fn adjacent_pair_count_in_k4_is_five() {
    let g = Graph::complete(4).unwrap();
    let s = TerminalSet::new([0, 1]).unwrap();
    assert_eq!(oracle_all_steiner_trees(&g, &s).len(), 5);
}
