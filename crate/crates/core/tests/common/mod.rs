//! Shared test support: independent brute-force oracles and randomized
//! family generators. The oracles deliberately avoid the solver's
//! enumeration and pruning machinery — trees come from raw edge-subset
//! enumeration and packing compatibility is decided by the definitional
//! verifier — so they can stand as ground truth against it.

// compiled once per test binary; not every binary uses every helper
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use cisst_core::bipartite::{assemble_max_family, build_star_family};
use cisst_core::complete::build_cissts_complete;
use cisst_core::graph::{BipartiteLabeling, Edge, Graph};
use cisst_core::tree::{SteinerTree, TerminalSet, TreeFamily};
use cisst_core::verify::verify_definitional;
use cisst_core::VertexId;

/// Every S-Steiner tree of `g`, by exhaustive edge-subset enumeration.
/// Only usable on hosts with at most 20 edges.
pub fn oracle_all_steiner_trees(g: &Graph, s: &TerminalSet) -> Vec<SteinerTree> {
    let edges: Vec<Edge> = g.edges().collect();
    let m = edges.len();
    assert!(m <= 20, "oracle host too large ({m} edges)");
    let max_edges = g.vertex_count() - 1;
    let mut out = Vec::new();
    for bits in 1u32..(1u32 << m) {
        if bits.count_ones() as usize > max_edges {
            continue;
        }
        let subset = edges
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .map(|(_, &e)| e);
        let t = SteinerTree::from_edges(subset);
        if t.is_steiner_tree(g, s) {
            out.push(t);
        }
    }
    out
}

/// Exact packing number by maximum clique over the oracle trees, with the
/// definitional verifier as the pairwise compatibility test.
pub fn oracle_kappa_star(g: &Graph, s: &TerminalSet) -> usize {
    let trees = oracle_all_steiner_trees(g, s);
    let n = trees.len();
    let mut compatible = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let pair = TreeFamily::new(
                g.clone(),
                s.clone(),
                vec![trees[i].clone(), trees[j].clone()],
            );
            let ok = verify_definitional(&pair).unwrap().is_independent();
            compatible[i][j] = ok;
            compatible[j][i] = ok;
        }
    }
    fn extend(compatible: &[Vec<bool>], chosen: &mut Vec<usize>, start: usize, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for idx in start..compatible.len() {
            if chosen.iter().all(|&c| compatible[c][idx]) {
                chosen.push(idx);
                extend(compatible, chosen, idx + 1, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    extend(&compatible, &mut Vec::new(), 0, &mut best);
    best
}

/// Connected random graph on `n` vertices, rejection-sampled.
pub fn random_connected_graph(rng: &mut StdRng, n: usize) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n as VertexId {
            for v in (u + 1)..n as VertexId {
                if rng.random_bool(0.55) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// A valid family drawn from the construction catalog: complete-graph
/// families, bipartite assemblies, and one-sided star families.
pub fn random_valid_family(rng: &mut StdRng) -> TreeFamily {
    match rng.random_range(0..3) {
        0 => {
            let n = rng.random_range(4..=9);
            let s_len = rng.random_range(2..=n.min(8));
            let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
            shuffle(rng, &mut ids);
            let s = TerminalSet::new(ids[..s_len].iter().copied()).unwrap();
            build_cissts_complete(n, &s).unwrap()
        }
        1 => {
            let m1 = rng.random_range(2..=4);
            let m2 = rng.random_range(m1..=5);
            let bl = BipartiteLabeling::new(m1, m2).unwrap();
            let i = rng.random_range(1..=m1.min(3));
            let ymax = (m2).min(3);
            let j = rng.random_range(1..=ymax);
            let s =
                TerminalSet::new((1..=i).map(|t| bl.x(t)).chain((1..=j).map(|t| bl.y(t)))).unwrap();
            assemble_max_family(&bl, &s).unwrap()
        }
        _ => {
            let m1 = rng.random_range(2..=4);
            let m2 = rng.random_range(m1..=5);
            let bl = BipartiteLabeling::new(m1, m2).unwrap();
            let s = if rng.random_bool(0.5) {
                let len = rng.random_range(2..=m1);
                TerminalSet::new((1..=len).map(|t| bl.x(t))).unwrap()
            } else {
                let len = rng.random_range(2..=m2);
                TerminalSet::new((1..=len).map(|t| bl.y(t))).unwrap()
            };
            build_star_family(&bl, &s).unwrap()
        }
    }
}

fn shuffle(rng: &mut StdRng, items: &mut [VertexId]) {
    for k in (1..items.len()).rev() {
        let j = rng.random_range(0..=k);
        items.swap(k, j);
    }
}

/// Applies one family-level mutation that keeps every tree individually a
/// valid Steiner tree but may (or may not) break independence. Returns
/// `None` when the drawn mutation does not apply to this family.
pub fn mutate_family(rng: &mut StdRng, family: &TreeFamily) -> Option<TreeFamily> {
    if family.len() < 2 {
        return None;
    }
    let host = family.host();
    let s = family.terminals();
    let mut trees: Vec<SteinerTree> = family.trees().to_vec();
    match rng.random_range(0..3) {
        // duplicate one tree over another: guaranteed shared edges
        0 => {
            let p = rng.random_range(0..trees.len());
            let mut q = rng.random_range(0..trees.len());
            if p == q {
                q = (q + 1) % trees.len();
            }
            trees[q] = trees[p].clone();
        }
        // subdivide an edge of one tree through a vertex that is internal
        // elsewhere: both endpoints must be host-adjacent to the relay
        1 => {
            let q = rng.random_range(0..trees.len());
            let donor = (q + 1) % trees.len();
            let relay = trees[donor]
                .internal_vertices()
                .into_iter()
                .find(|&w| !s.contains(w) && !trees[q].contains_vertex(w))?;
            let edge = trees[q].edges().find(|e| {
                let (a, b) = e.endpoints();
                host.has_edge(a, relay) && host.has_edge(b, relay)
            })?;
            let (a, b) = edge.endpoints();
            let mut edges: Vec<Edge> = trees[q].edges().filter(|e| *e != edge).collect();
            edges.push(Edge::new(a, relay).unwrap());
            edges.push(Edge::new(relay, b).unwrap());
            let mut vertices: Vec<VertexId> = trees[q].vertices().collect();
            vertices.push(relay);
            trees[q] = SteinerTree::new(vertices, edges);
        }
        // rebuild one tree as a star at another tree's internal vertex
        // (complete hosts only: the star needs every terminal adjacent)
        _ => {
            let q = rng.random_range(0..trees.len());
            let donor = (q + 1) % trees.len();
            let center = trees[donor]
                .internal_vertices()
                .into_iter()
                .find(|&w| !s.contains(w) && s.iter().all(|t| host.has_edge(w, t)))?;
            trees[q] = SteinerTree::from_edges(s.iter().map(|t| Edge::new(center, t).unwrap()));
        }
    }
    Some(TreeFamily::new(host.clone(), s.clone(), trees))
}

/// The induced subgraph on `keep`, relabeled onto dense ids in the order
/// given. Returns the graph and the id map (new -> old).
pub fn induced_subgraph(g: &Graph, keep: &[VertexId]) -> (Graph, Vec<VertexId>) {
    let mut new_of = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in keep.iter().enumerate() {
        new_of[old as usize] = new;
    }
    let mut edges = Vec::new();
    for e in g.edges() {
        let (a, b) = e.endpoints();
        let (na, nb) = (new_of[a as usize], new_of[b as usize]);
        if na != usize::MAX && nb != usize::MAX {
            edges.push((na as VertexId, nb as VertexId));
        }
    }
    (Graph::new(keep.len(), edges).unwrap(), keep.to_vec())
}

/// Canonical terminal set `x_1..x_i, y_1..y_{s-i}`.
pub fn split_terminals(bl: &BipartiteLabeling, i: usize, s: usize) -> TerminalSet {
    TerminalSet::new(
        (1..=i)
            .map(|t| bl.x(t))
            .chain((1..=(s - i)).map(|t| bl.y(t))),
    )
    .unwrap()
}
