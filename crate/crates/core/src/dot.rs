//! DOT rendering: one color per tree, double circles around terminals.
//! Output is fully deterministic (sorted vertices, sorted edges, fixed
//! palette) so repeated runs produce identical files.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::graph::BipartiteLabeling;
use crate::tree::TreeFamily;
use crate::VertexId;

const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
    "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3",
];

fn color(idx: usize) -> &'static str {
    PALETTE[idx % PALETTE.len()]
}

fn node_label(v: VertexId, labeling: Option<&BipartiteLabeling>) -> String {
    match labeling {
        Some(bl) if (v as usize) < bl.vertex_count() => bl.label(v),
        _ => v.to_string(),
    }
}

fn write_nodes(
    out: &mut String,
    vertices: &BTreeSet<VertexId>,
    family: &TreeFamily,
    labeling: Option<&BipartiteLabeling>,
) {
    for &v in vertices {
        let shape = if family.terminals().contains(v) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(
            out,
            "  v{v} [label=\"{}\", shape={shape}];",
            node_label(v, labeling)
        )
        .unwrap();
    }
}

/// All trees of the family in one drawing, one color per tree.
pub fn family_dot(family: &TreeFamily, labeling: Option<&BipartiteLabeling>) -> String {
    let mut out = String::from("graph family {\n  node [shape=circle];\n");
    let vertices: BTreeSet<VertexId> = family
        .trees()
        .iter()
        .flat_map(|t| t.vertices())
        .chain(family.terminals().iter())
        .collect();
    write_nodes(&mut out, &vertices, family, labeling);
    for (idx, tree) in family.trees().iter().enumerate() {
        writeln!(out, "  // tree {idx}").unwrap();
        for e in tree.edges() {
            let (a, b) = e.endpoints();
            writeln!(out, "  v{a} -- v{b} [color=\"{}\"];", color(idx)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// A single tree of the family, drawn alone in its family color.
pub fn tree_dot(
    family: &TreeFamily,
    index: usize,
    labeling: Option<&BipartiteLabeling>,
) -> Option<String> {
    let tree = family.trees().get(index)?;
    let mut out = format!("graph tree_{index} {{\n  node [shape=circle];\n");
    let vertices: BTreeSet<VertexId> = tree.vertices().collect();
    write_nodes(&mut out, &vertices, family, labeling);
    for e in tree.edges() {
        let (a, b) = e.endpoints();
        writeln!(out, "  v{a} -- v{b} [color=\"{}\"];", color(index)).unwrap();
    }
    out.push_str("}\n");
    Some(out)
}
