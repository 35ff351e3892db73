//! JSON ingestion and rendering for graphs and tree families.
//!
//! Graph files carry `n`, an edge list, and optionally a bipartite size
//! header plus a terminal list. Family files carry one entry per tree with
//! explicit vertex and edge lists. Every invariant violation is rejected
//! with a field-level diagnostic; syntax errors keep serde's line/column
//! information.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteLabeling, Edge, Graph};
use crate::tree::{SteinerTree, TerminalSet, TreeFamily};
use crate::VertexId;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("JSON syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Semantic { field: String, message: String },
}

fn semantic(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Semantic {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bipartite: Option<BipartiteSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terminals: Option<Vec<VertexId>>,
}

#[derive(Serialize, Deserialize)]
struct BipartiteSpec {
    m1: usize,
    m2: usize,
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    trees: Vec<TreeEntry>,
}

#[derive(Serialize, Deserialize)]
struct TreeEntry {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

/// A graph file after validation.
#[derive(Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labeling: Option<BipartiteLabeling>,
    pub terminals: Option<TerminalSet>,
}

pub fn parse_graph_json(text: &str) -> Result<ParsedGraph, FormatError> {
    let file: GraphFile = serde_json::from_str(text)?;
    if file.n == 0 {
        return Err(semantic("n", "vertex count must be positive"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (k, &(u, v)) in file.edges.iter().enumerate() {
        let field = format!("edges[{k}]");
        if u == v {
            return Err(semantic(field, format!("self-loop at vertex {u}")));
        }
        if u as usize >= file.n || v as usize >= file.n {
            return Err(semantic(
                field,
                format!("endpoint out of range for n={}", file.n),
            ));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(semantic(field, format!("duplicate edge {u}-{v}")));
        }
    }
    let graph = Graph::new(file.n, file.edges.iter().copied())
        .map_err(|e| semantic("edges", e.to_string()))?;
    let labeling = match file.bipartite {
        None => None,
        Some(BipartiteSpec { m1, m2 }) => {
            let bl =
                BipartiteLabeling::new(m1, m2).map_err(|e| semantic("bipartite", e.to_string()))?;
            if m1 + m2 != file.n {
                return Err(semantic(
                    "bipartite",
                    format!("m1+m2={} does not match n={}", m1 + m2, file.n),
                ));
            }
            if graph.edge_count() != m1 * m2 {
                return Err(semantic(
                    "bipartite",
                    "edges do not form the full complete bipartite graph",
                ));
            }
            for e in graph.edges() {
                let (a, b) = e.endpoints();
                if (a as usize) >= m1 || (b as usize) < m1 {
                    return Err(semantic(
                        "bipartite",
                        format!("edge {e} does not cross the declared sides"),
                    ));
                }
            }
            Some(bl)
        }
    };
    let terminals = match file.terminals {
        None => None,
        Some(list) => {
            let mut dedup = std::collections::BTreeSet::new();
            for (k, &t) in list.iter().enumerate() {
                let field = format!("terminals[{k}]");
                if t as usize >= file.n {
                    return Err(semantic(field, format!("terminal {t} out of range")));
                }
                if !dedup.insert(t) {
                    return Err(semantic(field, format!("duplicate terminal {t}")));
                }
            }
            Some(TerminalSet::new(list).map_err(|e| semantic("terminals", e.to_string()))?)
        }
    };
    Ok(ParsedGraph {
        graph,
        labeling,
        terminals,
    })
}

pub fn graph_to_json(
    g: &Graph,
    labeling: Option<&BipartiteLabeling>,
    terminals: Option<&TerminalSet>,
) -> String {
    let file = GraphFile {
        n: g.vertex_count(),
        edges: g.edges().map(|e| e.endpoints()).collect(),
        bipartite: labeling.map(|bl| BipartiteSpec {
            m1: bl.m1(),
            m2: bl.m2(),
        }),
        terminals: terminals.map(|s| s.to_vec()),
    };
    serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
}

pub fn parse_family_json(text: &str) -> Result<Vec<SteinerTree>, FormatError> {
    let file: FamilyFile = serde_json::from_str(text)?;
    let mut trees = Vec::with_capacity(file.trees.len());
    for (idx, entry) in file.trees.iter().enumerate() {
        let mut edges = Vec::with_capacity(entry.edges.len());
        for (k, &(u, v)) in entry.edges.iter().enumerate() {
            let e = Edge::new(u, v)
                .map_err(|err| semantic(format!("trees[{idx}].edges[{k}]"), err.to_string()))?;
            edges.push(e);
        }
        trees.push(SteinerTree::new(entry.vertices.iter().copied(), edges));
    }
    Ok(trees)
}

pub fn family_to_json(family: &TreeFamily) -> String {
    let file = FamilyFile {
        trees: family
            .trees()
            .iter()
            .map(|t| TreeEntry {
                vertices: t.vertices().collect(),
                edges: t.edges().map(|e| e.endpoints()).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("family serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let (g, bl) = Graph::complete_bipartite(2, 3).unwrap();
        let s = TerminalSet::new([0, 1]).unwrap();
        let text = graph_to_json(&g, Some(&bl), Some(&s));
        let parsed = parse_graph_json(&text).unwrap();
        assert_eq!(parsed.graph, g);
        assert_eq!(parsed.labeling.unwrap().m2(), 3);
        assert_eq!(parsed.terminals.unwrap(), s);
    }

    #[test]
    fn rejects_structural_problems_with_field_names() {
        let bad = r#"{"n": 3, "edges": [[0, 0]]}"#;
        let err = parse_graph_json(bad).unwrap_err();
        assert!(err.to_string().contains("edges[0]"));

        let bad = r#"{"n": 3, "edges": [[0, 1], [1, 0]]}"#;
        assert!(parse_graph_json(bad)
            .unwrap_err()
            .to_string()
            .contains("duplicate"));

        let bad = r#"{"n": 3, "edges": [[0, 5]]}"#;
        assert!(parse_graph_json(bad)
            .unwrap_err()
            .to_string()
            .contains("out of range"));

        let bad = r#"{"n": 4, "edges": [[0,2],[0,3],[1,2]], "bipartite": {"m1": 2, "m2": 2}}"#;
        assert!(parse_graph_json(bad)
            .unwrap_err()
            .to_string()
            .contains("complete bipartite"));

        let bad = r#"{"n": 3, "edges": [[0,1],[1,2]], "terminals": [0, 0]}"#;
        assert!(parse_graph_json(bad)
            .unwrap_err()
            .to_string()
            .contains("terminals[1]"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_graph_json("{\"n\": 3,").unwrap_err();
        assert!(matches!(err, FormatError::Syntax(_)));
    }

    #[test]
    fn family_round_trip() {
        let s = TerminalSet::new(0..4).unwrap();
        let family = crate::complete::build_cissts_complete(6, &s).unwrap();
        let text = family_to_json(&family);
        let trees = parse_family_json(&text).unwrap();
        assert_eq!(trees, family.trees());
    }
}
