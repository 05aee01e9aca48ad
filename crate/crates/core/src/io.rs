//! Line-oriented graph file format.
//!
//! ```text
//! c optional comment, anywhere
//! p mixed <n> <m>
//! e <u> <v>    undirected edge
//! a <u> <v>    arc u -> v
//! ```
//!
//! Vertex ids are 0-based and must stay below `n`; exactly `m` edge
//! records must follow the problem line, and edge ids equal record
//! order. Self-loops are rejected at parse time.

use thiserror::Error;

use crate::graph::{EdgeKind, MixedMultigraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed record")]
    Syntax { line: usize },
    #[error("line {line}: vertex id out of range")]
    IndexOutOfRange { line: usize },
    #[error("line {line}: self-loop")]
    SelfLoop { line: usize },
    #[error("expected {expected} edge records, found {found}")]
    MissingEdges { expected: usize, found: usize },
}

/// Parses the text format above.
pub fn parse_graph(text: &str) -> Result<MixedMultigraph, ParseError> {
    let mut graph: Option<MixedMultigraph> = None;
    let mut expected = 0usize;
    let mut found = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match (graph.as_mut(), fields.as_slice()) {
            (None, ["p", "mixed", n, m]) => {
                let n: usize = n.parse().map_err(|_| ParseError::Syntax { line })?;
                let m: usize = m.parse().map_err(|_| ParseError::Syntax { line })?;
                graph = Some(MixedMultigraph::new(n));
                expected = m;
            }
            (Some(g), [kind @ ("e" | "a"), u, v]) => {
                let u: usize = u.parse().map_err(|_| ParseError::Syntax { line })?;
                let v: usize = v.parse().map_err(|_| ParseError::Syntax { line })?;
                if u >= g.vertex_count() || v >= g.vertex_count() {
                    return Err(ParseError::IndexOutOfRange { line });
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line });
                }
                found += 1;
                if found > expected {
                    return Err(ParseError::Syntax { line });
                }
                if *kind == "e" {
                    g.add_undirected(u, v);
                } else {
                    g.add_directed(u, v);
                }
            }
            _ => return Err(ParseError::Syntax { line }),
        }
    }
    match graph {
        Some(g) if found == expected => Ok(g),
        Some(_) => Err(ParseError::MissingEdges { expected, found }),
        None => Err(ParseError::Syntax { line: 1 }),
    }
}

/// Canonical emission: the problem line followed by one record per edge
/// in id order. `parse_graph(&emit_graph(g))` reproduces `g` exactly.
pub fn emit_graph(g: &MixedMultigraph) -> String {
    let mut out = format!("p mixed {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let tag = match e.kind {
            EdgeKind::Undirected => 'e',
            EdgeKind::Directed => 'a',
        };
        out.push_str(&format!("{tag} {} {}\n", e.endpoints.0, e.endpoints.1));
    }
    out
}
