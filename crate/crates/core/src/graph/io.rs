//! Text formats for graphs.
//!
//! * DIMACS-style: optional `c` comment lines, a header `p is n m`, then `m`
//!   lines `e u v` with 1-based vertex ids.
//! * JSON: `{"n": 4, "edges": [[0, 1], [1, 2]]}` with 0-based ids.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(value: GraphJson) -> Result<Graph> {
        Graph::new(value.n, value.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p is {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serialization cannot fail")
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), format!("malformed graph record: {e}")))?;
    Graph::try_from(raw)
}

pub fn parse_graph_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "second problem line"));
                }
                let format = fields.next();
                let n = fields.next().and_then(|t| t.parse().ok());
                let m = fields.next().and_then(|t| t.parse().ok());
                match (format, n, m, fields.next()) {
                    (Some("is") | Some("edge"), Some(n), Some(m), None) => header = Some((n, m)),
                    _ => return Err(Error::parse(lineno, "expected header `p is <n> <m>`")),
                }
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(Error::parse(lineno, "edge before header"));
                };
                let ends: Vec<usize> = fields
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| {
                        Error::parse(lineno, "edge endpoints must be positive integers")
                    })?;
                let [u, v] = ends[..] else {
                    return Err(Error::parse(lineno, "expected `e <u> <v>`"));
                };
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::parse(
                        lineno,
                        format!("vertex id out of range 1..={n}"),
                    ));
                }
                if u == v {
                    return Err(Error::parse(lineno, format!("self-loop at vertex {u}")));
                }
                edges.push((lineno, u - 1, v - 1));
            }
            Some(other) => {
                return Err(Error::parse(
                    lineno,
                    format!("unexpected line type {other:?}"),
                ));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::parse(0, "missing header `p is <n> <m>`"));
    };
    if edges.len() != m {
        return Err(Error::parse(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &(lineno, u, v) in &edges {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(
                lineno,
                format!("duplicate edge {} {}", u + 1, v + 1),
            ));
        }
    }
    Graph::new(n, edges.into_iter().map(|(_, u, v)| (u, v)))
}

/// Accepts either format, deciding by the first non-blank character.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_dimacs(text)
    }
}

impl Graph {
    pub fn to_dimacs(&self) -> String {
        to_dimacs(self)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}
