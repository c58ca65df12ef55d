//! Plain-text graph and pinning files.
//!
//! A graph file holds a `vertices:` header followed by one edge per line:
//!
//! ```text
//! # a path on three vertices
//! vertices: a b c
//! a b
//! b c
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. A pinning file holds
//! one `vertex -> target` line per pinned vertex.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected a `vertices:` header before any edge")]
    MissingHeader { line: usize },
    #[error("no `vertices:` header found")]
    EmptyInput,
    #[error("line {line}: second `vertices:` header")]
    RepeatedHeader { line: usize },
    #[error("line {line}: malformed line {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::EmptyInput => None,
            ParseError::MissingHeader { line }
            | ParseError::RepeatedHeader { line }
            | ParseError::Malformed { line, .. }
            | ParseError::Graph { line, .. } => Some(*line),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses the graph text format, reporting the first offending line.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, Vec<String>)> = None;
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    for (line, content) in content_lines(text) {
        if let Some(rest) = content.strip_prefix("vertices:") {
            if header.is_some() {
                return Err(ParseError::RepeatedHeader { line });
            }
            header = Some((line, rest.split_whitespace().map(str::to_string).collect()));
            continue;
        }
        if header.is_none() {
            return Err(ParseError::MissingHeader { line });
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        match parts.as_slice() {
            [u, v] => edges.push((line, u.to_string(), v.to_string())),
            _ => {
                return Err(ParseError::Malformed {
                    line,
                    text: content.to_string(),
                })
            }
        }
    }
    let (header_line, vertices) = header.ok_or(ParseError::EmptyInput)?;

    let mut declared = BTreeSet::new();
    for v in &vertices {
        if !declared.insert(v.as_str()) {
            return Err(ParseError::Graph {
                line: header_line,
                source: GraphError::DuplicateVertex(v.clone()),
            });
        }
    }
    let mut seen_edges = BTreeSet::new();
    for (line, u, v) in &edges {
        let err = |source| ParseError::Graph {
            line: *line,
            source,
        };
        for end in [u, v] {
            if !declared.contains(end.as_str()) {
                return Err(err(GraphError::UnknownVertex(end.clone())));
            }
        }
        if u == v {
            return Err(err(GraphError::Loop(u.clone())));
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if !seen_edges.insert(key) {
            return Err(err(GraphError::DuplicateEdge(u.clone(), v.clone())));
        }
    }
    Graph::new(vertices, edges.iter().map(|(_, u, v)| (u, v))).map_err(|source| {
        ParseError::Graph {
            line: header_line,
            source,
        }
    })
}

/// Canonical text: sorted header, sorted edges with sorted endpoints.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::from("vertices:");
    for v in g.vertices() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    for (u, v) in g.edge_names() {
        out.push_str(&u);
        out.push(' ');
        out.push_str(&v);
        out.push('\n');
    }
    out
}

/// Parses `vertex -> target` lines.
pub fn parse_pinning(text: &str) -> Result<BTreeMap<String, String>, ParseError> {
    let mut pins = BTreeMap::new();
    for (line, content) in content_lines(text) {
        let malformed = || ParseError::Malformed {
            line,
            text: content.to_string(),
        };
        let (v, target) = content.split_once("->").ok_or_else(malformed)?;
        let (v, target) = (v.trim(), target.trim());
        if v.is_empty()
            || target.is_empty()
            || v.contains(char::is_whitespace)
            || target.contains(char::is_whitespace)
        {
            return Err(malformed());
        }
        if pins.insert(v.to_string(), target.to_string()).is_some() {
            return Err(ParseError::Graph {
                line,
                source: GraphError::DuplicateVertex(v.to_string()),
            });
        }
    }
    Ok(pins)
}

pub fn serialize_pinning(pins: &BTreeMap<String, String>) -> String {
    pins.iter().map(|(v, t)| format!("{v} -> {t}\n")).collect()
}
