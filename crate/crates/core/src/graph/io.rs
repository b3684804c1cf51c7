//! Plain edge-list format: a header line `n m`, then `m` lines `u v`.

use super::{Graph, GraphError};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    VertexOutOfRange(usize),
    EdgeCount { declared: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {}", describe(.kind))]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Syntax(s) => s.clone(),
        ParseErrorKind::SelfLoop(v) => format!("self-loop at vertex {v}"),
        ParseErrorKind::DuplicateEdge(u, v) => format!("duplicate edge ({u}, {v})"),
        ParseErrorKind::VertexOutOfRange(v) => format!("vertex id {v} >= n"),
        ParseErrorKind::EdgeCount { declared, found } => {
            format!("header declares {declared} edges, found {found}")
        }
    }
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_ascii_whitespace();
    let mut num = || -> Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| {
            err(
                line_no,
                ParseErrorKind::Syntax("expected two integers".into()),
            )
        })?;
        tok.parse().map_err(|_| {
            err(
                line_no,
                ParseErrorKind::Syntax(format!("bad integer {tok:?}")),
            )
        })
    };
    let a = num()?;
    let b = num()?;
    if it.next().is_some() {
        return Err(err(
            line_no,
            ParseErrorKind::Syntax("trailing tokens".into()),
        ));
    }
    Ok((a, b))
}

/// Parses an edge list. Edges may be listed as `u v` or `v u`; blank
/// lines are skipped. Errors carry a 1-based line number.
pub fn read_edge_list(text: &[u8]) -> Result<Graph, ParseError> {
    let text = std::str::from_utf8(text)
        .map_err(|_| err(1, ParseErrorKind::Syntax("input is not UTF-8".into())))?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, ParseErrorKind::Syntax("missing header".into())))?;
    let (n, m) = two_numbers(hline, header)?;
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (no, line) in lines {
        last = no;
        let (u, v) = two_numbers(no, line)?;
        if u >= n || v >= n {
            return Err(err(no, ParseErrorKind::VertexOutOfRange(u.max(v))));
        }
        if u == v {
            return Err(err(no, ParseErrorKind::SelfLoop(u)));
        }
        let e = (u.min(v), u.max(v));
        if !seen.insert(e) {
            return Err(err(no, ParseErrorKind::DuplicateEdge(e.0, e.1)));
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(err(
            last,
            ParseErrorKind::EdgeCount {
                declared: m,
                found: edges.len(),
            },
        ));
    }
    Graph::new(n, edges).map_err(|e| {
        let kind = match e {
            GraphError::SelfLoop(v) => ParseErrorKind::SelfLoop(v),
            GraphError::DuplicateEdge(u, v) => ParseErrorKind::DuplicateEdge(u, v),
            GraphError::VertexOutOfRange { vertex, .. } => ParseErrorKind::VertexOutOfRange(vertex),
        };
        err(last, kind)
    })
}

/// Canonical serialization: edges with `u < v`, sorted.
pub fn write_edge_list(g: &Graph) -> Vec<u8> {
    let mut s = String::with_capacity(12 * (g.m() + 1));
    let _ = writeln!(s, "{} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s.into_bytes()
}
