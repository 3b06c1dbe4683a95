//! The line-oriented `.qvr` text format.
//!
//! ```text
//! # comment
//! v <id> [filt]
//! e <id> <src> <tgt> [filt]
//! ```
//!
//! An omitted filtration is `-inf`.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Edge, EdgeId, FilteredQuiver, Vertex, VertexId, Violation};
use crate::error::{Error, Result};
use crate::scalar::{format_filtration, parse_filtration, Filtration};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_id(token: &str, line: usize, what: &str) -> Result<u64> {
    token.parse().map_err(|_| parse_err(line, format!("invalid {what} `{token}`")))
}

fn parse_filt<T: Filtration>(token: Option<&str>, line: usize) -> Result<T> {
    match token {
        None => Ok(T::neg_infinity()),
        Some(t) => parse_filtration(t).ok_or_else(|| parse_err(line, format!("invalid filtration `{t}`"))),
    }
}

pub fn parse_qvr<T: Filtration>(text: &str) -> Result<FilteredQuiver<T>> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut vertex_line = BTreeMap::new();
    let mut edge_line = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "v" => {
                if !(2..=3).contains(&tokens.len()) {
                    return Err(parse_err(line, "expected `v <id> [filt]`"));
                }
                let id = VertexId(parse_id(tokens[1], line, "vertex id")?);
                if vertex_line.insert(id, line).is_some() {
                    return Err(parse_err(line, format!("duplicate vertex id {id}")));
                }
                vertices.push(Vertex { id, filtration: parse_filt(tokens.get(2).copied(), line)? });
            }
            "e" => {
                if !(4..=5).contains(&tokens.len()) {
                    return Err(parse_err(line, "expected `e <id> <src> <tgt> [filt]`"));
                }
                let id = EdgeId(parse_id(tokens[1], line, "edge id")?);
                if edge_line.insert(id, line).is_some() {
                    return Err(parse_err(line, format!("duplicate edge id {id}")));
                }
                edges.push(Edge {
                    id,
                    source: VertexId(parse_id(tokens[2], line, "source id")?),
                    target: VertexId(parse_id(tokens[3], line, "target id")?),
                    filtration: parse_filt(tokens.get(4).copied(), line)?,
                });
            }
            other => return Err(parse_err(line, format!("unknown record type `{other}`"))),
        }
    }
    let q = FilteredQuiver::new(vertices, edges);
    if let Some(v) = q.validate().into_iter().next() {
        let line = match &v {
            Violation::EmptyVertexSet => 0,
            Violation::DanglingSource { edge, .. }
            | Violation::DanglingTarget { edge, .. }
            | Violation::EdgeBelowEndpoint { edge, .. }
            | Violation::NanEdgeFiltration(edge) => edge_line[edge],
            Violation::DuplicateVertex(id) | Violation::NanVertexFiltration(id) => vertex_line[id],
            Violation::DuplicateEdge(id) => edge_line[id],
        };
        return Err(parse_err(line, v.to_string()));
    }
    Ok(q)
}

/// Writes a quiver in `.qvr` form; `-inf` filtrations are omitted.
pub fn write_qvr<T: Filtration>(q: &FilteredQuiver<T>) -> String {
    let mut out = String::new();
    let filt = |f: T| {
        if f == T::neg_infinity() {
            String::new()
        } else {
            format!(" {}", format_filtration(f))
        }
    };
    for v in q.vertices() {
        writeln!(out, "v {}{}", v.id, filt(v.filtration)).unwrap();
    }
    for e in q.edges() {
        writeln!(out, "e {} {} {}{}", e.id, e.source, e.target, filt(e.filtration)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_defaults() {
        let text = "# cone\nv 0\nv 1 0.5\n\ne 0 0 1 1\ne 1 0 1 2\ne 2 1 1 inf\n";
        let q: FilteredQuiver<f64> = parse_qvr(text).unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.vertices()[0].filtration, f64::NEG_INFINITY);
        assert_eq!(q.edges()[2].filtration, f64::INFINITY);
        assert_eq!(parse_qvr::<f64>(&write_qvr(&q)).unwrap(), q);
    }

    fn line_of(text: &str) -> usize {
        match parse_qvr::<f64>(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("v 0\nv x\n"), 2);
        assert_eq!(line_of("v 0 0.5\nv 1\n# c\ne 0 0 1 0.1\n"), 4);
        assert_eq!(line_of("v 0\ne 0 0 9\n"), 2);
        assert_eq!(line_of("v 0\nv 0\n"), 2);
        assert_eq!(line_of("v 0\nq 1\n"), 2);
        assert_eq!(line_of("v 0 nan\n"), 1);
        assert_eq!(line_of("# nothing\n"), 0);
    }
}
