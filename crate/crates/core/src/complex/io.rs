//! Line-oriented complex serialization.
//!
//! ```text
//! # qvh complex
//! # kind delta
//! s 0 <vertex_id> <filt>
//! s <dim> <face_idx...> <filt>
//! ```
//!
//! Face indices refer to the order of the previous dimension's lines.
//! `kind` is `delta` or `cell`.

use std::fmt::Write;

use super::{Cell, FilteredCellComplex, FilteredComplex, FilteredDeltaSet};
use crate::error::{Error, Result};
use crate::quiver::VertexId;
use crate::scalar::{format_filtration, parse_filtration, Filtration};

#[derive(Clone, Debug, PartialEq)]
pub enum ParsedComplex<T> {
    Delta(FilteredDeltaSet<T>),
    Cell(FilteredCellComplex<T>),
}

pub fn write_complex<T: Filtration, X: FilteredComplex<T> + ?Sized>(x: &X, kind: &str) -> String {
    let mut out = String::new();
    writeln!(out, "# qvh complex").unwrap();
    writeln!(out, "# kind {kind}").unwrap();
    for (label, cell) in x.vertex_labels().iter().zip(x.cells(0)) {
        writeln!(out, "s 0 {label} {}", format_filtration(cell.filtration)).unwrap();
    }
    for dim in 1..x.num_dims() {
        for cell in x.cells(dim) {
            write!(out, "s {dim}").unwrap();
            for f in &cell.faces {
                write!(out, " {f}").unwrap();
            }
            writeln!(out, " {}", format_filtration(cell.filtration)).unwrap();
        }
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_complex<T: Filtration>(text: &str) -> Result<ParsedComplex<T>> {
    let mut kind = None;
    let mut labels = Vec::new();
    let mut dims: Vec<Vec<Cell<T>>> = vec![Vec::new()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if let Some(comment) = content.strip_prefix('#') {
            if let Some(k) = comment.trim().strip_prefix("kind") {
                kind = Some(k.trim().to_string());
            }
            continue;
        }
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] != "s" || tokens.len() < 3 {
            return Err(err(line, "expected `s <dim> <face_idx...> <filt>`"));
        }
        let dim: usize = tokens[1].parse().map_err(|_| err(line, format!("invalid dimension `{}`", tokens[1])))?;
        let filt_token = tokens[tokens.len() - 1];
        let filtration: T =
            parse_filtration(filt_token).ok_or_else(|| err(line, format!("invalid filtration `{filt_token}`")))?;
        let middle = &tokens[2..tokens.len() - 1];
        if dim + 1 < dims.len() || dim > dims.len() {
            return Err(err(line, "cells must appear in dimension order"));
        }
        if dim == dims.len() {
            dims.push(Vec::new());
        }
        if dim == 0 {
            if middle.len() != 1 {
                return Err(err(line, "expected `s 0 <vertex_id> <filt>`"));
            }
            let id = middle[0].parse().map_err(|_| err(line, format!("invalid vertex id `{}`", middle[0])))?;
            labels.push(VertexId(id));
            dims[0].push(Cell { faces: Vec::new(), filtration });
            continue;
        }
        let faces = middle
            .iter()
            .map(|t| t.parse::<usize>().map_err(|_| err(line, format!("invalid face index `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&bad) = faces.iter().find(|&&f| f >= dims[dim - 1].len()) {
            return Err(err(line, format!("face index {bad} out of range")));
        }
        dims[dim].push(Cell { faces, filtration });
    }
    let mut graded = super::Graded { labels, dims };
    graded.trim();
    match kind.as_deref() {
        Some("delta") => Ok(ParsedComplex::Delta(FilteredDeltaSet(graded))),
        Some("cell") => Ok(ParsedComplex::Cell(FilteredCellComplex(graded))),
        Some(other) => Err(err(0, format!("unknown complex kind `{other}`"))),
        None => Err(err(0, "missing `# kind` header")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::triangle;

    #[test]
    fn round_trip() {
        let d = triangle(1.5);
        let text = write_complex(&d, "delta");
        assert!(text.contains("s 2 2 1 0 1.5\n"));
        assert_eq!(parse_complex::<f64>(&text).unwrap(), ParsedComplex::Delta(d.clone()));
        let c: FilteredCellComplex<f64> = d.into();
        let text = write_complex(&c, "cell");
        assert_eq!(parse_complex::<f64>(&text).unwrap(), ParsedComplex::Cell(c));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_complex::<f64>("s 0 0 0\n").is_err());
        assert!(parse_complex::<f64>("# kind delta\ns 1 0 1 0\n").is_err());
        assert!(parse_complex::<f64>("# kind delta\ns 0 0 x\n").is_err());
        assert!(parse_complex::<f64>("# kind delta\ns 0 0 0\ns 2 0 0 0 0\n").is_err());
    }
}
