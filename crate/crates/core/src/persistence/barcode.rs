use std::fmt::Write;

use super::matrix::FilteredBoundaryMatrix;
use super::reduce::Pairing;
use crate::error::{Error, Result};
use crate::scalar::{format_filtration, parse_filtration, Filtration};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub dim: usize,
    pub birth: T,
    pub death: T,
}

/// Intervals sorted by `(dim, birth, death)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Barcode<T> {
    pub intervals: Vec<Interval<T>>,
}

impl<T: Filtration> Barcode<T> {
    pub fn new(mut intervals: Vec<Interval<T>>) -> Self {
        intervals.sort_by(|a, b| {
            a.dim.cmp(&b.dim).then(a.birth.total_cmp_ext(&b.birth)).then(a.death.total_cmp_ext(&b.death))
        });
        Self { intervals }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("dim,birth,death\n");
        for i in &self.intervals {
            writeln!(out, "{},{},{}", i.dim, format_filtration(i.birth), format_filtration(i.death)).unwrap();
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "dim,birth,death")) => {}
            _ => return Err(Error::Parse { line: 1, message: "expected header `dim,birth,death`".into() }),
        }
        let mut intervals = Vec::new();
        for (i, line) in lines {
            let bad = || Error::Parse { line: i + 1, message: format!("malformed row `{line}`") };
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(bad());
            }
            intervals.push(Interval {
                dim: fields[0].parse().map_err(|_| bad())?,
                birth: parse_filtration(fields[1]).ok_or_else(bad)?,
                death: parse_filtration(fields[2]).ok_or_else(bad)?,
            });
        }
        Ok(Self::new(intervals))
    }
}

/// Converts a pairing into intervals. Paired columns give `[birth, death)`,
/// unpaired columns in reported dimensions give `[birth, inf)`. Intervals of
/// length zero are kept only when `verbose`.
pub fn barcode<T: Filtration>(pairing: &Pairing, d: &FilteredBoundaryMatrix<T>, verbose: bool) -> Barcode<T> {
    let col = |i: usize| &d.columns[i];
    let finite = pairing.pairs.iter().map(|&(b, k)| Interval {
        dim: col(b).dim,
        birth: col(b).filtration,
        death: col(k).filtration,
    });
    let essential =
        pairing.essential.iter().map(|&b| Interval { dim: col(b).dim, birth: col(b).filtration, death: T::infinity() });
    Barcode::new(
        finite.chain(essential).filter(|i| i.dim <= d.max_dim).filter(|i| verbose || i.birth < i.death).collect(),
    )
}

/// Number of intervals per dimension alive at `t`, i.e. `birth ≤ t < death`.
/// At `t = +inf` this counts the infinite intervals born at a finite value.
pub fn betti_at<T: Filtration>(b: &Barcode<T>, t: T, max_dim: usize) -> Vec<usize> {
    let mut out = vec![0; max_dim + 1];
    for i in b.intervals.iter().filter(|i| i.dim <= max_dim) {
        let alive = if t == T::infinity() {
            i.birth < T::infinity() && i.death == T::infinity()
        } else {
            i.birth <= t && t < i.death
        };
        if alive {
            out[i.dim] += 1;
        }
    }
    out
}
