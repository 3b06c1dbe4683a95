//! End-to-end pipelines shared by the command-line tool and the tests.

use std::fmt::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::complex::ComplexViolation;
use crate::complex::{
    write_complex, Cell, FilteredCellComplex, FilteredComplex, FilteredDeltaSet, Graded, ParsedComplex,
};
use crate::error::Result;
use crate::flag::{
    count_generators_m, count_map_generators, directed_flag, partial_flag, reduced_flag_delta, BuildOptions,
    VertexPartitionedSimplices,
};
use crate::oracle::{oracle_sublevel_betti, MorphismKind, OracleOptions};
use crate::persistence::{betti_at, persistence, Barcode, ReduceOptions};
use crate::quiver::FilteredQuiver;
use crate::scalar::{format_filtration, Filtration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    Flag,
    Reduced,
    Partial,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 3] = [ComplexKind::Flag, ComplexKind::Reduced, ComplexKind::Partial];

    /// The singular homology each complex computes.
    pub fn oracle_kind(self) -> MorphismKind {
        match self {
            ComplexKind::Flag => MorphismKind::Inclusion,
            ComplexKind::Reduced => MorphismKind::Map,
            ComplexKind::Partial => MorphismKind::Homomorphism,
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::Flag => "flag",
            ComplexKind::Reduced => "reduced",
            ComplexKind::Partial => "partial",
        })
    }
}

impl FromStr for ComplexKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "flag" => Ok(ComplexKind::Flag),
            "reduced" => Ok(ComplexKind::Reduced),
            "partial" => Ok(ComplexKind::Partial),
            other => Err(format!("unknown complex `{other}` (expected flag, reduced or partial)")),
        }
    }
}

/// Output of any builder.
#[derive(Clone, Debug, PartialEq)]
pub enum BuiltComplex<T> {
    Delta(FilteredDeltaSet<T>),
    Cell(FilteredCellComplex<T>),
}

impl<T: Filtration> FilteredComplex<T> for BuiltComplex<T> {
    fn graded(&self) -> &Graded<T> {
        match self {
            BuiltComplex::Delta(d) => d.graded(),
            BuiltComplex::Cell(c) => c.graded(),
        }
    }

    fn validate(&self) -> Vec<ComplexViolation> {
        match self {
            BuiltComplex::Delta(d) => d.validate(),
            BuiltComplex::Cell(c) => c.validate(),
        }
    }
}

impl<T: Filtration> From<ParsedComplex<T>> for BuiltComplex<T> {
    fn from(p: ParsedComplex<T>) -> Self {
        match p {
            ParsedComplex::Delta(d) => BuiltComplex::Delta(d),
            ParsedComplex::Cell(c) => BuiltComplex::Cell(c),
        }
    }
}

impl<T: Filtration> BuiltComplex<T> {
    pub fn serialize(&self) -> String {
        match self {
            BuiltComplex::Delta(d) => write_complex(d, "delta"),
            BuiltComplex::Cell(c) => write_complex(c, "cell"),
        }
    }

    pub fn sublevel_closed(&self, t: T) -> Self {
        match self {
            BuiltComplex::Delta(d) => BuiltComplex::Delta(d.sublevel_closed(t)),
            BuiltComplex::Cell(c) => BuiltComplex::Cell(c.sublevel_closed(t)),
        }
    }

    /// Mutable access to one cell, for building corrupted inputs in tests.
    pub fn cell_mut(&mut self, dim: usize, index: usize) -> &mut Cell<T> {
        match self {
            BuiltComplex::Delta(d) => d.cell_mut(dim, index),
            BuiltComplex::Cell(c) => c.cell_mut(dim, index),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuildReport<T> {
    pub kind: ComplexKind,
    pub complex: BuiltComplex<T>,
    /// Extra gluing cells per dimension (partial complex only).
    pub extra_cells: Vec<usize>,
    pub diagnostics: Vec<String>,
    pub elapsed: Duration,
}

pub fn build_complex<T: Filtration>(
    q: &FilteredQuiver<T>,
    kind: ComplexKind,
    opts: BuildOptions,
) -> Result<BuildReport<T>> {
    let start = Instant::now();
    let (complex, extra_cells, diagnostics) = match kind {
        ComplexKind::Flag => (BuiltComplex::Delta(directed_flag(q, opts)?.complex), Vec::new(), Vec::new()),
        ComplexKind::Reduced => (BuiltComplex::Delta(reduced_flag_delta(q, opts)?), Vec::new(), Vec::new()),
        ComplexKind::Partial => {
            let p = partial_flag(q, opts)?;
            let extra = p.extra.iter().map(Vec::len).collect();
            (BuiltComplex::Cell(p.complex), extra, p.diagnostics)
        }
    };
    Ok(BuildReport { kind, complex, extra_cells, diagnostics, elapsed: start.elapsed() })
}

/// Per-dimension counts for dimensions `0..=top`, padded with zeros.
pub fn padded_counts<T: Filtration, X: FilteredComplex<T> + ?Sized>(x: &X, top: usize) -> Vec<usize> {
    (0..=top).map(|d| x.cells(d).len()).collect()
}

fn join<D: fmt::Display>(values: &[D]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Sidecar manifest for a built complex.
pub fn manifest<T: Filtration>(report: &BuildReport<T>, opts: BuildOptions, input: &str) -> String {
    let mut out = String::new();
    writeln!(out, "input: {input}").unwrap();
    writeln!(out, "complex: {}", report.kind).unwrap();
    writeln!(out, "max_dim: {}", opts.max_dim).unwrap();
    writeln!(out, "coefficients: Z2").unwrap();
    writeln!(out, "counts: {}", join(&padded_counts(&report.complex, opts.max_dim))).unwrap();
    writeln!(out, "total_cells: {}", report.complex.total_cells()).unwrap();
    if report.kind == ComplexKind::Partial {
        writeln!(out, "extra_cells: {}", join(&report.extra_cells)).unwrap();
    }
    for d in &report.diagnostics {
        writeln!(out, "diagnostic: {d}").unwrap();
    }
    writeln!(out, "wall_time_ms: {:.3}", report.elapsed.as_secs_f64() * 1e3).unwrap();
    out
}

/// One row of an oracle comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow<T> {
    pub t: T,
    pub builder: Vec<usize>,
    pub oracle: Vec<usize>,
}

impl<T> ComparisonRow<T> {
    pub fn pass(&self) -> bool {
        self.builder == self.oracle
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison<T> {
    pub kind: ComplexKind,
    pub rows: Vec<ComparisonRow<T>>,
}

impl<T: Filtration> Comparison<T> {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(ComparisonRow::pass)
    }

    pub fn report(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            writeln!(
                out,
                "{} t={} builder=({}) oracle=({}) {}",
                self.kind,
                format_filtration(row.t),
                join(&row.builder),
                join(&row.oracle),
                if row.pass() { "PASS" } else { "FAIL" }
            )
            .unwrap();
        }
        out
    }
}

/// Compares the barcode of `complex` against oracle Betti numbers of `q` at
/// every critical value.
pub fn compare_complex<T: Filtration, X: FilteredComplex<T> + ?Sized>(
    complex: &X,
    q: &FilteredQuiver<T>,
    kind: ComplexKind,
    max_dim: usize,
    oracle: OracleOptions,
    reduce: ReduceOptions,
) -> Result<Comparison<T>> {
    let barcode: Barcode<T> = persistence(complex, max_dim, reduce, false)?;
    let rows = oracle_sublevel_betti(q, kind.oracle_kind(), max_dim, oracle)?
        .into_iter()
        .map(|(t, expected)| ComparisonRow { t, builder: betti_at(&barcode, t, max_dim), oracle: expected })
        .collect();
    Ok(Comparison { kind, rows })
}

/// Builds the complex of `kind` and compares it against the oracle.
pub fn compare_with_oracle<T: Filtration>(
    q: &FilteredQuiver<T>,
    kind: ComplexKind,
    build: BuildOptions,
    oracle: OracleOptions,
    reduce: ReduceOptions,
) -> Result<Comparison<T>> {
    let report = build_complex(q, kind, build)?;
    compare_complex(&report.complex, q, kind, build.max_dim, oracle, reduce)
}

/// Growth-table row for one quiver and dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub family: String,
    pub vertices: usize,
    pub edges: usize,
    pub dim: usize,
    pub flag: usize,
    pub reduced: usize,
    /// Map generators predicted by the per-vertex binomial formula.
    pub formula: u128,
    /// Map generators counted as monotone surjections onto inclusions.
    pub maps: u128,
    pub flag_ms: f64,
    pub reduced_ms: f64,
}

pub const BENCH_HEADER: &str =
    "family,vertices,edges,dim,flag,reduced,formula_generators,map_generators,flag_ms,reduced_ms";

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{:.3},{:.3}",
            self.family,
            self.vertices,
            self.edges,
            self.dim,
            self.flag,
            self.reduced,
            self.formula,
            self.maps,
            self.flag_ms,
            self.reduced_ms
        )
    }
}

/// Simplex and generator counts of `q` in dimensions `0..=opts.top()`, with
/// wall times of the flag and reduced builds.
pub fn bench_quiver<T: Filtration>(family: &str, q: &FilteredQuiver<T>, opts: BuildOptions) -> Result<Vec<BenchRow>> {
    let start = Instant::now();
    let flag = directed_flag(q, opts)?;
    let flag_ms = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    let reduced = reduced_flag_delta(q, opts)?;
    let reduced_ms = start.elapsed().as_secs_f64() * 1e3;

    let top = opts.top();
    let mut partition = flag.partition.clone();
    partition.resize(top + 1, VertexPartitionedSimplices { by_vertex: vec![Vec::new(); q.num_vertices()] });
    Ok((0..=top)
        .map(|n| BenchRow {
            family: family.to_string(),
            vertices: q.num_vertices(),
            edges: q.num_edges(),
            dim: n,
            flag: flag.complex.cells(n).len(),
            reduced: reduced.cells(n).len(),
            formula: count_generators_m(&partition, n).iter().sum(),
            maps: count_map_generators(&partition, n).iter().sum(),
            flag_ms,
            reduced_ms,
        })
        .collect())
}
