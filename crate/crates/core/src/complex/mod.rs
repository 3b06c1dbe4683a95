//! Graded containers for filtered Δ-sets, simplicial complexes and cell
//! complexes, with Z₂ chain boundaries and Betti numbers.

mod io;
mod simplicial;
mod z2;

use std::fmt;

use crate::quiver::VertexId;
use crate::scalar::{format_filtration, Filtration};

pub use io::{parse_complex, write_complex, ParsedComplex};
pub use simplicial::{from_simplicial, FilteredSimplicialComplex};
pub use z2::{z2_add, z2_reduce, Z2Matrix};

/// A cell of dimension `n ≥ 1` lists indices of `(n-1)`-cells; vertices list
/// nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell<T> {
    pub faces: Vec<usize>,
    pub filtration: T,
}

/// Storage shared by [`FilteredDeltaSet`] and [`FilteredCellComplex`].
#[derive(Clone, Debug, PartialEq)]
pub struct Graded<T> {
    labels: Vec<VertexId>,
    dims: Vec<Vec<Cell<T>>>,
}

impl<T: Filtration> Graded<T> {
    fn from_vertices(vertices: impl IntoIterator<Item = (VertexId, T)>) -> Self {
        let (labels, cells): (Vec<_>, Vec<_>) =
            vertices.into_iter().map(|(id, filtration)| (id, Cell { faces: Vec::new(), filtration })).unzip();
        Self { labels, dims: vec![cells] }
    }

    fn push_level(&mut self, cells: Vec<Cell<T>>) {
        self.dims.push(cells);
    }

    fn trim(&mut self) {
        while self.dims.len() > 1 && self.dims.last().is_some_and(Vec::is_empty) {
            self.dims.pop();
        }
    }
}

/// A location inside a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRef {
    pub dim: usize,
    pub index: usize,
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-cell {}", self.dim, self.index)
    }
}

/// A broken complex invariant.
#[derive(Clone, Debug, PartialEq)]
pub enum ComplexViolation {
    FaceOutOfRange { cell: CellRef, face: usize },
    WrongFaceCount { cell: CellRef, found: usize },
    FaceIdentity { cell: CellRef, i: usize, j: usize },
    NonZeroBoundarySquare { cell: CellRef },
    Monotonicity { cell: CellRef, face: usize, cell_filt: String, face_filt: String },
    LabelCount { labels: usize, vertices: usize },
}

impl fmt::Display for ComplexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FaceOutOfRange { cell, face } => write!(f, "{cell}: face index {face} out of range"),
            Self::WrongFaceCount { cell, found } => {
                write!(f, "{cell}: expected {} faces, found {found}", cell.dim + 1)
            }
            Self::FaceIdentity { cell, i, j } => write!(f, "{cell}: d{i}d{j} != d{}d{i}", j - 1),
            Self::NonZeroBoundarySquare { cell } => write!(f, "{cell}: boundary of boundary is non-zero"),
            Self::Monotonicity { cell, face, cell_filt, face_filt } => {
                write!(f, "{cell}: face {face} at {face_filt} above cell filtration {cell_filt}")
            }
            Self::LabelCount { labels, vertices } => {
                write!(f, "{labels} vertex labels for {vertices} vertices")
            }
        }
    }
}

/// Read access common to every filtered complex in this crate.
pub trait FilteredComplex<T: Filtration> {
    fn graded(&self) -> &Graded<T>;

    /// Structural checks specific to the complex type.
    fn validate(&self) -> Vec<ComplexViolation>;

    fn vertex_labels(&self) -> &[VertexId] {
        &self.graded().labels
    }

    /// One more than the highest non-empty dimension stored.
    fn num_dims(&self) -> usize {
        self.graded().dims.len()
    }

    fn cells(&self, dim: usize) -> &[Cell<T>] {
        self.graded().dims.get(dim).map_or(&[], Vec::as_slice)
    }

    fn counts(&self) -> Vec<usize> {
        self.graded().dims.iter().map(Vec::len).collect()
    }

    fn total_cells(&self) -> usize {
        self.graded().dims.iter().map(Vec::len).sum()
    }

    /// Boundary of a cell over Z₂: faces with odd multiplicity, ascending.
    fn boundary(&self, dim: usize, index: usize) -> Vec<usize> {
        if dim == 0 {
            return Vec::new();
        }
        z2_reduce(self.cells(dim)[index].faces.clone())
    }
}

fn check_common<T: Filtration>(g: &Graded<T>, out: &mut Vec<ComplexViolation>) -> bool {
    if g.labels.len() != g.dims[0].len() {
        out.push(ComplexViolation::LabelCount { labels: g.labels.len(), vertices: g.dims[0].len() });
    }
    let mut in_range = true;
    for dim in 1..g.dims.len() {
        let below = &g.dims[dim - 1];
        for (index, cell) in g.dims[dim].iter().enumerate() {
            let at = CellRef { dim, index };
            for &face in &cell.faces {
                match below.get(face) {
                    None => {
                        in_range = false;
                        out.push(ComplexViolation::FaceOutOfRange { cell: at, face });
                    }
                    Some(f) if f.filtration > cell.filtration => out.push(ComplexViolation::Monotonicity {
                        cell: at,
                        face,
                        cell_filt: format_filtration(cell.filtration),
                        face_filt: format_filtration(f.filtration),
                    }),
                    Some(_) => {}
                }
            }
        }
    }
    in_range
}

/// A filtered Δ-set: the `n`-simplex faces list the images of `d_0..d_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredDeltaSet<T>(Graded<T>);

impl<T: Filtration> FilteredDeltaSet<T> {
    pub fn from_vertices(vertices: impl IntoIterator<Item = (VertexId, T)>) -> Self {
        Self(Graded::from_vertices(vertices))
    }

    /// Appends the next dimension. Empty trailing dimensions are dropped by
    /// [`FilteredDeltaSet::finish`].
    pub fn push_level(&mut self, cells: Vec<Cell<T>>) {
        self.0.push_level(cells);
    }

    pub fn finish(mut self) -> Self {
        self.0.trim();
        self
    }

    pub fn cell_mut(&mut self, dim: usize, index: usize) -> &mut Cell<T> {
        &mut self.0.dims[dim][index]
    }

    /// Face `d_i` of an `n`-simplex, `n ≥ 1`.
    pub fn face(&self, dim: usize, index: usize, i: usize) -> usize {
        self.0.dims[dim][index].faces[i]
    }

    /// Ordered vertex indices of a simplex, read off its faces.
    pub fn vertices_of(&self, dim: usize, index: usize) -> Vec<usize> {
        if dim == 0 {
            return vec![index];
        }
        let mut out = self.vertices_of(dim - 1, self.face(dim, index, dim));
        let last = self.vertices_of(dim - 1, self.face(dim, index, 0));
        out.push(*last.last().expect("non-empty"));
        out
    }

    /// Subcomplex of simplices with filtration at most `t`, reindexed.
    pub fn sublevel_closed(&self, t: T) -> Self {
        Self(sublevel(&self.0, t))
    }
}

impl<T: Filtration> FilteredComplex<T> for FilteredDeltaSet<T> {
    fn graded(&self) -> &Graded<T> {
        &self.0
    }

    fn validate(&self) -> Vec<ComplexViolation> {
        let g = &self.0;
        let mut out = Vec::new();
        let mut in_range = check_common(g, &mut out);
        for dim in 1..g.dims.len() {
            for (index, cell) in g.dims[dim].iter().enumerate() {
                if cell.faces.len() != dim + 1 {
                    in_range = false;
                    out.push(ComplexViolation::WrongFaceCount {
                        cell: CellRef { dim, index },
                        found: cell.faces.len(),
                    });
                }
            }
        }
        if !in_range {
            return out;
        }
        for dim in 2..g.dims.len() {
            let below = &g.dims[dim - 1];
            for (index, cell) in g.dims[dim].iter().enumerate() {
                for j in 1..=dim {
                    for i in 0..j {
                        let lhs = below[cell.faces[j]].faces[i];
                        let rhs = below[cell.faces[i]].faces[j - 1];
                        if lhs != rhs {
                            out.push(ComplexViolation::FaceIdentity { cell: CellRef { dim, index }, i, j });
                        }
                    }
                }
            }
        }
        out
    }
}

/// A filtered cell complex: each cell lists an arbitrary Z₂ boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredCellComplex<T>(Graded<T>);

impl<T: Filtration> FilteredCellComplex<T> {
    pub fn from_vertices(vertices: impl IntoIterator<Item = (VertexId, T)>) -> Self {
        Self(Graded::from_vertices(vertices))
    }

    pub fn push_level(&mut self, cells: Vec<Cell<T>>) {
        self.0.push_level(cells);
    }

    pub fn finish(mut self) -> Self {
        self.0.trim();
        self
    }

    pub fn cell_mut(&mut self, dim: usize, index: usize) -> &mut Cell<T> {
        &mut self.0.dims[dim][index]
    }

    pub fn sublevel_closed(&self, t: T) -> Self {
        Self(sublevel(&self.0, t))
    }
}

impl<T: Filtration> From<FilteredDeltaSet<T>> for FilteredCellComplex<T> {
    fn from(d: FilteredDeltaSet<T>) -> Self {
        Self(d.0)
    }
}

impl<T: Filtration> FilteredComplex<T> for FilteredCellComplex<T> {
    fn graded(&self) -> &Graded<T> {
        &self.0
    }

    fn validate(&self) -> Vec<ComplexViolation> {
        let mut out = Vec::new();
        if !check_common(&self.0, &mut out) {
            return out;
        }
        for dim in 2..self.num_dims() {
            for index in 0..self.cells(dim).len() {
                let faces = self.boundary(dim, index);
                let square = faces.iter().fold(Vec::new(), |acc, &f| z2_add(&acc, &self.boundary(dim - 1, f)));
                if !square.is_empty() {
                    out.push(ComplexViolation::NonZeroBoundarySquare { cell: CellRef { dim, index } });
                }
            }
        }
        out
    }
}

fn sublevel<T: Filtration>(g: &Graded<T>, t: T) -> Graded<T> {
    let mut out = Graded { labels: Vec::new(), dims: Vec::new() };
    let mut prev_map: Vec<Option<usize>> = Vec::new();
    for (dim, cells) in g.dims.iter().enumerate() {
        let mut map = vec![None; cells.len()];
        let mut level = Vec::new();
        for (i, c) in cells.iter().enumerate() {
            if c.filtration <= t {
                map[i] = Some(level.len());
                let faces = c.faces.iter().map(|&f| prev_map[f].expect("monotone filtration")).collect();
                level.push(Cell { faces, filtration: c.filtration });
                if dim == 0 {
                    out.labels.push(g.labels[i]);
                }
            }
        }
        out.dims.push(level);
        prev_map = map;
    }
    out.trim();
    out
}

/// Validates any complex; empty when every invariant holds.
pub fn validate_faces<T: Filtration, X: FilteredComplex<T> + ?Sized>(x: &X) -> Vec<ComplexViolation> {
    x.validate()
}

/// Boundary matrix `∂_n : C_n → C_{n-1}` over Z₂.
pub fn chain_boundary<T: Filtration, X: FilteredComplex<T> + ?Sized>(x: &X, n: usize) -> Z2Matrix {
    assert!(n >= 1, "chain_boundary needs n >= 1");
    let columns = (0..x.cells(n).len()).map(|j| x.boundary(n, j)).collect();
    Z2Matrix::new(x.cells(n - 1).len(), columns)
}

/// Betti numbers `β_0..=β_max_dim` over Z₂. Cells up to `max_dim + 1` must be
/// present for the top number to be meaningful.
pub fn betti<T: Filtration, X: FilteredComplex<T> + ?Sized>(x: &X, max_dim: usize) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=max_dim + 1).map(|n| if n == 0 { 0 } else { chain_boundary(x, n).rank() }).collect();
    (0..=max_dim).map(|n| x.cells(n).len() - ranks[n] - ranks[n + 1]).collect()
}

/// Alternating cell count.
pub fn euler_characteristic<T: Filtration, X: FilteredComplex<T> + ?Sized>(x: &X) -> i64 {
    x.counts().iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

/// A k-partial (n+1)-simplex: the last `k` faces `s_{n+1-k}, …, s_{n+1}` of a
/// prospective simplex, stored in that order.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialSimplex<T> {
    pub faces: Vec<usize>,
    pub filtration: T,
}

impl<T: Filtration> PartialSimplex<T> {
    pub fn seed(face: usize, filtration: T) -> Self {
        Self { faces: vec![face], filtration }
    }

    pub fn k(&self) -> usize {
        self.faces.len()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::quiver::VertexId;

    pub(crate) fn triangle(top: f64) -> FilteredDeltaSet<f64> {
        let mut d = FilteredDeltaSet::from_vertices((0..3).map(|i| (VertexId(i), 0.0)));
        d.push_level(vec![
            Cell { faces: vec![1, 0], filtration: 0.0 },
            Cell { faces: vec![2, 0], filtration: 0.0 },
            Cell { faces: vec![2, 1], filtration: 0.0 },
        ]);
        d.push_level(vec![Cell { faces: vec![2, 1, 0], filtration: top }]);
        d
    }

    #[test]
    fn triangle_is_valid_and_contractible() {
        let d = triangle(1.0);
        assert!(validate_faces(&d).is_empty());
        assert_eq!(betti(&d, 1), vec![1, 0]);
        assert_eq!(euler_characteristic(&d), 1);
        assert_eq!(d.vertices_of(2, 0), vec![0, 1, 2]);
        assert!(chain_boundary(&d, 1).mul(&chain_boundary(&d, 2)).is_zero());
    }

    #[test]
    fn swapped_faces_break_identity() {
        let mut d = triangle(1.0);
        d.0.dims[2][0].faces.swap(0, 1);
        assert!(validate_faces(&d).iter().any(|v| matches!(v, ComplexViolation::FaceIdentity { .. })));
    }

    #[test]
    fn monotonicity_violation() {
        let mut d = triangle(1.0);
        d.0.dims[1][0].filtration = 2.0;
        assert!(validate_faces(&d).iter().any(|v| matches!(v, ComplexViolation::Monotonicity { .. })));
    }

    #[test]
    fn out_of_range_face_is_located() {
        let mut d = triangle(1.0);
        d.0.dims[2][0].faces[1] = 9;
        let report = validate_faces(&d);
        assert_eq!(report, vec![ComplexViolation::FaceOutOfRange { cell: CellRef { dim: 2, index: 0 }, face: 9 }]);
    }

    #[test]
    fn loop_like_cell_has_empty_boundary() {
        let mut d = FilteredDeltaSet::from_vertices([(VertexId(0), 0.0)]);
        d.push_level(vec![Cell { faces: vec![0, 0], filtration: 0.0 }]);
        assert!(chain_boundary(&d, 1).column(0).is_empty());
        assert_eq!(betti(&d, 1), vec![1, 1]);
    }

    #[test]
    fn sublevel_drops_late_cells() {
        let d = triangle(1.0);
        let s = d.sublevel_closed(0.5);
        assert_eq!(s.counts(), vec![3, 3]);
        assert_eq!(betti(&s, 1), vec![1, 1]);
        assert_eq!(d.sublevel_closed(1.0), d);
    }

    #[test]
    fn cell_complex_detects_bad_boundary() {
        let mut c: FilteredCellComplex<f64> = triangle(1.0).into();
        assert!(validate_faces(&c).is_empty());
        c.0.dims[2][0].faces = vec![0, 1];
        assert!(validate_faces(&c).iter().any(|v| matches!(v, ComplexViolation::NonZeroBoundarySquare { .. })));
    }
}
