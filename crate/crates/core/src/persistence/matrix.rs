use crate::complex::{CellRef, FilteredComplex};
use crate::error::{Error, Result};
use crate::scalar::Filtration;

#[derive(Clone, Debug, PartialEq)]
pub struct Column<T> {
    pub dim: usize,
    pub filtration: T,
    pub source: CellRef,
    /// Global positions of the boundary rows, ascending.
    pub boundary: Vec<usize>,
}

/// Boundary matrix with rows and columns in one global order: by filtration,
/// then dimension, then index within the dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredBoundaryMatrix<T> {
    pub columns: Vec<Column<T>>,
    /// Intervals are reported in dimensions up to this one.
    pub max_dim: usize,
}

impl<T: Filtration> FilteredBoundaryMatrix<T> {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Checks that filtrations never decrease and every boundary row comes
    /// before its column.
    pub fn is_well_ordered(&self) -> bool {
        self.columns.windows(2).all(|w| w[0].filtration <= w[1].filtration)
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(j, c)| c.boundary.iter().all(|&i| i < j) && c.boundary.windows(2).all(|w| w[0] < w[1]))
    }
}

/// Assembles the matrix of all cells up to dimension `max_dim + 1` after
/// validating the complex.
pub fn build_matrix<T: Filtration, X: FilteredComplex<T> + ?Sized>(
    x: &X,
    max_dim: usize,
) -> Result<FilteredBoundaryMatrix<T>> {
    let violations = x.validate();
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidComplex(text.join("; ")));
    }
    let top = (max_dim + 1).min(x.num_dims().saturating_sub(1));
    let mut order: Vec<CellRef> =
        (0..=top).flat_map(|dim| (0..x.cells(dim).len()).map(move |index| CellRef { dim, index })).collect();
    let filt = |c: &CellRef| x.cells(c.dim)[c.index].filtration;
    order.sort_by(|a, b| filt(a).total_cmp_ext(&filt(b)).then(a.dim.cmp(&b.dim)).then(a.index.cmp(&b.index)));
    let mut position: Vec<Vec<usize>> = (0..=top).map(|d| vec![0; x.cells(d).len()]).collect();
    for (p, c) in order.iter().enumerate() {
        position[c.dim][c.index] = p;
    }
    let columns = order
        .iter()
        .map(|&c| {
            let mut boundary: Vec<usize> =
                x.boundary(c.dim, c.index).into_iter().map(|f| position[c.dim - 1][f]).collect();
            boundary.sort_unstable();
            Column { dim: c.dim, filtration: filt(&c), source: c, boundary }
        })
        .collect();
    Ok(FilteredBoundaryMatrix { columns, max_dim })
}
