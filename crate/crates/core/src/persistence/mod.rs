//! Filtered boundary matrices, Z₂ column reduction and barcodes.

mod barcode;
mod matrix;
mod reduce;

pub use barcode::{barcode, betti_at, Barcode, Interval};
pub use matrix::{build_matrix, Column, FilteredBoundaryMatrix};
pub use reduce::{reduce, Pairing, ReduceOptions};

use crate::complex::FilteredComplex;
use crate::error::Result;
use crate::scalar::Filtration;

/// Barcode of a filtered complex in dimensions `0..=max_dim`.
pub fn persistence<T: Filtration, X: FilteredComplex<T> + ?Sized>(
    x: &X,
    max_dim: usize,
    opts: ReduceOptions,
    verbose: bool,
) -> Result<Barcode<T>> {
    let d = build_matrix(x, max_dim)?;
    Ok(barcode(&reduce(&d, opts), &d, verbose))
}
