//! Persistent homology of filtered quivers.
//!
//! Three combinatorial models are built from a [`FilteredQuiver`]: the
//! directed flag complex, the reduced directed flag complex and the partial
//! directed flag complex. A brute-force singular-chain [`oracle`] computes the
//! corresponding singular homologies directly on small inputs. All homology is
//! over Z₂.
//!
//! Everything is generic over the filtration scalar; the aliases at the crate
//! root fix it to `f64`.

pub mod complex;
pub mod error;
pub mod flag;
pub mod oracle;
mod parallel;
pub mod persistence;
pub mod pipeline;
pub mod quiver;
pub mod scalar;

pub use error::{Error, Result};
pub use quiver::{EdgeId, VertexId};
pub use scalar::Filtration;

pub type FilteredQuiver = quiver::FilteredQuiver<f64>;
pub type FilteredDeltaSet = complex::FilteredDeltaSet<f64>;
pub type FilteredCellComplex = complex::FilteredCellComplex<f64>;
pub type FilteredSimplicialComplex = complex::FilteredSimplicialComplex<f64>;
pub type Barcode = persistence::Barcode<f64>;
