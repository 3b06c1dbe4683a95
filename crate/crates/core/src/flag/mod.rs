//! The three flag-complex builders.

mod directed;
mod generators;
mod partial;
mod reduced;

pub use directed::{directed_flag, extend_to_simplex, DirectedFlag, SimplexShape, VertexPartitionedSimplices};
pub use generators::{count_generators_m, count_map_generators};
pub use partial::{mst_extra_cells, partial_delta_set, partial_flag, ExtraCell, JoinTriple, MstOutcome, PartialFlag};
pub use reduced::{reduced_flag, reduced_flag_delta};

/// Shared builder settings. Cells are built through dimension `max_dim + 1`
/// so that Betti numbers up to `max_dim` are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_dim: usize,
    pub workers: usize,
    /// Largest number of cells a single dimension may hold.
    pub cell_bound: u128,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { max_dim: 2, workers: 1, cell_bound: u128::MAX }
    }
}

impl BuildOptions {
    pub fn new(max_dim: usize) -> Self {
        Self { max_dim, ..Self::default() }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        Self { workers: workers.max(1), ..self }
    }

    pub fn with_cell_bound(self, cell_bound: u128) -> Self {
        Self { cell_bound, ..self }
    }

    /// Highest dimension in which cells are built.
    pub fn top(&self) -> usize {
        self.max_dim + 1
    }
}
