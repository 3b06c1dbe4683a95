//! Directed flag complex: simplices are inclusions of directed simplices,
//! assembled face by face from simplices that share a maximal vertex.

use std::collections::HashMap;

use super::BuildOptions;
use crate::complex::{Cell, FilteredComplex, FilteredDeltaSet, PartialSimplex};
use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::quiver::FilteredQuiver;
use crate::scalar::Filtration;

/// Simplices of one dimension grouped by their maximal (last) vertex, using
/// dense vertex positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexPartitionedSimplices {
    pub by_vertex: Vec<Vec<usize>>,
}

impl VertexPartitionedSimplices {
    pub fn count(&self, vertex: usize) -> usize {
        self.by_vertex.get(vertex).map_or(0, Vec::len)
    }
}

/// Vertex sequence and edge choices of a simplex. `edges` holds positions in
/// the quiver's edge list for every pair `a < b` in colex order
/// `(0,1), (0,2), (1,2), (0,3), …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexShape {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl SimplexShape {
    pub fn edge(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b);
        self.edges[b * (b - 1) / 2 + a]
    }
}

#[derive(Clone, Debug)]
pub struct DirectedFlag<T> {
    pub complex: FilteredDeltaSet<T>,
    pub partition: Vec<VertexPartitionedSimplices>,
    pub shapes: Vec<Vec<SimplexShape>>,
}

/// One step of partial-simplex assembly. Each input holds the `k + 1` faces
/// `s_{n-k+1}, …, s_{n+1}` of a prospective `(n+1)`-simplex; every output
/// prepends one `s_{n-k}` from `candidates` with
/// `d_{n-k}(s_j) = d_{j-1}(s_{n-k})` for all assembled `j`.
pub fn extend_to_simplex<T: Filtration>(
    level: &[Cell<T>],
    candidates: &[usize],
    partials: &[PartialSimplex<T>],
    n: usize,
    k: usize,
) -> Vec<PartialSimplex<T>> {
    assert!(k <= n);
    let first = n - k + 1;
    let mut out = Vec::new();
    for p in partials {
        debug_assert_eq!(p.faces.len(), k + 1);
        for &c in candidates {
            let cand = &level[c];
            let compatible =
                p.faces.iter().enumerate().all(|(offset, &s)| level[s].faces[n - k] == cand.faces[first + offset - 1]);
            if compatible {
                let mut faces = Vec::with_capacity(p.faces.len() + 1);
                faces.push(c);
                faces.extend_from_slice(&p.faces);
                out.push(PartialSimplex { faces, filtration: p.filtration.max_ext(cand.filtration) });
            }
        }
    }
    out
}

struct Level<T> {
    cells: Vec<Cell<T>>,
    shapes: Vec<SimplexShape>,
    partition: VertexPartitionedSimplices,
}

/// Builds the directed flag complex through dimension `opts.max_dim + 1`.
/// Loops are ignored.
pub fn directed_flag<T: Filtration>(q: &FilteredQuiver<T>, opts: BuildOptions) -> Result<DirectedFlag<T>> {
    let violations = q.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidQuiver(violations));
    }
    let nv = q.num_vertices();
    let dense = q.dense_edges();

    let mut complex = FilteredDeltaSet::from_vertices(q.vertices().iter().map(|v| (v.id, v.filtration)));
    let vertex_level = Level {
        cells: complex.cells(0).to_vec(),
        shapes: (0..nv).map(|v| SimplexShape { vertices: vec![v], edges: vec![] }).collect(),
        partition: VertexPartitionedSimplices { by_vertex: (0..nv).map(|v| vec![v]).collect() },
    };

    let mut edge_level = Level {
        cells: Vec::new(),
        shapes: Vec::new(),
        partition: VertexPartitionedSimplices { by_vertex: vec![Vec::new(); nv] },
    };
    for (pos, (e, &(s, t))) in q.edges().iter().zip(&dense).enumerate() {
        if s == t {
            continue;
        }
        edge_level.partition.by_vertex[t].push(edge_level.cells.len());
        edge_level.cells.push(Cell { faces: vec![t, s], filtration: e.filtration });
        edge_level.shapes.push(SimplexShape { vertices: vec![s, t], edges: vec![pos] });
    }

    let mut levels = vec![vertex_level, edge_level];
    for n in 1..=opts.top() {
        let size = levels[n].cells.len().max(levels[n - 1].cells.len()) as u128;
        if size > opts.cell_bound {
            return Err(Error::BoundExceeded { candidates: size, bound: opts.cell_bound });
        }
        if n < opts.top() {
            let next = next_level(&levels[n], n, nv, opts.workers);
            levels.push(next);
        }
    }

    let mut partition = Vec::new();
    let mut shapes = Vec::new();
    for (dim, level) in levels.into_iter().enumerate() {
        if dim > 0 {
            complex.push_level(level.cells);
        }
        partition.push(level.partition);
        shapes.push(level.shapes);
    }
    Ok(DirectedFlag { complex: complex.finish(), partition, shapes })
}

fn next_level<T: Filtration>(level: &Level<T>, n: usize, nv: usize, workers: usize) -> Level<T> {
    let per_vertex = par_map(workers, nv, |v| {
        let mut by_last_face: HashMap<usize, Vec<usize>> = HashMap::new();
        for &c in &level.partition.by_vertex[v] {
            by_last_face.entry(level.cells[c].faces[n]).or_default().push(c);
        }
        let mut found = Vec::new();
        if by_last_face.is_empty() {
            return found;
        }
        for u in (0..nv).filter(|&u| u != v) {
            for &s in &level.partition.by_vertex[u] {
                let mut partials = vec![PartialSimplex::seed(s, level.cells[s].filtration)];
                for k in 0..=n {
                    let mut next = Vec::new();
                    for p in &partials {
                        let top = p.faces[p.faces.len() - 1];
                        if let Some(cands) = by_last_face.get(&level.cells[top].faces[n - k]) {
                            next.extend(extend_to_simplex(&level.cells, cands, std::slice::from_ref(p), n, k));
                        }
                    }
                    partials = next;
                    if partials.is_empty() {
                        break;
                    }
                }
                found.extend(partials);
            }
        }
        found
    });

    let mut out = Level {
        cells: Vec::new(),
        shapes: Vec::new(),
        partition: VertexPartitionedSimplices { by_vertex: vec![Vec::new(); nv] },
    };
    for (v, found) in per_vertex.into_iter().enumerate() {
        for p in found {
            out.partition.by_vertex[v].push(out.cells.len());
            out.shapes.push(extend_shape(&level.shapes, &p.faces, n));
            out.cells.push(Cell { faces: p.faces, filtration: p.filtration });
        }
    }
    out
}

/// Shape of the `(n+1)`-simplex with faces `faces = (s_0, …, s_{n+1})`.
fn extend_shape(shapes: &[SimplexShape], faces: &[usize], n: usize) -> SimplexShape {
    let base = &shapes[faces[n + 1]];
    let top = *shapes[faces[0]].vertices.last().expect("non-empty");
    let mut vertices = base.vertices.clone();
    vertices.push(top);
    let mut edges = base.edges.clone();
    // (0, n+1) lies in d_1, (i, n+1) for i ≥ 1 in d_0 at positions (i-1, n).
    edges.push(shapes[faces[1]].edge(0, n));
    for i in 1..=n {
        edges.push(shapes[faces[0]].edge(i - 1, n));
    }
    SimplexShape { vertices, edges }
}
