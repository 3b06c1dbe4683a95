//! Filtered quivers: directed multigraphs with loops, carrying filtration
//! values on vertices and edges.

mod build;
mod io;
mod reduce;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{distinct_sorted, format_filtration, Filtration};

pub use build::{
    complete_dag, directed_cycle, directed_simplex, double_cone, double_edge_pair, random_quiver, seeded_quiver,
    simplex_face, strong_box_product, RandomQuiverParams,
};
pub use io::{parse_qvr, write_qvr};
pub use reduce::{
    degenerate_loops, filtered_loop_maximal_order, loop_contract, loop_maximal_order, partially_reduced,
    reduced_digraph, VertexOrder,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vertex<T> {
    pub id: VertexId,
    pub filtration: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge<T> {
    pub id: EdgeId,
    pub source: VertexId,
    pub target: VertexId,
    pub filtration: T,
}

impl<T> Edge<T> {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A broken quiver invariant, as reported by [`FilteredQuiver::validate`].
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    EmptyVertexSet,
    DuplicateVertex(VertexId),
    DuplicateEdge(EdgeId),
    DanglingSource { edge: EdgeId, vertex: VertexId },
    DanglingTarget { edge: EdgeId, vertex: VertexId },
    NanVertexFiltration(VertexId),
    NanEdgeFiltration(EdgeId),
    EdgeBelowEndpoint { edge: EdgeId, vertex: VertexId, efilt: String, vfilt: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyVertexSet => write!(f, "vertex set is empty"),
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            Violation::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            Violation::DanglingSource { edge, vertex } => {
                write!(f, "dangling source: edge {edge} starts at unknown vertex {vertex}")
            }
            Violation::DanglingTarget { edge, vertex } => {
                write!(f, "dangling target: edge {edge} ends at unknown vertex {vertex}")
            }
            Violation::NanVertexFiltration(v) => write!(f, "vertex {v} has NaN filtration"),
            Violation::NanEdgeFiltration(e) => write!(f, "edge {e} has NaN filtration"),
            Violation::EdgeBelowEndpoint { edge, vertex, efilt, vfilt } => {
                write!(f, "efilt < endpoint vfilt: edge {edge} at {efilt} below vertex {vertex} at {vfilt}")
            }
        }
    }
}

/// Per-edge taxonomy flags.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeFlags {
    pub is_loop: bool,
    pub is_multiple: bool,
    pub is_double: bool,
    pub has_loop: bool,
}

/// A filtered quiver. Vertices and edges are kept sorted by id.
///
/// Construction does not validate; call [`FilteredQuiver::validate`] or
/// [`FilteredQuiver::checked`] before handing a quiver to the builders.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredQuiver<T = f64> {
    vertices: Vec<Vertex<T>>,
    edges: Vec<Edge<T>>,
}

impl<T: Filtration> FilteredQuiver<T> {
    pub fn new(mut vertices: Vec<Vertex<T>>, mut edges: Vec<Edge<T>>) -> Self {
        vertices.sort_by_key(|v| v.id);
        edges.sort_by_key(|e| e.id);
        Self { vertices, edges }
    }

    /// Validated constructor.
    pub fn checked(vertices: Vec<Vertex<T>>, edges: Vec<Edge<T>>) -> Result<Self> {
        let q = Self::new(vertices, edges);
        let violations = q.validate();
        if violations.is_empty() {
            Ok(q)
        } else {
            Err(Error::InvalidQuiver(violations))
        }
    }

    /// Unfiltered quiver on vertices `0..n` with edges `(source, target)`
    /// numbered in the given order. Every filtration value is `-inf`.
    pub fn unfiltered(n: u64, edges: &[(u64, u64)]) -> Self {
        let vertices = (0..n).map(|i| Vertex { id: VertexId(i), filtration: T::neg_infinity() }).collect();
        let edges = edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| Edge {
                id: EdgeId(i as u64),
                source: VertexId(s),
                target: VertexId(t),
                filtration: T::neg_infinity(),
            })
            .collect();
        Self::new(vertices, edges)
    }

    /// Filtered quiver on vertices `0..n`; vertex `i` gets `vfilt[i]`, edge `i`
    /// is `edges[i] = (source, target, filtration)`.
    pub fn from_parts(vfilt: &[T], edges: &[(u64, u64, T)]) -> Self {
        let vertices =
            vfilt.iter().enumerate().map(|(i, &f)| Vertex { id: VertexId(i as u64), filtration: f }).collect();
        let edges = edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t, f))| Edge {
                id: EdgeId(i as u64),
                source: VertexId(s),
                target: VertexId(t),
                filtration: f,
            })
            .collect();
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[Vertex<T>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Dense position of a vertex id.
    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.vertices.binary_search_by_key(&id, |v| v.id).ok()
    }

    pub fn vertex_filtration(&self, id: VertexId) -> Option<T> {
        self.index_of(id).map(|i| self.vertices[i].filtration)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge<T>> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok().map(|i| &self.edges[i])
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Set of vertices carrying at least one loop.
    pub fn looped_vertices(&self) -> BTreeSet<VertexId> {
        self.edges.iter().filter(|e| e.is_loop()).map(|e| e.source).collect()
    }

    /// Earliest loop filtration per looped vertex.
    pub fn loop_times(&self) -> BTreeMap<VertexId, T> {
        let mut out = BTreeMap::new();
        for e in self.edges.iter().filter(|e| e.is_loop()) {
            out.entry(e.source).and_modify(|f: &mut T| *f = f.min_ext(e.filtration)).or_insert(e.filtration);
        }
        out
    }

    /// All invariant violations; empty when the quiver is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push(Violation::EmptyVertexSet);
        }
        for pair in self.vertices.windows(2) {
            if pair[0].id == pair[1].id {
                out.push(Violation::DuplicateVertex(pair[0].id));
            }
        }
        for pair in self.edges.windows(2) {
            if pair[0].id == pair[1].id {
                out.push(Violation::DuplicateEdge(pair[0].id));
            }
        }
        for v in &self.vertices {
            if v.filtration.is_nan() {
                out.push(Violation::NanVertexFiltration(v.id));
            }
        }
        for e in &self.edges {
            if e.filtration.is_nan() {
                out.push(Violation::NanEdgeFiltration(e.id));
            }
            let ends = [
                (e.source, Violation::DanglingSource { edge: e.id, vertex: e.source }),
                (e.target, Violation::DanglingTarget { edge: e.id, vertex: e.target }),
            ];
            for (k, (vertex, dangling)) in ends.into_iter().enumerate() {
                if k == 1 && e.is_loop() {
                    break;
                }
                match self.vertex_filtration(vertex) {
                    None => out.push(dangling),
                    Some(vf) if e.filtration < vf => out.push(Violation::EdgeBelowEndpoint {
                        edge: e.id,
                        vertex,
                        efilt: format_filtration(e.filtration),
                        vfilt: format_filtration(vf),
                    }),
                    Some(_) => {}
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Taxonomy flags aligned with [`FilteredQuiver::edges`].
    pub fn edge_flags(&self) -> Vec<EdgeFlags> {
        let mut pair_count: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for e in &self.edges {
            *pair_count.entry((e.source, e.target)).or_default() += 1;
        }
        let looped = self.looped_vertices();
        self.edges
            .iter()
            .map(|e| EdgeFlags {
                is_loop: e.is_loop(),
                is_multiple: pair_count[&(e.source, e.target)] > 1,
                is_double: !e.is_loop() && pair_count.contains_key(&(e.target, e.source)),
                has_loop: looped.contains(&e.source) || looped.contains(&e.target),
            })
            .collect()
    }

    /// Sublevel quiver of everything with filtration strictly below `t`.
    /// `None` when no vertex survives.
    pub fn sublevel(&self, t: T) -> Option<Self> {
        self.filter_by(|f| f < t)
    }

    /// Sublevel quiver of everything with filtration at most `t`.
    pub fn sublevel_closed(&self, t: T) -> Option<Self> {
        self.filter_by(|f| f <= t)
    }

    fn filter_by(&self, keep: impl Fn(T) -> bool) -> Option<Self> {
        let vertices: Vec<_> = self.vertices.iter().copied().filter(|v| keep(v.filtration)).collect();
        if vertices.is_empty() {
            return None;
        }
        let edges = self.edges.iter().copied().filter(|e| keep(e.filtration)).collect();
        Some(Self { vertices, edges })
    }

    /// Distinct filtration values of vertices and edges, ascending.
    pub fn critical_values(&self) -> Vec<T> {
        let values =
            self.vertices.iter().map(|v| v.filtration).chain(self.edges.iter().map(|e| e.filtration)).collect();
        distinct_sorted(values)
    }

    /// Copy with the edges in `remove` deleted.
    pub fn without_edges(&self, remove: &BTreeSet<EdgeId>) -> Self {
        Self {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().copied().filter(|e| !remove.contains(&e.id)).collect(),
        }
    }

    /// Copy with every filtration value converted to another scalar type.
    pub fn map_filtration<U: Filtration>(&self, f: impl Fn(T) -> U) -> FilteredQuiver<U> {
        FilteredQuiver {
            vertices: self.vertices.iter().map(|v| Vertex { id: v.id, filtration: f(v.filtration) }).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge { id: e.id, source: e.source, target: e.target, filtration: f(e.filtration) })
                .collect(),
        }
    }

    /// Dense view: edges as `(source index, target index)`.
    pub(crate) fn dense_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|e| (self.index_of(e.source).expect("valid quiver"), self.index_of(e.target).expect("valid quiver")))
            .collect()
    }
}
