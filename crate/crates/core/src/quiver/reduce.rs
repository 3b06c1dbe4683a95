//! Homotopy-preserving reductions and loop-maximal orders.

use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, EdgeId, FilteredQuiver, VertexId};
use crate::error::{Error, Result};
use crate::scalar::Filtration;

/// A total order on the vertices of a quiver, listed smallest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder(pub Vec<VertexId>);

impl VertexOrder {
    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    /// Rank of every vertex, or `None` unless this is a permutation of the
    /// quiver's vertex set.
    pub fn ranks<T: Filtration>(&self, q: &FilteredQuiver<T>) -> Option<BTreeMap<VertexId, usize>> {
        let ranks: BTreeMap<_, _> = self.0.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let covers = ranks.len() == self.0.len()
            && ranks.len() == q.num_vertices()
            && q.vertices().iter().all(|v| ranks.contains_key(&v.id));
        covers.then_some(ranks)
    }

    /// Every loop-free vertex precedes every looped vertex.
    pub fn is_loop_maximal<T: Filtration>(&self, q: &FilteredQuiver<T>) -> bool {
        if self.ranks(q).is_none() {
            return false;
        }
        let looped = q.looped_vertices();
        let first_looped = self.0.iter().position(|v| looped.contains(v)).unwrap_or(self.0.len());
        self.0[first_looped..].iter().all(|v| looped.contains(v))
    }
}

/// Loop-free vertices by ascending id, then looped vertices by ascending id.
pub fn loop_maximal_order<T: Filtration>(q: &FilteredQuiver<T>) -> VertexOrder {
    let looped = q.looped_vertices();
    let (mut free, mut with_loop): (Vec<_>, Vec<_>) =
        q.vertices().iter().map(|v| v.id).partition(|v| !looped.contains(v));
    free.sort();
    with_loop.sort();
    free.extend(with_loop);
    VertexOrder(free)
}

/// Loop-maximal order that stays loop-maximal in every sublevel quiver:
/// loop-free vertices first, then looped vertices by decreasing loop time,
/// ties by ascending id. Agrees with [`loop_maximal_order`] when all loops
/// share one filtration value.
pub fn filtered_loop_maximal_order<T: Filtration>(q: &FilteredQuiver<T>) -> VertexOrder {
    let times = q.loop_times();
    let mut free: Vec<_> = q.vertices().iter().map(|v| v.id).filter(|v| !times.contains_key(v)).collect();
    free.sort();
    let mut with_loop: Vec<_> = times.into_iter().collect();
    with_loop.sort_by(|a, b| b.1.total_cmp_ext(&a.1).then(a.0.cmp(&b.0)));
    free.extend(with_loop.into_iter().map(|(v, _)| v));
    VertexOrder(free)
}

/// Keeps the edges accepted by `keep` and merges each parallel family of
/// `collapsible` edges into one edge with the family's minimum filtration and
/// smallest id.
fn collapse<T: Filtration>(
    q: &FilteredQuiver<T>,
    keep: impl Fn(&Edge<T>) -> bool,
    collapsible: impl Fn(&Edge<T>) -> bool,
) -> FilteredQuiver<T> {
    let mut families: BTreeMap<(VertexId, VertexId), Edge<T>> = BTreeMap::new();
    let mut edges = Vec::new();
    for e in q.edges().iter().filter(|e| keep(e)) {
        if !collapsible(e) {
            edges.push(*e);
            continue;
        }
        families
            .entry((e.source, e.target))
            .and_modify(|rep| {
                rep.filtration = rep.filtration.min_ext(e.filtration);
                rep.id = rep.id.min(e.id);
            })
            .or_insert(*e);
    }
    edges.extend(families.into_values());
    FilteredQuiver::new(q.vertices().to_vec(), edges)
}

/// The reduced digraph: loops removed, parallel edges collapsed to their
/// earliest member.
pub fn reduced_digraph<T: Filtration>(q: &FilteredQuiver<T>) -> FilteredQuiver<T> {
    collapse(q, |e| !e.is_loop(), |_| true)
}

/// The partially reduced quiver: parallel edges with a looped endpoint are
/// collapsed (multiple loops included); all other edges are kept as is.
pub fn partially_reduced<T: Filtration>(q: &FilteredQuiver<T>) -> FilteredQuiver<T> {
    let looped = q.looped_vertices();
    collapse(q, |_| true, |e| looped.contains(&e.source) || looped.contains(&e.target))
}

/// Loops that are degenerate: the unique loop at their vertex `v`, where every
/// edge between `v` and another vertex `u` (either direction) is not a
/// multiple edge, and `u` has a loop or the edge is not a double edge.
pub fn degenerate_loops<T: Filtration>(q: &FilteredQuiver<T>) -> BTreeSet<EdgeId> {
    let flags = q.edge_flags();
    let looped = q.looped_vertices();
    let mut loops_at: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for e in q.edges().iter().filter(|e| e.is_loop()) {
        loops_at.entry(e.source).or_default().push(e.id);
    }
    loops_at
        .into_iter()
        .filter_map(|(v, loops)| {
            if loops.len() != 1 {
                return None;
            }
            let ok = q.edges().iter().zip(&flags).all(|(e, f)| {
                if e.is_loop() || (e.source != v && e.target != v) {
                    return true;
                }
                let u = if e.source == v { e.target } else { e.source };
                !f.is_multiple && (looped.contains(&u) || !f.is_double)
            });
            ok.then_some(loops[0])
        })
        .collect()
}

/// Removes the given loops, which must all be degenerate.
pub fn loop_contract<T: Filtration>(q: &FilteredQuiver<T>, loops: &BTreeSet<EdgeId>) -> Result<FilteredQuiver<T>> {
    let certified = degenerate_loops(q);
    if let Some(&bad) = loops.iter().find(|l| !certified.contains(l)) {
        return Err(Error::NotDegenerate(bad));
    }
    Ok(q.without_edges(loops))
}
