//! Reduced directed flag complex: the simplicial complex of vertex sets that
//! span an inclusion of a directed simplex into the reduced digraph.

use std::collections::BTreeMap;

use super::BuildOptions;
use crate::complex::{from_simplicial, FilteredDeltaSet, FilteredSimplicialComplex};
use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::quiver::{reduced_digraph, FilteredQuiver, VertexId, VertexOrder};
use crate::scalar::Filtration;

/// Builds the reduced flag complex through dimension `opts.max_dim + 1`.
/// Each simplex carries the smallest filtration over its realizations.
pub fn reduced_flag<T: Filtration>(q: &FilteredQuiver<T>, opts: BuildOptions) -> Result<FilteredSimplicialComplex<T>> {
    let violations = q.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidQuiver(violations));
    }
    let r = reduced_digraph(q);
    let nv = r.num_vertices();
    let ids: Vec<VertexId> = r.vertices().iter().map(|v| v.id).collect();
    let mut into: Vec<Vec<Option<T>>> = vec![vec![None; nv]; nv];
    for (e, (s, t)) in r.edges().iter().zip(r.dense_edges()) {
        into[t][s] = Some(e.filtration);
    }

    let mut level: Vec<(Vec<usize>, T)> =
        r.vertices().iter().enumerate().map(|(i, v)| (vec![i], v.filtration)).collect();
    let mut dims = vec![to_ids(&level, &ids)];
    for _ in 0..opts.top() {
        let per_vertex = par_map(opts.workers, nv, |v| {
            level
                .iter()
                .filter(|(s, _)| !s.contains(&v))
                .filter_map(|(s, f)| {
                    let mut filt = f.max_ext(r.vertices()[v].filtration);
                    for &x in s {
                        filt = filt.max_ext(into[v][x]?);
                    }
                    let mut simplex = s.clone();
                    let at = simplex.partition_point(|&x| x < v);
                    simplex.insert(at, v);
                    Some((simplex, filt))
                })
                .collect::<Vec<_>>()
        });
        let mut merged: BTreeMap<Vec<usize>, T> = BTreeMap::new();
        for (simplex, filt) in per_vertex.into_iter().flatten() {
            merged.entry(simplex).and_modify(|f| *f = f.min_ext(filt)).or_insert(filt);
        }
        level = merged.into_iter().collect();
        dims.push(to_ids(&level, &ids));
    }
    Ok(FilteredSimplicialComplex::new(dims))
}

fn to_ids<T: Filtration>(level: &[(Vec<usize>, T)], ids: &[VertexId]) -> Vec<(Vec<VertexId>, T)> {
    level.iter().map(|(s, f)| (s.iter().map(|&i| ids[i]).collect(), *f)).collect()
}

/// The reduced flag complex as a Δ-set, vertices ordered by ascending id.
pub fn reduced_flag_delta<T: Filtration>(q: &FilteredQuiver<T>, opts: BuildOptions) -> Result<FilteredDeltaSet<T>> {
    let k = reduced_flag(q, opts)?;
    let order = VertexOrder(q.vertices().iter().map(|v| v.id).collect());
    from_simplicial(&k, &order)
}
