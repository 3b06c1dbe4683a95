use std::collections::{BTreeSet, HashMap};

use super::{Cell, ComplexViolation, FilteredDeltaSet};
use crate::error::{Error, Result};
use crate::quiver::{VertexId, VertexOrder};
use crate::scalar::{format_filtration, Filtration};

/// A filtered abstract simplicial complex. Dimension `n` holds simplices as
/// strictly ascending vertex-id lists of length `n + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredSimplicialComplex<T> {
    dims: Vec<Vec<(Vec<VertexId>, T)>>,
}

impl<T: Filtration> FilteredSimplicialComplex<T> {
    /// Levels are sorted lexicographically; trailing empty levels dropped.
    pub fn new(mut dims: Vec<Vec<(Vec<VertexId>, T)>>) -> Self {
        for level in &mut dims {
            level.sort_by(|a, b| a.0.cmp(&b.0));
        }
        while dims.len() > 1 && dims.last().is_some_and(Vec::is_empty) {
            dims.pop();
        }
        Self { dims }
    }

    pub fn simplices(&self, dim: usize) -> &[(Vec<VertexId>, T)] {
        self.dims.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn num_dims(&self) -> usize {
        self.dims.len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.dims.iter().map(Vec::len).collect()
    }

    /// Ascending lists, closure under faces and monotone filtration.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let lookup: Vec<HashMap<&[VertexId], T>> =
            self.dims.iter().map(|level| level.iter().map(|(s, f)| (s.as_slice(), *f)).collect()).collect();
        for (dim, level) in self.dims.iter().enumerate() {
            if lookup[dim].len() != level.len() {
                out.push(format!("duplicate simplex in dimension {dim}"));
            }
            for (s, f) in level {
                if s.len() != dim + 1 || s.windows(2).any(|w| w[0] >= w[1]) {
                    out.push(format!("simplex {s:?} is not a strictly ascending list of {} vertices", dim + 1));
                    continue;
                }
                if dim == 0 {
                    continue;
                }
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    match lookup[dim - 1].get(face.as_slice()) {
                        None => out.push(format!("face {face:?} of {s:?} missing")),
                        Some(ff) if *ff > *f => out.push(format!(
                            "face {face:?} at {} above {s:?} at {}",
                            format_filtration(*ff),
                            format_filtration(*f)
                        )),
                        Some(_) => {}
                    }
                }
            }
        }
        out
    }
}

/// Δ-set of a simplicial complex: every simplex lists its vertices in the
/// given order and `d_i` drops the `i`-th of them. Simplices keep their
/// positions from `k`.
pub fn from_simplicial<T: Filtration>(
    k: &FilteredSimplicialComplex<T>,
    order: &VertexOrder,
) -> Result<FilteredDeltaSet<T>> {
    let rank: HashMap<VertexId, usize> = order.as_slice().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let vertices: BTreeSet<VertexId> = k.simplices(0).iter().map(|(s, _)| s[0]).collect();
    if rank.len() != order.as_slice().len() || vertices.iter().any(|v| !rank.contains_key(v)) {
        return Err(Error::InvalidOrder);
    }
    let mut out = FilteredDeltaSet::from_vertices(k.simplices(0).iter().map(|(s, f)| (s[0], *f)));
    let mut prev: HashMap<Vec<VertexId>, usize> =
        k.simplices(0).iter().enumerate().map(|(i, (s, _))| (s.clone(), i)).collect();
    for dim in 1..k.num_dims() {
        let mut cells = Vec::with_capacity(k.simplices(dim).len());
        for (s, f) in k.simplices(dim) {
            let mut ordered = s.clone();
            ordered.sort_by_key(|v| rank.get(v).copied().unwrap_or(usize::MAX));
            let faces = (0..=dim)
                .map(|i| {
                    let mut face = ordered.clone();
                    face.remove(i);
                    face.sort();
                    prev.get(&face)
                        .copied()
                        .ok_or_else(|| Error::InvalidComplex(format!("face {face:?} of {s:?} missing")))
                })
                .collect::<Result<Vec<_>>>()?;
            cells.push(Cell { faces, filtration: *f });
        }
        prev = k.simplices(dim).iter().enumerate().map(|(i, (s, _))| (s.clone(), i)).collect();
        out.push_level(cells);
    }
    Ok(out.finish())
}

impl From<ComplexViolation> for Error {
    fn from(v: ComplexViolation) -> Self {
        Error::InvalidComplex(v.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{betti, validate_faces, FilteredComplex};

    fn ids(v: &[u64]) -> Vec<VertexId> {
        v.iter().map(|&i| VertexId(i)).collect()
    }

    fn full_triangle() -> FilteredSimplicialComplex<f64> {
        FilteredSimplicialComplex::new(vec![
            vec![(ids(&[0]), 0.0), (ids(&[1]), 0.0), (ids(&[2]), 0.0)],
            vec![(ids(&[0, 1]), 0.0), (ids(&[0, 2]), 0.0), (ids(&[1, 2]), 0.0)],
            vec![(ids(&[0, 1, 2]), 1.0)],
        ])
    }

    #[test]
    fn triangle_faces_drop_each_vertex() {
        let k = full_triangle();
        assert!(k.validate().is_empty());
        let d = from_simplicial(&k, &VertexOrder(ids(&[0, 1, 2]))).unwrap();
        assert_eq!(d.counts(), vec![3, 3, 1]);
        // faces (bc, ac, ab)
        assert_eq!(d.cells(2)[0].faces, vec![2, 1, 0]);
        assert!(validate_faces(&d).is_empty());
    }

    #[test]
    fn other_order_is_also_valid() {
        let k = full_triangle();
        let d = from_simplicial(&k, &VertexOrder(ids(&[2, 0, 1]))).unwrap();
        assert!(validate_faces(&d).is_empty());
        assert_eq!(betti(&d, 1), vec![1, 0]);
    }

    #[test]
    fn vertices_only() {
        let k = FilteredSimplicialComplex::new(vec![vec![(ids(&[4]), 0.0)], vec![]]);
        let d = from_simplicial(&k, &VertexOrder(ids(&[4]))).unwrap();
        assert_eq!(d.num_dims(), 1);
    }

    #[test]
    fn missing_face_is_reported() {
        let k =
            FilteredSimplicialComplex::new(vec![vec![(ids(&[0]), 0.0), (ids(&[1]), 0.0)], vec![(ids(&[0, 2]), 0.0)]]);
        assert!(!k.validate().is_empty());
        assert!(from_simplicial(&k, &VertexOrder(ids(&[0, 1]))).is_err());
    }

    #[test]
    fn order_must_cover_vertices() {
        assert!(matches!(from_simplicial(&full_triangle(), &VertexOrder(ids(&[0, 1]))), Err(Error::InvalidOrder)));
    }
}
