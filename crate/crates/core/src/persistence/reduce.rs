use std::collections::HashMap;

use super::matrix::{Column, FilteredBoundaryMatrix};
use crate::complex::z2_add;
use crate::scalar::Filtration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Zero out columns known to reduce to zero (dimensions processed from
    /// the top down).
    pub clearing: bool,
    /// Reduce the anti-transposed coboundary matrix instead.
    pub cohomology: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        Self { clearing: true, cohomology: false }
    }
}

/// Persistence pairs `(birth, death)` and unpaired columns, as global
/// positions, both sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
}

fn reduce_columns(boundaries: &[Vec<usize>], dims: &[usize], clearing: bool) -> Pairing {
    let n = boundaries.len();
    let mut order: Vec<usize> = (0..n).collect();
    if clearing {
        order.sort_by(|&a, &b| dims[b].cmp(&dims[a]).then(a.cmp(&b)));
    }
    let mut reduced: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut cleared = vec![false; n];
    for j in order {
        if cleared[j] {
            continue;
        }
        let mut col = boundaries[j].clone();
        while let Some(&low) = col.last() {
            match owner.get(&low) {
                Some(&k) => col = z2_add(&col, &reduced[k]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            owner.insert(low, j);
            if clearing {
                cleared[low] = true;
            }
        }
        reduced[j] = col;
    }
    let mut pairs: Vec<(usize, usize)> = owner.into_iter().collect();
    pairs.sort_unstable();
    let mut paired = vec![false; n];
    for &(i, j) in &pairs {
        paired[i] = true;
        paired[j] = true;
    }
    let essential = (0..n).filter(|&i| !paired[i]).collect();
    Pairing { pairs, essential }
}

/// Standard left-to-right Z₂ reduction.
pub fn reduce<T: Filtration>(d: &FilteredBoundaryMatrix<T>, opts: ReduceOptions) -> Pairing {
    let dims: Vec<usize> = d.columns.iter().map(|c| c.dim).collect();
    if !opts.cohomology {
        let boundaries: Vec<Vec<usize>> = d.columns.iter().map(|c: &Column<T>| c.boundary.clone()).collect();
        return reduce_columns(&boundaries, &dims, opts.clearing);
    }
    let n = d.len();
    let mut cob: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, c) in d.columns.iter().enumerate() {
        for &i in &c.boundary {
            cob[n - 1 - i].push(n - 1 - j);
        }
    }
    for col in &mut cob {
        col.sort_unstable();
    }
    let top = dims.iter().copied().max().unwrap_or(0);
    let co_dims: Vec<usize> = (0..n).map(|j| top - dims[n - 1 - j]).collect();
    let co = reduce_columns(&cob, &co_dims, opts.clearing);
    let mut pairs: Vec<(usize, usize)> = co.pairs.iter().map(|&(a, b)| (n - 1 - b, n - 1 - a)).collect();
    pairs.sort_unstable();
    let mut essential: Vec<usize> = co.essential.iter().map(|&i| n - 1 - i).collect();
    essential.sort_unstable();
    Pairing { pairs, essential }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CellRef;
    use proptest::prelude::*;

    fn matrix(cols: Vec<(usize, f64, Vec<usize>)>) -> FilteredBoundaryMatrix<f64> {
        let columns = cols
            .into_iter()
            .enumerate()
            .map(|(index, (dim, filtration, boundary))| Column {
                dim,
                filtration,
                source: CellRef { dim, index },
                boundary,
            })
            .collect();
        FilteredBoundaryMatrix { columns, max_dim: 1 }
    }

    fn triangle() -> FilteredBoundaryMatrix<f64> {
        matrix(vec![
            (0, 0.0, vec![]),
            (0, 0.0, vec![]),
            (0, 0.0, vec![]),
            (1, 0.0, vec![0, 1]),
            (1, 0.0, vec![0, 2]),
            (1, 0.0, vec![1, 2]),
            (2, 1.0, vec![3, 4, 5]),
        ])
    }

    #[test]
    fn triangle_kills_cycle() {
        for clearing in [false, true] {
            for cohomology in [false, true] {
                let p = reduce(&triangle(), ReduceOptions { clearing, cohomology });
                assert_eq!(p.pairs, vec![(1, 3), (2, 4), (5, 6)]);
                assert_eq!(p.essential, vec![0]);
            }
        }
    }

    #[test]
    fn reduced_matrix_keeps_pairing() {
        let m = matrix(vec![(0, 0.0, vec![]), (0, 0.0, vec![]), (1, 1.0, vec![0, 1])]);
        let p = reduce(&m, ReduceOptions::default());
        assert_eq!(p.pairs, vec![(1, 2)]);
        assert!(p.pairs.len() <= m.len());
    }

    /// Dense elimination that processes the columns of each equal-filtration
    /// block right to left.
    fn naive_lows(cols: &[Vec<usize>], filts: &[u8]) -> Vec<Option<usize>> {
        let n = cols.len();
        let mut dense: Vec<Vec<bool>> = cols.iter().map(|c| (0..n).map(|r| c.contains(&r)).collect()).collect();
        let low = |c: &Vec<bool>| c.iter().rposition(|&x| x);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| filts[a].cmp(&filts[b]).then(b.cmp(&a)));
        let mut done: Vec<usize> = Vec::new();
        for &j in &order {
            while let Some(l) = low(&dense[j]) {
                let Some(&k) = done.iter().find(|&&k| low(&dense[k]) == Some(l)) else { break };
                let other = dense[k].clone();
                for (x, y) in dense[j].iter_mut().zip(other) {
                    *x ^= y;
                }
            }
            done.push(j);
        }
        dense.iter().map(low).collect()
    }

    proptest! {
        #[test]
        fn lows_match_naive_reduction(
            raw in prop::collection::vec((0u8..4, prop::collection::vec(any::<prop::sample::Index>(), 0..4)), 1..60)
        ) {
            // columns sorted by filtration; boundaries only reach earlier columns
            let mut raw = raw;
            raw.sort_by_key(|r| r.0);
            let cols: Vec<Vec<usize>> = raw
                .iter()
                .enumerate()
                .map(|(j, (_, idx))| {
                    if j == 0 {
                        return Vec::new();
                    }
                    crate::complex::z2_reduce(idx.iter().map(|i| i.index(j)).collect())
                })
                .collect();
            let filts: Vec<u8> = raw.iter().map(|r| r.0).collect();
            let m = matrix(cols.iter().zip(&filts).map(|(c, &f)| (0, f as f64, c.clone())).collect());
            let p = reduce(&m, ReduceOptions { clearing: false, cohomology: false });
            // low rows per filtration block are invariant under the column order
            let mut ours: Vec<(usize, u8)> = p.pairs.iter().map(|&(i, j)| (i, filts[j])).collect();
            let mut theirs: Vec<(usize, u8)> = naive_lows(&cols, &filts)
                .into_iter()
                .enumerate()
                .filter_map(|(j, l)| l.map(|i| (i, filts[j])))
                .collect();
            ours.sort_unstable();
            theirs.sort_unstable();
            prop_assert_eq!(ours, theirs);
        }
    }
}
