//! Brute-force singular chains: every quiver morphism from a directed simplex
//! into a small quiver, for the three morphism kinds.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::complex::Z2Matrix;
use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::quiver::{EdgeId, FilteredQuiver, VertexId};
use crate::scalar::Filtration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    Map,
    Homomorphism,
    Inclusion,
}

/// Image of an edge `i -> j` of the directed simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeImage {
    Edge(EdgeId),
    /// The edge is sent to its (single) image vertex; quiver maps only.
    Collapse,
}

/// A morphism `Δⁿ → G`. `edge_image` lists the pairs `i < j` in
/// lexicographic order `(0,1), (0,2), …, (0,n), (1,2), …`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingularSimplex {
    pub vertex_image: Vec<VertexId>,
    pub edge_image: Vec<EdgeImage>,
}

impl SingularSimplex {
    pub fn dim(&self) -> usize {
        self.vertex_image.len() - 1
    }

    pub fn edge(&self, i: usize, j: usize) -> EdgeImage {
        self.edge_image[lex_pair(i, j, self.vertex_image.len())]
    }

    /// The face `f ∘ δ_i`.
    pub fn face(&self, i: usize) -> SingularSimplex {
        let m = self.vertex_image.len();
        let mut vertex_image = self.vertex_image.clone();
        vertex_image.remove(i);
        let mut edge_image = Vec::with_capacity((m - 1) * (m - 2) / 2);
        for a in (0..m).filter(|&a| a != i) {
            for b in (a + 1..m).filter(|&b| b != i) {
                edge_image.push(self.edge(a, b));
            }
        }
        SingularSimplex { vertex_image, edge_image }
    }
}

fn lex_pair(i: usize, j: usize, m: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Refuse instances with more than this many vertex-image candidates, and
    /// abort once this many simplices have been produced.
    pub bound: u128,
    pub workers: usize,
}

pub const DEFAULT_BOUND: u128 = 10_000_000;

impl Default for OracleOptions {
    fn default() -> Self {
        Self { bound: DEFAULT_BOUND, workers: 1 }
    }
}

/// Singular simplices of one dimension as fixed-stride rows of codes: dense
/// vertex positions, then edge positions in lexicographic pair order with
/// `COLLAPSE` for collapsed pairs. Rows are sorted.
pub(crate) struct Chains {
    n: usize,
    stride: usize,
    codes: Vec<u32>,
}

const COLLAPSE: u32 = u32::MAX;

impl Chains {
    fn len(&self) -> usize {
        self.codes.len() / self.stride
    }

    fn row(&self, i: usize) -> &[u32] {
        &self.codes[i * self.stride..(i + 1) * self.stride]
    }

    fn find(&self, key: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.row(mid).cmp(key) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Code of the face `f ∘ δ_i` of row `r`, written into `out`.
    fn face_into(&self, r: usize, i: usize, out: &mut Vec<u32>) {
        let row = self.row(r);
        let m = self.n + 1;
        out.clear();
        out.extend(row[..m].iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v));
        let edges = &row[m..];
        let mut p = 0;
        for a in 0..m {
            for b in a + 1..m {
                if a != i && b != i {
                    out.push(edges[p]);
                }
                p += 1;
            }
        }
    }

    /// Coboundary out of `lower`: one column per lower simplex listing the
    /// rows of `self` that have it as a face an odd number of times.
    fn coboundary(&self, lower: &Chains) -> Result<Z2Matrix> {
        let mut buf = Vec::with_capacity(lower.stride);
        let mut columns = vec![Vec::new(); lower.len()];
        for r in 0..self.len() {
            for i in 0..=self.n {
                self.face_into(r, i, &mut buf);
                let f = lower
                    .find(&buf)
                    .ok_or_else(|| Error::Internal(format!("face {i} of singular simplex {r} missing")))?;
                columns[f].push(r);
            }
        }
        Ok(Z2Matrix::new(self.len(), columns))
    }

    fn to_simplices(&self, ids: &[VertexId], edge_ids: &[EdgeId]) -> Vec<SingularSimplex> {
        let m = self.n + 1;
        (0..self.len())
            .map(|r| {
                let row = self.row(r);
                SingularSimplex {
                    vertex_image: row[..m].iter().map(|&v| ids[v as usize]).collect(),
                    edge_image: row[m..]
                        .iter()
                        .map(
                            |&e| {
                                if e == COLLAPSE {
                                    EdgeImage::Collapse
                                } else {
                                    EdgeImage::Edge(edge_ids[e as usize])
                                }
                            },
                        )
                        .collect(),
                }
            })
            .collect()
    }
}

struct Search<'a> {
    n: usize,
    kind: MorphismKind,
    nv: usize,
    between: &'a [Vec<Vec<u32>>],
    produced: &'a AtomicU64,
    bound: u128,
}

impl Search<'_> {
    fn options(&self, a: usize, b: usize) -> Vec<u32> {
        let mut opts = self.between[a][b].clone();
        match self.kind {
            MorphismKind::Map if a == b => opts.push(COLLAPSE),
            MorphismKind::Inclusion if a == b => opts.clear(),
            _ => {}
        }
        opts
    }

    /// Rows whose first vertex is `v0`, in canonical order.
    fn run(&self, v0: usize) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        let mut verts = vec![v0];
        self.vertices(&mut verts, &mut out)?;
        Ok(out)
    }

    fn vertices(&self, verts: &mut Vec<usize>, out: &mut Vec<u32>) -> Result<()> {
        if verts.len() == self.n + 1 {
            return self.edges(verts, out);
        }
        for v in 0..self.nv {
            if self.kind == MorphismKind::Inclusion && verts.contains(&v) {
                continue;
            }
            if verts.iter().any(|&u| self.options(u, v).is_empty()) {
                continue;
            }
            verts.push(v);
            self.vertices(verts, out)?;
            verts.pop();
        }
        Ok(())
    }

    fn edges(&self, verts: &[usize], out: &mut Vec<u32>) -> Result<()> {
        let m = verts.len();
        let mut choices = Vec::with_capacity(m * (m - 1) / 2);
        for a in 0..m {
            for b in a + 1..m {
                choices.push(self.options(verts[a], verts[b]));
            }
        }
        let mut pick = vec![0usize; choices.len()];
        loop {
            let produced = self.produced.fetch_add(1, Ordering::Relaxed) as u128 + 1;
            if produced > self.bound {
                return Err(Error::BoundExceeded { candidates: produced, bound: self.bound });
            }
            out.extend(verts.iter().map(|&v| v as u32));
            out.extend(pick.iter().zip(&choices).map(|(&p, c)| c[p]));
            // odometer, last pair fastest
            let mut k = pick.len();
            loop {
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
            }
        }
    }
}

pub(crate) fn enumerate_chains<T: Filtration>(
    q: &FilteredQuiver<T>,
    n: usize,
    kind: MorphismKind,
    opts: OracleOptions,
) -> Result<Chains> {
    let nv = q.num_vertices();
    let candidates = (nv as u128).checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
    if candidates > opts.bound {
        return Err(Error::BoundExceeded { candidates, bound: opts.bound });
    }
    let mut between = vec![vec![Vec::new(); nv]; nv];
    for (pos, (s, t)) in q.dense_edges().into_iter().enumerate() {
        between[s][t].push(pos as u32);
    }
    let produced = AtomicU64::new(0);
    let search = Search { n, kind, nv, between: &between, produced: &produced, bound: opts.bound };
    let parts = par_map(opts.workers, nv, |v0| search.run(v0));
    let mut codes = Vec::new();
    for part in parts {
        codes.extend(part?);
    }
    Ok(Chains { n, stride: n + 1 + n * (n + 1) / 2, codes })
}

/// All morphisms `Δⁿ → G` of the given kind, in canonical (lexicographic)
/// order.
pub fn enumerate_singular<T: Filtration>(
    q: &FilteredQuiver<T>,
    n: usize,
    kind: MorphismKind,
    opts: OracleOptions,
) -> Result<Vec<SingularSimplex>> {
    let chains = enumerate_chains(q, n, kind, opts)?;
    let ids: Vec<VertexId> = q.vertices().iter().map(|v| v.id).collect();
    let edge_ids: Vec<EdgeId> = q.edges().iter().map(|e| e.id).collect();
    Ok(chains.to_simplices(&ids, &edge_ids))
}

/// Whether some consecutive pair `i-1, i` is collapsed to a single vertex.
pub fn is_degenerate(f: &SingularSimplex, kind: MorphismKind) -> Result<bool> {
    if kind != MorphismKind::Map {
        return Err(Error::KindMismatch);
    }
    Ok((1..f.vertex_image.len())
        .any(|i| f.vertex_image[i - 1] == f.vertex_image[i] && f.edge(i - 1, i) == EdgeImage::Collapse))
}

/// Boundary matrix from canonically ordered `n`-simplices to canonically
/// ordered `(n-1)`-simplices.
pub fn singular_boundary(upper: &[SingularSimplex], lower: &[SingularSimplex]) -> Result<Z2Matrix> {
    let columns = upper
        .iter()
        .map(|f| {
            (0..f.vertex_image.len())
                .map(|i| {
                    let face = f.face(i);
                    lower
                        .binary_search(&face)
                        .map_err(|_| Error::Internal(format!("face {face:?} missing from enumeration")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Z2Matrix::new(lower.len(), columns))
}

/// Betti numbers of the full singular chain complex over Z₂.
pub fn oracle_betti<T: Filtration>(
    q: &FilteredQuiver<T>,
    kind: MorphismKind,
    max_dim: usize,
    opts: OracleOptions,
) -> Result<Vec<usize>> {
    let chains = (0..=max_dim + 1).map(|n| enumerate_chains(q, n, kind, opts)).collect::<Result<Vec<_>>>()?;
    // rank ∂_n = rank of the coboundary out of dimension n-1; reducing the
    // coboundaries upwards lets pivots of one dimension clear the next
    let mut ranks = vec![0; max_dim + 2];
    let mut cleared = vec![false; chains[0].len()];
    for n in 1..=max_dim + 1 {
        let cob = chains[n].coboundary(&chains[n - 1])?;
        let (rank, pivots) = cob.rank_with_clearing(&cleared);
        ranks[n] = rank;
        cleared = vec![false; chains[n].len()];
        for p in pivots {
            cleared[p] = true;
        }
    }
    Ok((0..=max_dim).map(|n| chains[n].len() - ranks[n] - ranks[n + 1]).collect())
}

/// Betti numbers of the subcomplex spanned by degenerate quiver maps.
pub fn degenerate_betti<T: Filtration>(
    q: &FilteredQuiver<T>,
    max_dim: usize,
    opts: OracleOptions,
) -> Result<Vec<usize>> {
    let chains = (0..=max_dim + 1)
        .map(|n| {
            let all = enumerate_singular(q, n, MorphismKind::Map, opts)?;
            let mut keep = Vec::new();
            for f in all {
                if is_degenerate(&f, MorphismKind::Map)? {
                    keep.push(f);
                }
            }
            Ok(keep)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ranks = vec![0; max_dim + 2];
    for n in 1..=max_dim + 1 {
        let columns = chains[n]
            .iter()
            .map(|f| {
                let faces: Vec<SingularSimplex> = (0..=n).map(|i| f.face(i)).collect();
                let mut rows = Vec::new();
                for face in &faces {
                    let copies = faces.iter().filter(|g| *g == face).count();
                    if copies % 2 == 1 && !rows.contains(face) {
                        rows.push(face.clone());
                    }
                }
                rows.iter()
                    .map(|face| {
                        chains[n - 1]
                            .binary_search(face)
                            .map_err(|_| Error::Internal("degenerate boundary leaves the subcomplex".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ranks[n] = Z2Matrix::new(chains[n - 1].len(), columns).rank();
    }
    Ok((0..=max_dim).map(|n| chains[n].len() - ranks[n] - ranks[n + 1]).collect())
}

/// Oracle Betti numbers of the closed sublevel quiver at every finite
/// critical value, followed by the whole quiver at `+inf`. An empty sublevel
/// has all Betti numbers zero.
pub fn oracle_sublevel_betti<T: Filtration>(
    q: &FilteredQuiver<T>,
    kind: MorphismKind,
    max_dim: usize,
    opts: OracleOptions,
) -> Result<Vec<(T, Vec<usize>)>> {
    let mut out = Vec::new();
    let mut values: Vec<T> = q.critical_values().into_iter().filter(|&t| t != T::infinity()).collect();
    values.push(T::infinity());
    for t in values {
        let sub = if t == T::infinity() { q.sublevel(t) } else { q.sublevel_closed(t) };
        let betti = match sub {
            Some(s) => oracle_betti(&s, kind, max_dim, opts)?,
            None => vec![0; max_dim + 1],
        };
        out.push((t, betti));
    }
    Ok(out)
}

/// Number of quiver maps `Δⁿ → G` per final vertex image, in dense vertex
/// order.
pub fn map_counts_by_last_vertex<T: Filtration>(
    q: &FilteredQuiver<T>,
    n: usize,
    opts: OracleOptions,
) -> Result<Vec<u128>> {
    let chains = enumerate_chains(q, n, MorphismKind::Map, opts)?;
    let mut counts = vec![0u128; q.num_vertices()];
    for r in 0..chains.len() {
        counts[chains.row(r)[n] as usize] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{double_cone, double_edge_pair};

    type Q = FilteredQuiver<f64>;

    fn count(q: &Q, n: usize, kind: MorphismKind) -> usize {
        enumerate_singular(q, n, kind, OracleOptions::default()).unwrap().len()
    }

    #[test]
    fn single_vertex_maps() {
        let q = Q::unfiltered(1, &[]);
        assert_eq!(count(&q, 1, MorphismKind::Map), 1);
        assert_eq!(count(&q, 1, MorphismKind::Homomorphism), 0);
    }

    #[test]
    fn loop_is_a_homomorphism_not_an_inclusion() {
        let q = Q::unfiltered(1, &[(0, 0)]);
        assert_eq!(count(&q, 1, MorphismKind::Homomorphism), 1);
        assert_eq!(count(&q, 1, MorphismKind::Map), 2);
        assert_eq!(count(&q, 1, MorphismKind::Inclusion), 0);
    }

    #[test]
    fn double_cone_inclusions() {
        assert_eq!(count(&double_cone(), 2, MorphismKind::Inclusion), 4);
    }

    #[test]
    fn canonical_order_and_faces() {
        let q = Q::unfiltered(3, &[(0, 1), (1, 2), (0, 2), (0, 2)]);
        let all = enumerate_singular(&q, 2, MorphismKind::Map, OracleOptions::default()).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let lower = enumerate_singular(&q, 1, MorphismKind::Map, OracleOptions::default()).unwrap();
        let d2 = singular_boundary(&all, &lower).unwrap();
        let vertices = enumerate_singular(&q, 0, MorphismKind::Map, OracleOptions::default()).unwrap();
        let d1 = singular_boundary(&lower, &vertices).unwrap();
        assert!(d1.mul(&d2).is_zero());
    }

    #[test]
    fn edge_and_constant_boundaries() {
        let q = Q::unfiltered(2, &[(0, 1)]);
        let ones = enumerate_singular(&q, 1, MorphismKind::Map, OracleOptions::default()).unwrap();
        let zeros = enumerate_singular(&q, 0, MorphismKind::Map, OracleOptions::default()).unwrap();
        let d = singular_boundary(&ones, &zeros).unwrap();
        for (f, col) in ones.iter().zip(d.columns()) {
            if f.edge_image[0] == EdgeImage::Collapse {
                assert!(col.is_empty());
            } else {
                assert_eq!(col, &vec![0, 1]);
            }
        }
    }

    #[test]
    fn degeneracy() {
        let constant = SingularSimplex { vertex_image: vec![VertexId(0); 2], edge_image: vec![EdgeImage::Collapse] };
        assert!(is_degenerate(&constant, MorphismKind::Map).unwrap());
        assert!(is_degenerate(&constant, MorphismKind::Inclusion).is_err());
        let q: Q = double_cone();
        for f in enumerate_singular(&q, 2, MorphismKind::Inclusion, OracleOptions::default()).unwrap() {
            assert!(!is_degenerate(&f, MorphismKind::Map).unwrap());
        }
        let f = SingularSimplex {
            vertex_image: vec![VertexId(0), VertexId(0), VertexId(1)],
            edge_image: vec![EdgeImage::Collapse, EdgeImage::Edge(EdgeId(0)), EdgeImage::Edge(EdgeId(0))],
        };
        assert!(is_degenerate(&f, MorphismKind::Map).unwrap());
    }

    #[test]
    fn golden_betti() {
        let opts = OracleOptions::default();
        let g: Q = double_cone();
        assert_eq!(oracle_betti(&g, MorphismKind::Inclusion, 2, opts).unwrap(), vec![1, 0, 1]);
        assert_eq!(oracle_betti(&g, MorphismKind::Homomorphism, 2, opts).unwrap(), vec![1, 0, 1]);
        assert_eq!(oracle_betti(&g, MorphismKind::Map, 2, opts).unwrap(), vec![1, 0, 0]);
        let p: Q = double_edge_pair();
        assert_eq!(oracle_betti(&p, MorphismKind::Inclusion, 1, opts).unwrap(), vec![1, 1]);
        assert_eq!(oracle_betti(&p, MorphismKind::Map, 1, opts).unwrap(), vec![1, 0]);
    }

    #[test]
    fn bound_is_enforced() {
        let q = Q::unfiltered(4, &[]);
        let tight = OracleOptions { bound: 10, workers: 1 };
        match enumerate_singular(&q, 1, MorphismKind::Map, tight) {
            Err(Error::BoundExceeded { candidates, bound }) => assert_eq!((candidates, bound), (16, 10)),
            other => panic!("unexpected {other:?}"),
        }
        let q = Q::unfiltered(1, &[(0, 0), (0, 0), (0, 0)]);
        assert!(enumerate_singular(&q, 3, MorphismKind::Map, tight).is_err());
    }

    #[test]
    fn sublevel_transitions() {
        let q = Q::unfiltered(2, &[(0, 1)]);
        let entries = oracle_sublevel_betti(&q, MorphismKind::Map, 1, OracleOptions::default()).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].1, oracle_betti(&q, MorphismKind::Map, 1, OracleOptions::default()).unwrap());

        let q = Q::from_parts(&[0.0, 0.0], &[(0, 1, 1.0)]);
        let entries = oracle_sublevel_betti(&q, MorphismKind::Inclusion, 0, OracleOptions::default()).unwrap();
        let b0: Vec<usize> = entries.iter().map(|(_, b)| b[0]).collect();
        assert_eq!(b0, vec![2, 1, 1]);
    }

    #[test]
    fn workers_agree() {
        let q: Q = double_cone();
        let one = enumerate_singular(&q, 3, MorphismKind::Map, OracleOptions::default()).unwrap();
        let four =
            enumerate_singular(&q, 3, MorphismKind::Map, OracleOptions { workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one, four);
    }
}
