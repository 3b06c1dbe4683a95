//! Standard quivers: directed simplices, products and test families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Edge, EdgeId, FilteredQuiver, Vertex, VertexId};
use crate::scalar::Filtration;

/// The directed simplex on vertices `0..=n` with an edge `a -> b` for every
/// `a < b`. Edge ids follow lexicographic order on `(a, b)`.
pub fn directed_simplex<T: Filtration>(n: usize) -> FilteredQuiver<T> {
    let mut edges = Vec::new();
    for a in 0..=n as u64 {
        for b in a + 1..=n as u64 {
            edges.push((a, b));
        }
    }
    FilteredQuiver::unfiltered(n as u64 + 1, &edges)
}

/// Vertex map of the face inclusion `δ_i : Δⁿ → Δⁿ⁺¹`, skipping `i`.
pub fn simplex_face(n: usize, i: usize) -> Vec<usize> {
    assert!(i <= n + 1, "face index {i} out of range for Δ^{n}");
    (0..=n).map(|j| if j < i { j } else { j + 1 }).collect()
}

/// Strong box product. Vertex `(a, b)` gets id `ia * |V₂| + ib` where `ia`,
/// `ib` are dense positions; edges come in the blocks `E₁×V₂`, `V₁×E₂`,
/// `E₁×E₂`, each numbered lexicographically. Filtrations are the max of the
/// factors.
pub fn strong_box_product<T: Filtration>(q1: &FilteredQuiver<T>, q2: &FilteredQuiver<T>) -> FilteredQuiver<T> {
    let n2 = q2.num_vertices() as u64;
    let vid = |a: usize, b: usize| VertexId(a as u64 * n2 + b as u64);
    let mut vertices = Vec::new();
    for (a, va) in q1.vertices().iter().enumerate() {
        for (b, vb) in q2.vertices().iter().enumerate() {
            vertices.push(Vertex { id: vid(a, b), filtration: va.filtration.max_ext(vb.filtration) });
        }
    }
    let e1 = q1.dense_edges();
    let e2 = q2.dense_edges();
    let mut edges = Vec::new();
    let mut push = |source: VertexId, target: VertexId, filtration: T| {
        let id = EdgeId(edges.len() as u64);
        edges.push(Edge { id, source, target, filtration });
    };
    for (e, &(s, t)) in q1.edges().iter().zip(&e1) {
        for (b, vb) in q2.vertices().iter().enumerate() {
            push(vid(s, b), vid(t, b), e.filtration.max_ext(vb.filtration));
        }
    }
    for (a, va) in q1.vertices().iter().enumerate() {
        for (e, &(s, t)) in q2.edges().iter().zip(&e2) {
            push(vid(a, s), vid(a, t), va.filtration.max_ext(e.filtration));
        }
    }
    for (ea, &(sa, ta)) in q1.edges().iter().zip(&e1) {
        for (eb, &(sb, tb)) in q2.edges().iter().zip(&e2) {
            push(vid(sa, sb), vid(ta, tb), ea.filtration.max_ext(eb.filtration));
        }
    }
    FilteredQuiver::new(vertices, edges)
}

/// The double cone: `u = 0`, `v = 1` joined by a double edge, and two apexes
/// `w = 2`, `w' = 3` each with edges to `u` and `v`.
pub fn double_cone<T: Filtration>() -> FilteredQuiver<T> {
    FilteredQuiver::unfiltered(4, &[(0, 1), (1, 0), (2, 0), (2, 1), (3, 0), (3, 1)])
}

/// Two vertices joined by a double edge.
pub fn double_edge_pair<T: Filtration>() -> FilteredQuiver<T> {
    FilteredQuiver::unfiltered(2, &[(0, 1), (1, 0)])
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle<T: Filtration>(n: u64) -> FilteredQuiver<T> {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    FilteredQuiver::unfiltered(n, &edges)
}

/// Complete DAG on `n` vertices: `a -> b` for all `a < b`.
pub fn complete_dag<T: Filtration>(n: usize) -> FilteredQuiver<T> {
    assert!(n >= 1);
    directed_simplex(n - 1)
}

/// Shape of [`random_quiver`] instances.
#[derive(Clone, Copy, Debug)]
pub struct RandomQuiverParams {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub allow_loops: bool,
    /// Integer vertex filtrations in `0..=max_level`; edges add `0..=2` on
    /// top of their endpoints. `None` leaves everything at `-inf`.
    pub max_level: Option<u32>,
}

impl Default for RandomQuiverParams {
    fn default() -> Self {
        Self { max_vertices: 5, max_edges: 8, allow_loops: true, max_level: None }
    }
}

/// Random quiver with 1..=max_vertices vertices and 0..=max_edges edges, with
/// loops, multiple edges and double edges all possible.
pub fn random_quiver<T: Filtration, R: Rng>(rng: &mut R, params: RandomQuiverParams) -> FilteredQuiver<T> {
    let n = rng.gen_range(1..=params.max_vertices.max(1));
    let m = rng.gen_range(0..=params.max_edges);
    let level = |rng: &mut R, hi: u32| T::from(rng.gen_range(0..=hi)).expect("small integer");
    let vfilt: Vec<T> = (0..n)
        .map(|_| match params.max_level {
            Some(hi) => level(rng, hi),
            None => T::neg_infinity(),
        })
        .collect();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        if s == t && !params.allow_loops {
            if n == 1 {
                break;
            }
            continue;
        }
        let f = match params.max_level {
            Some(_) => vfilt[s].max_ext(vfilt[t]) + level(rng, 2),
            None => T::neg_infinity(),
        };
        edges.push((s as u64, t as u64, f));
    }
    FilteredQuiver::from_parts(&vfilt, &edges)
}

/// The `index`-th quiver of the stream seeded by `seed`.
pub fn seeded_quiver<T: Filtration>(seed: u64, index: usize, params: RandomQuiverParams) -> FilteredQuiver<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..index).for_each(|_| drop(random_quiver::<T, _>(&mut rng, params)));
    random_quiver(&mut rng, params)
}
