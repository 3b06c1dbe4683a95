//! Partial directed flag complex.
//!
//! Simplices of the directed flag complex that agree on their vertex set,
//! their looped vertices and their loop-free part are identified. As a
//! filtered object the identification is realized by gluing: every class of
//! duplicates is joined by extra cells along a minimum spanning tree, each
//! extra cell appearing when its two simplices become identified.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{directed_flag, BuildOptions, DirectedFlag};
use crate::complex::{z2_reduce, Cell, CellRef, FilteredCellComplex, FilteredComplex, FilteredDeltaSet};
use crate::error::{Error, Result};
use crate::quiver::{partially_reduced, Edge, EdgeId, FilteredQuiver, VertexId, VertexOrder};
use crate::scalar::{format_filtration, Filtration};

/// Loop data of a simplex of the directed flag complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinTriple {
    pub simplex: CellRef,
    /// The face spanned by the loop-free vertices; the simplex itself when it
    /// has no looped vertex, `None` when every vertex is looped.
    pub nonloop: Option<CellRef>,
    /// Looped vertices, ascending.
    pub loops: Vec<VertexId>,
}

/// A cell gluing two `n`-simplices. Its boundary is both simplices plus the
/// extra `n`-cells in `connecting`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtraCell<T> {
    pub glued: (usize, usize),
    pub connecting: Vec<usize>,
    pub filtration: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MstOutcome<T> {
    pub cells: Vec<ExtraCell<T>>,
    pub diagnostics: Vec<String>,
}

/// Minimum spanning tree of the complete graph on `group` (Kruskal, ties by
/// `(weight, smaller index, larger index)`). `weight` returns the pair weight
/// and the connecting cells, or `None` when no connection exists; such pairs
/// weigh `+inf` and are reported if the tree needs them.
pub fn mst_extra_cells<T, W>(group: &[usize], mut weight: W) -> MstOutcome<T>
where
    T: Filtration,
    W: FnMut(usize, usize) -> Option<(T, Vec<usize>)>,
{
    let mut members = group.to_vec();
    members.sort_unstable();
    let mut pairs = Vec::new();
    for (bi, &b) in members.iter().enumerate() {
        for (ai, &a) in members[..bi].iter().enumerate() {
            let (w, connecting, connected) = match weight(a, b) {
                Some((w, c)) => (w, c, true),
                None => (T::infinity(), Vec::new(), false),
            };
            pairs.push((w, a, b, ai, bi, connecting, connected));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp_ext(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut out = MstOutcome { cells: Vec::new(), diagnostics: Vec::new() };
    for (w, a, b, ai, bi, connecting, connected) in pairs {
        let (ra, rb) = (find(&mut parent, ai), find(&mut parent, bi));
        if ra == rb {
            continue;
        }
        parent[ra] = rb;
        if !connected || w == T::infinity() {
            out.diagnostics
                .push(format!("disconnected duplicates {a} and {b}: gluing weight {}", format_filtration(w)));
        }
        out.cells.push(ExtraCell { glued: (a, b), connecting, filtration: w });
    }
    out
}

#[derive(Clone, Debug)]
pub struct PartialFlag<T> {
    pub complex: FilteredCellComplex<T>,
    /// Directed flag complex of the loop-reduced quiver the cells come from.
    pub flag: DirectedFlag<T>,
    /// The quiver after collapsing identified multiple edges and dropping loops.
    pub reduced: FilteredQuiver<T>,
    pub triples: Vec<Vec<JoinTriple>>,
    /// Extra cells by cell dimension.
    pub extra: Vec<Vec<ExtraCell<T>>>,
    pub diagnostics: Vec<String>,
}

/// Collapses each multiple-edge family with a looped endpoint: its earliest
/// edge stays, every other member goes once a loop at an endpoint exists no
/// later than the member itself. Loops are then dropped.
fn collapse_looped_families<T: Filtration>(
    q: &FilteredQuiver<T>,
    loop_time: &BTreeMap<VertexId, T>,
) -> FilteredQuiver<T> {
    let mut families: BTreeMap<(VertexId, VertexId), Vec<Edge<T>>> = BTreeMap::new();
    for e in q.edges().iter().filter(|e| !e.is_loop()) {
        families.entry((e.source, e.target)).or_default().push(*e);
    }
    let mut edges = Vec::new();
    for ((s, t), mut family) in families {
        let ell = match (loop_time.get(&s), loop_time.get(&t)) {
            (Some(a), Some(b)) => Some(a.min_ext(*b)),
            (Some(a), None) | (None, Some(a)) => Some(*a),
            (None, None) => None,
        };
        let Some(ell) = ell else {
            edges.extend(family);
            continue;
        };
        family.sort_by(|a, b| a.filtration.total_cmp_ext(&b.filtration).then(a.id.cmp(&b.id)));
        edges.push(family[0]);
        edges.extend(family[1..].iter().filter(|e| e.filtration < ell));
    }
    FilteredQuiver::new(q.vertices().to_vec(), edges)
}

/// Spanning forest of the extra cells of one dimension, over the simplices
/// they glue.
struct Forest {
    adjacent: HashMap<usize, Vec<(usize, usize)>>,
}

impl Forest {
    fn new<T>(cells: &[ExtraCell<T>]) -> Self {
        let mut adjacent: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (c, cell) in cells.iter().enumerate() {
            let (a, b) = cell.glued;
            adjacent.entry(a).or_default().push((b, c));
            adjacent.entry(b).or_default().push((a, c));
        }
        Self { adjacent }
    }

    /// Extra cells along the tree path from `a` to `b`.
    fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if a == b {
            return Some(Vec::new());
        }
        let mut via: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &(y, c) in self.adjacent.get(&x).into_iter().flatten() {
                if y == a || via.contains_key(&y) {
                    continue;
                }
                via.insert(y, (x, c));
                if y == b {
                    let mut out = Vec::new();
                    let mut cur = b;
                    while cur != a {
                        let (prev, cell) = via[&cur];
                        out.push(cell);
                        cur = prev;
                    }
                    return Some(out);
                }
                queue.push_back(y);
            }
        }
        None
    }
}

/// Vertex set, looped vertices and nonloop sub-simplex of a triple.
type GroupKey = (Vec<VertexId>, Vec<VertexId>, Option<CellRef>);

/// Builds the partial flag complex as a filtered cell complex through
/// dimension `opts.max_dim + 1`.
pub fn partial_flag<T: Filtration>(q: &FilteredQuiver<T>, opts: BuildOptions) -> Result<PartialFlag<T>> {
    let violations = q.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidQuiver(violations));
    }
    let loop_time = q.loop_times();
    let reduced = collapse_looped_families(q, &loop_time);
    let flag = directed_flag(&reduced, opts)?;
    let ids: Vec<VertexId> = q.vertices().iter().map(|v| v.id).collect();
    let dense_loop: Vec<Option<T>> = ids.iter().map(|v| loop_time.get(v).copied()).collect();
    let cx = &flag.complex;
    let top = opts.top();

    let mut triples: Vec<Vec<JoinTriple>> = Vec::new();
    for n in 0..=top {
        let mut level = Vec::with_capacity(cx.cells(n).len());
        for (idx, shape) in flag.shapes.get(n).into_iter().flatten().enumerate() {
            let mut loops: Vec<VertexId> =
                shape.vertices.iter().filter(|&&v| dense_loop[v].is_some()).map(|&v| ids[v]).collect();
            loops.sort();
            let nonloop = if loops.is_empty() {
                Some(CellRef { dim: n, index: idx })
            } else if n == 0 {
                None
            } else {
                let p = shape.vertices.iter().rposition(|&v| dense_loop[v].is_some()).expect("looped vertex");
                triples[n - 1][cx.cells(n)[idx].faces[p]].nonloop
            };
            level.push(JoinTriple { simplex: CellRef { dim: n, index: idx }, nonloop, loops });
        }
        triples.push(level);
    }

    let mut extra: Vec<Vec<ExtraCell<T>>> = vec![Vec::new(); top + 1];
    let mut diagnostics = Vec::new();
    for n in 1..=opts.max_dim {
        let simplices = cx.cells(n);
        let shapes = &flag.shapes[n];
        let mut groups: BTreeMap<GroupKey, Vec<usize>> = BTreeMap::new();
        for (idx, t) in triples[n].iter().enumerate() {
            if t.loops.is_empty() {
                continue;
            }
            let mut set: Vec<VertexId> = shapes[idx].vertices.iter().map(|&v| ids[v]).collect();
            set.sort();
            groups.entry((set, t.loops.clone(), t.nonloop)).or_default().push(idx);
        }
        let below = Forest::new(&extra[n]);
        let lower_extra = &extra[n];
        let mut cells = Vec::new();
        for group in groups.into_values().filter(|g| g.len() > 1) {
            let outcome = mst_extra_cells(&group, |i, j| {
                let base = simplices[i].filtration.max_ext(simplices[j].filtration);
                if n == 1 {
                    let ell = shapes[i].vertices.iter().filter_map(|&v| dense_loop[v]).fold(T::infinity(), T::min_ext);
                    return Some((base.max_ext(ell), Vec::new()));
                }
                let mut union = Vec::new();
                for (pi, &v) in shapes[i].vertices.iter().enumerate() {
                    let pj = shapes[j].vertices.iter().position(|&x| x == v)?;
                    union.extend(below.path(simplices[i].faces[pi], simplices[j].faces[pj])?);
                }
                let w = union.iter().map(|&c| lower_extra[c].filtration).fold(base, T::max_ext);
                Some((w, z2_reduce(union)))
            });
            diagnostics.extend(outcome.diagnostics);
            cells.extend(outcome.cells);
        }
        extra[n + 1] = cells;
    }

    let mut complex = FilteredCellComplex::from_vertices(q.vertices().iter().map(|v| (v.id, v.filtration)));
    for (d, glue) in extra.iter().enumerate().skip(1) {
        let offset = cx.cells(d - 1).len();
        let mut cells = cx.cells(d).to_vec();
        cells.extend(glue.iter().map(|x| {
            let mut faces = vec![x.glued.0, x.glued.1];
            faces.extend(x.connecting.iter().map(|&c| offset + c));
            Cell { faces, filtration: x.filtration }
        }));
        complex.push_level(cells);
    }
    Ok(PartialFlag { complex: complex.finish(), flag, reduced, triples, extra, diagnostics })
}

/// The partial flag complex as a Δ-set relative to a loop-maximal order.
///
/// Each simplex lists its loop-free vertices in their directed order followed
/// by its looped vertices in `order`, together with the edges among the
/// loop-free vertices; `d_i` drops the `i`-th listed vertex. Filtrations are
/// the least over all directed-flag simplices with the same listing.
pub fn partial_delta_set<T: Filtration>(
    q: &FilteredQuiver<T>,
    order: &VertexOrder,
    opts: BuildOptions,
) -> Result<FilteredDeltaSet<T>> {
    if !order.is_loop_maximal(q) {
        return Err(Error::InvalidOrder);
    }
    let r = partially_reduced(q);
    let flag = directed_flag(&r, opts)?;
    let ranks = order.ranks(q).ok_or(Error::InvalidOrder)?;
    let looped_ids = q.looped_vertices();
    let looped: Vec<bool> = q.vertices().iter().map(|v| looped_ids.contains(&v.id)).collect();
    let rank: Vec<usize> = q.vertices().iter().map(|v| ranks[&v.id]).collect();
    let edge_ids: Vec<EdgeId> = r.edges().iter().map(|e| e.id).collect();

    type Key = (Vec<usize>, Vec<EdgeId>);
    let mut out = FilteredDeltaSet::from_vertices(q.vertices().iter().map(|v| (v.id, v.filtration)));
    let mut prev: HashMap<Key, usize> = (0..q.num_vertices()).map(|v| ((vec![v], Vec::new()), v)).collect();
    for n in 1..flag.complex.num_dims() {
        let mut keyed: BTreeMap<Key, T> = BTreeMap::new();
        for (shape, cell) in flag.shapes[n].iter().zip(flag.complex.cells(n)) {
            let free: Vec<usize> = (0..=n).filter(|&p| !looped[shape.vertices[p]]).collect();
            let mut with_loop: Vec<usize> = shape.vertices.iter().copied().filter(|&v| looped[v]).collect();
            with_loop.sort_by_key(|&v| rank[v]);
            let mut vertices: Vec<usize> = free.iter().map(|&p| shape.vertices[p]).collect();
            vertices.extend(with_loop);
            let mut edges = Vec::new();
            for bi in 0..free.len() {
                for ai in 0..bi {
                    edges.push(edge_ids[shape.edge(free[ai], free[bi])]);
                }
            }
            keyed.entry((vertices, edges)).and_modify(|f| *f = f.min_ext(cell.filtration)).or_insert(cell.filtration);
        }
        let mut cells = Vec::with_capacity(keyed.len());
        let mut index = HashMap::with_capacity(keyed.len());
        for ((vertices, edges), filtration) in keyed {
            let free = vertices.iter().take_while(|&&v| !looped[v]).count();
            let faces = (0..=n)
                .map(|k| {
                    let mut fv = vertices.clone();
                    fv.remove(k);
                    let kept: Vec<usize> = (0..free).filter(|&p| p != k).collect();
                    let mut fe = Vec::new();
                    for bi in 0..kept.len() {
                        for ai in 0..bi {
                            let (a, b) = (kept[ai], kept[bi]);
                            fe.push(edges[b * (b - 1) / 2 + a]);
                        }
                    }
                    prev.get(&(fv, fe))
                        .copied()
                        .ok_or_else(|| Error::Internal("missing face in partial flag complex".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            index.insert((vertices, edges), cells.len());
            cells.push(Cell { faces, filtration });
        }
        out.push_level(cells);
        prev = index;
    }
    Ok(out.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{betti, validate_faces};
    use crate::quiver::{double_cone, loop_maximal_order};

    type Q = FilteredQuiver<f64>;

    fn cone_with_loop() -> Q {
        let g: Q = double_cone();
        let mut edges = g.edges().to_vec();
        edges.push(Edge { id: EdgeId(6), source: VertexId(0), target: VertexId(0), filtration: f64::NEG_INFINITY });
        FilteredQuiver::new(g.vertices().to_vec(), edges)
    }

    #[test]
    fn mst_small_groups() {
        let none: MstOutcome<f64> = mst_extra_cells(&[4], |_, _| unreachable!());
        assert!(none.cells.is_empty());
        let one = mst_extra_cells(&[2, 5], |_, _| Some((1.5, vec![])));
        assert_eq!(one.cells.len(), 1);
        assert_eq!(one.cells[0].filtration, 1.5);
        let w = |a: usize, b: usize| match (a, b) {
            (0, 1) => 1.0,
            (0, 2) => 2.0,
            _ => 3.0,
        };
        let three = mst_extra_cells(&[0, 1, 2], |a, b| Some((w(a, b), vec![])));
        let glued: Vec<_> = three.cells.iter().map(|c| (c.glued, c.filtration)).collect();
        assert_eq!(glued, vec![((0, 1), 1.0), ((0, 2), 2.0)]);
        assert!(three.diagnostics.is_empty());
    }

    #[test]
    fn mst_reports_disconnected_pairs() {
        let out: MstOutcome<f64> = mst_extra_cells(&[0, 1], |_, _| None);
        assert_eq!(out.cells.len(), 1);
        assert_eq!(out.diagnostics.len(), 1);
    }

    #[test]
    fn cone_with_loop_is_acyclic() {
        let p = partial_flag(&cone_with_loop(), BuildOptions::new(2)).unwrap();
        assert!(validate_faces(&p.complex).is_empty());
        assert_eq!(betti(&p.complex, 2), vec![1, 0, 0]);
        assert_eq!(p.extra[2].len(), 1);
        assert_eq!(p.extra[3].len(), 2);
        assert!(p.diagnostics.is_empty());
        let order = loop_maximal_order(&cone_with_loop());
        let d = partial_delta_set(&cone_with_loop(), &order, BuildOptions::new(2)).unwrap();
        assert!(validate_faces(&d).is_empty());
        assert_eq!(betti(&d, 2), vec![1, 0, 0]);
    }

    #[test]
    fn loop_free_input_matches_directed_flag() {
        let g: Q = double_cone();
        let p = partial_flag(&g, BuildOptions::new(2)).unwrap();
        let f = directed_flag(&g, BuildOptions::new(2)).unwrap();
        assert_eq!(p.complex, FilteredCellComplex::from(f.complex));
        assert!(p.extra.iter().all(Vec::is_empty));
    }

    #[test]
    fn looped_multiple_edge_collapses() {
        let q = Q::unfiltered(2, &[(0, 1), (0, 1), (0, 0)]);
        let p = partial_flag(&q, BuildOptions::new(1)).unwrap();
        assert_eq!(p.complex.counts(), vec![2, 1]);
        assert_eq!(betti(&p.complex, 1), vec![1, 0]);
    }

    #[test]
    fn filtered_multiple_edge_glued_at_loop_time() {
        let q = Q::from_parts(&[0.0, 0.0], &[(0, 1, 0.0), (0, 1, 1.0), (0, 0, 2.0)]);
        let p = partial_flag(&q, BuildOptions::new(1)).unwrap();
        assert_eq!(p.complex.counts(), vec![2, 2, 1]);
        assert_eq!(p.complex.cells(2)[0].filtration, 2.0);
        let q = Q::from_parts(&[0.0, 0.0], &[(0, 1, 0.0), (0, 1, 3.0), (0, 0, 2.0)]);
        let p = partial_flag(&q, BuildOptions::new(1)).unwrap();
        assert_eq!(p.complex.counts(), vec![2, 1]);
    }

    #[test]
    fn triples_record_loop_free_faces() {
        let p = partial_flag(&cone_with_loop(), BuildOptions::new(2)).unwrap();
        for t in p.triples.iter().flatten() {
            match t.nonloop {
                Some(nl) => assert_eq!(nl.dim + t.loops.len(), t.simplex.dim),
                None => assert_eq!(t.loops.len(), t.simplex.dim + 1),
            }
        }
    }

    #[test]
    fn rejects_non_loop_maximal_order() {
        let q = Q::unfiltered(2, &[(0, 0), (0, 1)]);
        let bad = VertexOrder(vec![VertexId(0), VertexId(1)]);
        assert!(matches!(partial_delta_set(&q, &bad, BuildOptions::new(1)), Err(Error::InvalidOrder)));
    }
}
