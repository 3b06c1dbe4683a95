use std::collections::BTreeSet;

use proptest::prelude::*;

use qvh_core::complex::{betti, euler_characteristic, from_simplicial, FilteredComplex};
use qvh_core::flag::{directed_flag, partial_flag, reduced_flag, reduced_flag_delta, BuildOptions};
use qvh_core::oracle::{degenerate_betti, enumerate_singular, is_degenerate, MorphismKind, OracleOptions};
use qvh_core::persistence::{betti_at, persistence, ReduceOptions};
use qvh_core::pipeline::{build_complex, ComplexKind};
use qvh_core::quiver::{
    filtered_loop_maximal_order, loop_maximal_order, partially_reduced, reduced_digraph, simplex_face, VertexOrder,
};
use qvh_core::{FilteredQuiver, VertexId};

type Q = FilteredQuiver;

/// Up to 5 vertices and 8 edges; loops, multiple and double edges allowed.
/// Filtered instances use integer levels with edges at or above their
/// endpoints.
fn quiver(filtered: bool) -> impl Strategy<Value = Q> {
    (1usize..=5).prop_flat_map(move |n| {
        let levels = prop::collection::vec(0u8..=3, n);
        let edges = prop::collection::vec((0..n as u64, 0..n as u64, 0u8..=2), 0..=8);
        (levels, edges).prop_map(move |(levels, edges)| {
            let vfilt: Vec<f64> =
                levels.iter().map(|&l| if filtered { f64::from(l) } else { f64::NEG_INFINITY }).collect();
            let edges: Vec<(u64, u64, f64)> = edges
                .into_iter()
                .map(|(s, t, extra)| {
                    let base = vfilt[s as usize].max(vfilt[t as usize]);
                    (s, t, if filtered { base + f64::from(extra) } else { base })
                })
                .collect();
            Q::from_parts(&vfilt, &edges)
        })
    })
}

/// Loop-free quivers without multiple edges; double edges only if asked for.
fn digraph(allow_double: bool) -> impl Strategy<Value = Q> {
    quiver(false).prop_map(move |q| {
        let mut seen = BTreeSet::new();
        let edges: Vec<(u64, u64, f64)> = q
            .edges()
            .iter()
            .filter(|e| e.source != e.target)
            .filter(|e| {
                let key =
                    if allow_double { (e.source, e.target) } else { (e.source.min(e.target), e.source.max(e.target)) };
                seen.insert(key)
            })
            .map(|e| (e.source.0, e.target.0, f64::NEG_INFINITY))
            .collect();
        let vfilt = vec![f64::NEG_INFINITY; q.num_vertices()];
        Q::from_parts(&vfilt, &edges)
    })
}

fn final_betti(q: &Q, kind: ComplexKind, max_dim: usize) -> Vec<usize> {
    let x = build_complex(q, kind, BuildOptions::new(max_dim)).unwrap().complex;
    betti_at(&persistence(&x, max_dim, ReduceOptions::default(), false).unwrap(), f64::INFINITY, max_dim)
}

/// Edges as a multiset of `(source, target, filtration)`, ignoring ids.
fn shape(q: &Q) -> Vec<(u64, u64, u64)> {
    let mut out: Vec<_> = q.edges().iter().map(|e| (e.source.0, e.target.0, e.filtration.to_bits())).collect();
    out.sort();
    out
}

fn shuffled(ids: &[VertexId], seed: u64) -> Vec<VertexId> {
    let mut out = ids.to_vec();
    let mut state = seed | 1;
    for i in (1..out.len()).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        out.swap(i, (state % (i as u64 + 1)) as usize);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn reductions_are_idempotent(q in quiver(true)) {
        let r = reduced_digraph(&q);
        prop_assert_eq!(reduced_digraph(&r), r);
        let p = partially_reduced(&q);
        prop_assert_eq!(partially_reduced(&p), p);
    }

    #[test]
    fn sublevels_commute_with_reduction(q in quiver(true)) {
        let r = reduced_digraph(&q);
        for t in q.critical_values() {
            let a = r.sublevel(t).map(|s| shape(&s));
            let b = q.sublevel(t).map(|s| shape(&reduced_digraph(&s)));
            prop_assert_eq!(a, b, "t = {}", t);
        }
    }

    #[test]
    fn loop_maximal_orders_are_loop_maximal(q in quiver(true)) {
        prop_assert!(loop_maximal_order(&q).is_loop_maximal(&q));
        let order = filtered_loop_maximal_order(&q);
        prop_assert!(order.is_loop_maximal(&q));
        for t in q.critical_values() {
            if let Some(sub) = q.sublevel(t) {
                let restricted: Vec<VertexId> =
                    order.as_slice().iter().copied().filter(|v| sub.index_of(*v).is_some()).collect();
                prop_assert!(VertexOrder(restricted).is_loop_maximal(&sub));
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_betti(q in quiver(false), kind in prop::sample::select(ComplexKind::ALL.to_vec())) {
        let x = build_complex(&q, kind, BuildOptions::new(5)).unwrap().complex;
        prop_assert_eq!(x.cells(x.num_dims()).len(), 0);
        let b = betti(&x, x.num_dims());
        let alternating: i64 = b.iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        prop_assert_eq!(euler_characteristic(&x), alternating);
    }

    #[test]
    fn simplicial_betti_ignores_vertex_order(q in quiver(false), seed in any::<u64>()) {
        let opts = BuildOptions::new(2);
        let k = reduced_flag(&q, opts).unwrap();
        let ids: Vec<VertexId> = q.vertices().iter().map(|v| v.id).collect();
        let a = from_simplicial(&k, &VertexOrder(ids.clone())).unwrap();
        let b = from_simplicial(&k, &VertexOrder(shuffled(&ids, seed))).unwrap();
        prop_assert_eq!(betti(&a, 2), betti(&b, 2));
        prop_assert_eq!(betti(&a, 2), betti(&reduced_flag_delta(&q, opts).unwrap(), 2));
    }

    #[test]
    fn flag_simplices_biject_with_inclusions(q in quiver(false)) {
        let f = directed_flag(&q, BuildOptions::new(2)).unwrap();
        for n in 0..=3 {
            let inclusions = enumerate_singular(&q, n, MorphismKind::Inclusion, OracleOptions::default()).unwrap();
            prop_assert_eq!(f.complex.cells(n).len(), inclusions.len(), "n = {}", n);
        }
    }

    #[test]
    fn kinds_are_nested(q in quiver(false)) {
        let opts = OracleOptions::default();
        for n in 0..=2 {
            let inclusions = enumerate_singular(&q, n, MorphismKind::Inclusion, opts).unwrap();
            let homs = enumerate_singular(&q, n, MorphismKind::Homomorphism, opts).unwrap();
            let maps = enumerate_singular(&q, n, MorphismKind::Map, opts).unwrap();
            prop_assert!(inclusions.iter().all(|f| homs.binary_search(f).is_ok()));
            prop_assert!(homs.iter().all(|f| maps.binary_search(f).is_ok()));
        }
    }

    #[test]
    fn loop_free_homomorphisms_are_inclusions(q in quiver(false)) {
        let loops: BTreeSet<_> = q.edges().iter().filter(|e| e.is_loop()).map(|e| e.id).collect();
        let q = q.without_edges(&loops);
        let opts = OracleOptions::default();
        for n in 0..=2 {
            prop_assert_eq!(
                enumerate_singular(&q, n, MorphismKind::Homomorphism, opts).unwrap(),
                enumerate_singular(&q, n, MorphismKind::Inclusion, opts).unwrap()
            );
        }
        prop_assert_eq!(final_betti(&q, ComplexKind::Flag, 2), final_betti(&q, ComplexKind::Partial, 2));
    }

    #[test]
    fn nondegenerate_maps_are_inclusions(q in digraph(false)) {
        let opts = OracleOptions::default();
        for n in 0..=2 {
            let mut nondegenerate = Vec::new();
            for f in enumerate_singular(&q, n, MorphismKind::Map, opts).unwrap() {
                if !is_degenerate(&f, MorphismKind::Map).unwrap() {
                    nondegenerate.push(f);
                }
            }
            prop_assert_eq!(nondegenerate, enumerate_singular(&q, n, MorphismKind::Inclusion, opts).unwrap());
        }
        let flag = final_betti(&q, ComplexKind::Flag, 2);
        prop_assert_eq!(&flag, &final_betti(&q, ComplexKind::Reduced, 2));
        prop_assert_eq!(&flag, &final_betti(&q, ComplexKind::Partial, 2));
    }

    #[test]
    fn degenerate_maps_are_acyclic(q in digraph(true)) {
        prop_assert_eq!(degenerate_betti(&q, 2, OracleOptions::default()).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn partial_complex_passes_validation(q in quiver(true)) {
        let p = partial_flag(&q, BuildOptions::new(2)).unwrap();
        prop_assert!(p.complex.validate().is_empty());
    }
}

/// Compositions of face maps `Δᵏ → Δⁿ⁺¹` starting from `simplex_face(k, ·)`.
fn face_images(k: usize, n: usize) -> BTreeSet<Vec<usize>> {
    let mut images: BTreeSet<Vec<usize>> = (0..=k + 1).map(|i| simplex_face(k, i)).collect();
    for m in k + 1..=n {
        images = images
            .iter()
            .flat_map(|img| (0..=m + 1).map(move |i| img.iter().map(|&j| simplex_face(m, i)[j]).collect()))
            .collect();
    }
    images
}

#[test]
fn face_compositions_count_sub_simplices() {
    let binomial = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    for n in 0..5 {
        for k in 0..=n {
            assert_eq!(face_images(k, n).len(), binomial(n + 2, k + 1), "k = {k}, n = {n}");
        }
    }
}
