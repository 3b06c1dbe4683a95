//! Counts of singular map generators per maximal vertex.

use super::VertexPartitionedSimplices;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Evaluates `1 + Σ_{i=1..n} C(n-1, n-i) |F_i^v|` for every vertex `v`.
/// `partition[i]` must be present for `i ≤ n`.
pub fn count_generators_m(partition: &[VertexPartitionedSimplices], n: usize) -> Vec<u128> {
    let nv = partition[0].by_vertex.len();
    (0..nv)
        .map(|v| {
            let tail: u128 = (1..=n).map(|i| binomial(n - 1, n - i) * partition[i].count(v) as u128).sum();
            1 + tail
        })
        .collect()
}

/// Number of quiver maps `Δⁿ → G` ending at each vertex, for digraphs
/// without double edges: a map is a monotone surjection onto an inclusion,
/// so the count is `Σ_{i=0..n} C(n, i) |F_i^v|`.
pub fn count_map_generators(partition: &[VertexPartitionedSimplices], n: usize) -> Vec<u128> {
    let nv = partition[0].by_vertex.len();
    (0..nv).map(|v| (0..=n).map(|i| binomial(n, i) * partition[i].count(v) as u128).sum()).collect()
}
