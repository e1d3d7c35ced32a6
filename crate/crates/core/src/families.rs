//! Standard graph families used by the encoders, benchmarks and tests.
//!
//! All constructors label their vertices so that the identity ordering is a
//! perfect elimination ordering (random trees excepted, which are labeled
//! uniformly and must be relabeled before generation).

use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Complete graph on `1..=n`.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Path `1 - 2 - ... - n`.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v, v + 1))).unwrap()
}

/// Star with center 1 and leaves `2..=n`.
pub fn star(n: usize) -> Graph {
    Graph::new(n, (2..=n).map(|v| (1, v))).unwrap()
}

/// Cycle `1 - 2 - ... - n - 1`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges = (1..n).map(|v| (v, v + 1)).chain([(1, n)]);
    Graph::new(n, edges).unwrap()
}

/// Disjoint union of `k` edges `{i, k+i}` on `2k` vertices.
pub fn matching(k: usize) -> Graph {
    Graph::new(2 * k, (1..=k).map(|i| (i, k + i))).unwrap()
}

/// Disjoint union of `k` edges `{i, k+i}` and a complete graph on
/// `{2k+1, ..., 3k}`.
pub fn matching_plus_clique(k: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..=k).map(|i| (i, k + i)).collect();
    for u in 2 * k + 1..=3 * k {
        for v in u + 1..=3 * k {
            edges.push((u, v));
        }
    }
    Graph::new(3 * k, edges).unwrap()
}

/// Uniformly random labeled tree on `n` vertices (random Pruefer sequence).
/// The labeling is generally not a perfect elimination ordering.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return Graph::new(1, []).unwrap();
    }
    if n == 2 {
        return Graph::new(2, [(1, 2)]).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    let mut degree = vec![1usize; n + 1];
    for &v in &prufer {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaf_heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (1..=n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &v in &prufer {
        let std::cmp::Reverse(leaf) = leaf_heap.pop().unwrap();
        edges.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaf_heap.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(a) = leaf_heap.pop().unwrap();
    let std::cmp::Reverse(b) = leaf_heap.pop().unwrap();
    edges.push((a.min(b), a.max(b)));
    Graph::new(n, edges).unwrap()
}

/// Random k-tree on `n` vertices: start from a clique on `1..=k+1`, then
/// attach each further vertex to a uniformly random k-clique of the graph
/// built so far. Chordal by construction, and the identity labeling is a
/// perfect elimination ordering.
pub fn random_ktree(n: usize, k: usize, seed: u64) -> Graph {
    assert!(k >= 1 && n >= k + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let base: Vec<usize> = (1..=k + 1).collect();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            edges.push((base[i], base[j]));
        }
    }
    let mut cliques: Vec<Vec<usize>> = (0..=k)
        .map(|skip| {
            base.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    for v in k + 2..=n {
        let c = cliques.choose(&mut rng).unwrap().clone();
        for &u in &c {
            edges.push((u, v));
        }
        for skip in 0..c.len() {
            let mut next: Vec<usize> = c
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &u)| u)
                .collect();
            next.push(v);
            cliques.push(next);
        }
    }
    Graph::new(n, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        assert_eq!(complete(4).m(), 6);
        assert_eq!(path(5).m(), 4);
        assert_eq!(star(6).m(), 5);
        assert_eq!(matching(3).connected_components().len(), 3);
        assert_eq!(matching_plus_clique(2).n(), 6);
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..5 {
            for n in [1, 2, 3, 10, 40] {
                let g = random_tree(n, seed);
                assert!(g.is_tree(), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn random_ktrees_are_peo_labeled() {
        for seed in 0..5 {
            let g = random_ktree(12, 3, seed);
            assert!(g.identity_is_peo());
            assert!(g.is_chordal());
        }
    }

    #[test]
    fn seeded_families_are_deterministic() {
        assert_eq!(random_tree(20, 7).edges(), random_tree(20, 7).edges());
        assert_eq!(
            random_ktree(15, 2, 9).edges(),
            random_ktree(15, 2, 9).edges()
        );
    }
}
