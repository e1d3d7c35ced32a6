//! Exhaustive small-instance suites for the structural facts that underpin
//! the cyclicity analysis and the jump/rotation correspondence.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use elimtrees::forest::ElimForest;
use elimtrees::insertion::sigma_encode;
use elimtrees::peo::PeoGraph;
use elimtrees::verification::{
    build_flip_graph, enumerate_all, is_clean_jump, is_clean_rotation, minimal_jump, JumpDir,
};
use elimtrees::Graph;

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            pairs.push((u, v));
        }
    }
    pairs
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e);
    Graph::new(n, edges).unwrap()
}

/// Parity of the forest count over GF(2), memoized per induced subgraph.
struct ParityCounter {
    adj: Vec<u64>,
    memo: HashMap<u64, bool>,
}

impl ParityCounter {
    fn new(n: usize, pairs: &[(usize, usize)], mask: u64) -> ParityCounter {
        let mut adj = vec![0u64; n + 1];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u] |= 1 << (v - 1);
                adj[v] |= 1 << (u - 1);
            }
        }
        ParityCounter {
            adj,
            memo: HashMap::new(),
        }
    }

    fn even(&mut self, mask: u64) -> bool {
        !self.odd(mask)
    }

    fn odd(&mut self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        if let Some(&v) = self.memo.get(&mask) {
            return v;
        }
        let comp = {
            let start = mask & mask.wrapping_neg();
            let mut comp = start;
            loop {
                let mut grown = comp;
                let mut scan = comp;
                while scan != 0 {
                    let bit = scan & scan.wrapping_neg();
                    scan ^= bit;
                    grown |= self.adj[bit.trailing_zeros() as usize + 1] & mask;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            comp
        };
        let result = if comp != mask {
            self.odd(comp) && self.odd(mask & !comp)
        } else if mask.count_ones() == 1 {
            true
        } else {
            let mut parity = false;
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                parity ^= self.odd(mask ^ bit);
            }
            parity
        };
        self.memo.insert(mask, result);
        result
    }
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut adj = vec![0u64; n + 1];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[u] |= 1 << (v - 1);
            adj[v] |= 1 << (u - 1);
        }
    }
    let full = (1u64 << n) - 1;
    let mut comp = 1u64;
    loop {
        let mut grown = comp;
        let mut scan = comp;
        while scan != 0 {
            let bit = scan & scan.wrapping_neg();
            scan ^= bit;
            grown |= adj[bit.trailing_zeros() as usize + 1] & full;
        }
        if grown == comp {
            break;
        }
        comp = grown;
    }
    comp == full
}

#[test]
fn forest_count_parity_facts() {
    // Connected graphs with an even vertex count, and 2-connected graphs of
    // any size, have an even number of elimination forests (up to 7
    // vertices).
    for n in 2..=7usize {
        let pairs = vertex_pairs(n);
        let all: Vec<u64> = (0..1u64 << pairs.len()).collect();
        all.par_chunks(1 << 12).for_each(|chunk| {
            for &mask in chunk {
                let connected = mask_connected(n, &pairs, mask);
                let mut parity = ParityCounter::new(n, &pairs, mask);
                let full = (1u64 << n) - 1;
                if connected && n % 2 == 0 {
                    assert!(parity.even(full), "even-order connected n={n} mask={mask}");
                } else if connected {
                    let two_connected = n >= 3
                        && (0..n).all(|skip| {
                            let rest = full & !(1 << skip);
                            // Connectivity of the graph minus one vertex.
                            let mut comp = rest & rest.wrapping_neg();
                            let mut adj = vec![0u64; n + 1];
                            for (i, &(u, v)) in pairs.iter().enumerate() {
                                if mask >> i & 1 == 1 {
                                    adj[u] |= 1 << (v - 1);
                                    adj[v] |= 1 << (u - 1);
                                }
                            }
                            loop {
                                let mut grown = comp;
                                let mut scan = comp;
                                while scan != 0 {
                                    let bit = scan & scan.wrapping_neg();
                                    scan ^= bit;
                                    grown |= adj[bit.trailing_zeros() as usize + 1] & rest;
                                }
                                if grown == comp {
                                    break;
                                }
                                comp = grown;
                            }
                            comp == rest
                        });
                    if two_connected {
                        assert!(parity.even(full), "2-connected n={n} mask={mask}");
                    }
                }
            }
        });
    }
}

#[test]
fn chordal_graphs_have_two_simplicial_vertices() {
    for n in 2..=7usize {
        let pairs = vertex_pairs(n);
        let all: Vec<u64> = (0..1u64 << pairs.len()).collect();
        all.par_chunks(1 << 12).for_each(|chunk| {
            for &mask in chunk {
                let g = graph_from_mask(n, &pairs, mask);
                if !g.is_chordal() {
                    continue;
                }
                let simplicial = (1..=n)
                    .filter(|&v| {
                        let nb = g.neighbors(v);
                        nb.iter()
                            .enumerate()
                            .all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.adjacent(a, b)))
                    })
                    .count();
                assert!(simplicial >= 2, "n={n} mask={mask}");
            }
        });
    }
}

#[test]
fn peo_prefixes_inherit_connectivity() {
    // For 1- and 2-connected graphs in perfect elimination order, the prefix
    // on 1..=nu is min(nu-1, k)-connected.
    for n in 2..=7usize {
        let pairs = vertex_pairs(n);
        let all: Vec<u64> = (0..1u64 << pairs.len()).collect();
        all.par_chunks(1 << 12).for_each(|chunk| {
            for &mask in chunk {
                let g = graph_from_mask(n, &pairs, mask);
                if !g.identity_is_peo() {
                    continue;
                }
                for k in 1..=2usize {
                    let k_connected = match k {
                        1 => g.is_connected() && n >= 2,
                        _ => g.is_2_connected(),
                    };
                    if !k_connected {
                        continue;
                    }
                    for nu in 2..=n {
                        let prefix: Vec<usize> = (1..=nu).collect();
                        let h = g.induced(&prefix);
                        let want = k.min(nu - 1);
                        let holds = match want {
                            1 => h.is_connected(),
                            _ => h.is_2_connected(),
                        };
                        assert!(holds, "n={n} mask={mask} k={k} nu={nu}");
                    }
                }
            }
        });
    }
}

#[test]
fn clean_jumps_match_clean_rotations() {
    // Under the representative-permutation bijection, clean minimal jumps
    // correspond exactly to clean rotations, and every minimal jump lands on
    // some rotation edge of the flip graph (on every perfect elimination
    // labeling with up to 5 vertices).
    for n in 1..=5usize {
        let pairs = vertex_pairs(n);
        for mask in 0..1u64 << pairs.len() {
            let g = graph_from_mask(n, &pairs, mask);
            if !g.identity_is_peo() {
                continue;
            }
            let pg = PeoGraph::new(g).unwrap();
            let forests = enumerate_all(pg.graph()).unwrap();
            let fg = build_flip_graph(pg.graph()).unwrap();
            let lang: HashSet<Vec<usize>> = forests
                .iter()
                .map(|f| sigma_encode(f).unwrap())
                .collect();
            let sigma_of: HashMap<Vec<usize>, Vec<usize>> = forests
                .iter()
                .map(|f| (f.key(), sigma_encode(f).unwrap()))
                .collect();

            // Clean rotation edges, as unordered sigma pairs; cleanness is
            // judged at the larger endpoint of the rotated edge.
            let mut clean_rotation_pairs: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
            for f in &forests {
                for child in 1..=n {
                    let p = f.parent(child);
                    if p == 0 {
                        continue;
                    }
                    let top = child.max(p);
                    if !is_clean_rotation(f, top) {
                        continue;
                    }
                    let r = elimtrees::rotation::rotate_edge_generic(pg.graph(), f, p, child)
                        .unwrap();
                    if is_clean_rotation(&r, top) {
                        let a = sigma_of[&f.key()].clone();
                        let b = sigma_of[&r.key()].clone();
                        clean_rotation_pairs.insert((a.clone().min(b.clone()), a.max(b)));
                    }
                }
            }

            // Minimal jumps; the clean ones collected as unordered pairs.
            let mut clean_jump_pairs: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
            for perm in &lang {
                for value in 2..=n {
                    for dir in [JumpDir::Left, JumpDir::Right] {
                        let Some(next) = minimal_jump(perm, value, dir, &lang) else {
                            continue;
                        };
                        // Every minimal jump is a rotation edge.
                        let fa = ElimForest::from_ordering(pg.graph(), perm).unwrap();
                        let fb = ElimForest::from_ordering(pg.graph(), &next).unwrap();
                        assert!(
                            fg.are_adjacent(&fa.key(), &fb.key()),
                            "jump off the flip graph: n={n} mask={mask}"
                        );
                        if is_clean_jump(perm, value) && is_clean_jump(&next, value) {
                            clean_jump_pairs.insert((
                                perm.clone().min(next.clone()),
                                perm.clone().max(next),
                            ));
                        }
                    }
                }
            }
            assert_eq!(
                clean_rotation_pairs, clean_jump_pairs,
                "clean correspondence: n={n} mask={mask}"
            );
        }
    }
}
