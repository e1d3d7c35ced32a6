//! Tree rotations on elimination forests.
//!
//! `rotate_edge_generic` implements the definition directly (explicit
//! component computation) and works on any graph; it is the oracle the fast
//! paths are checked against. `rotate_up`/`rotate_down` are the chordal fast
//! paths that touch only the children of the lower endpoint, using adjacency
//! tests and the insertion path instead of connectivity searches.

use crate::error::{Error, Result};
use crate::forest::ElimForest;
use crate::graph::Graph;
use crate::peo::PeoGraph;

/// Rotation direction, named after the way the rotated vertex moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Up => write!(f, "\u{2191}"),
            Direction::Down => write!(f, "\u{2193}"),
        }
    }
}

/// Rotation of the tree edge `{i, j}` where `i` is the parent of `j`:
/// `j` takes the place of `i`, the subtrees of `i` stay with `i`, and each
/// subtree of `j` moves to `i` exactly if it lies in the same connected
/// component as `i` of the graph induced by the subtree of `i` minus `j`.
///
/// Component test done explicitly by breadth-first search; intended for
/// oracle-side use.
pub fn rotate_edge_generic(g: &Graph, f: &ElimForest, i: usize, j: usize) -> Result<ElimForest> {
    if f.parent(j) != i || i == 0 {
        return Err(Error::RotationUndefined(format!(
            "{i} is not the parent of {j}"
        )));
    }
    let mut out = f.clone();
    let sub = f.subtree(i);
    let mut in_h = vec![false; f.n() + 1];
    for &v in &sub {
        in_h[v] = true;
    }
    in_h[j] = false;
    // Component of i in the induced subgraph minus j.
    let mut marked = vec![false; f.n() + 1];
    marked[i] = true;
    let mut stack = vec![i];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if in_h[u] && !marked[u] {
                marked[u] = true;
                stack.push(u);
            }
        }
    }
    let movers: Vec<usize> = f.children(j).iter().copied().filter(|&k| marked[k]).collect();
    for k in movers {
        out.detach(k);
        out.attach(k, i);
    }
    let gp = f.parent(i);
    out.detach(j);
    out.detach(i);
    out.attach(j, gp);
    out.attach(i, j);
    Ok(out)
}

/// Up-rotation of `j` in place: `j` swaps with its parent `i < j`; a subtree
/// of `j` rooted at `k` moves to `i` iff `k < j`, or `k > j` and `{k, i}` is
/// an edge. Touches only the children of `j`.
pub fn rotate_up(pg: &PeoGraph, f: &mut ElimForest, j: usize) -> Result<()> {
    let mut ops = 0u64;
    rotate_up_counting(pg, f, j, &mut ops)
}

pub(crate) fn rotate_up_counting(
    pg: &PeoGraph,
    f: &mut ElimForest,
    j: usize,
    ops: &mut u64,
) -> Result<()> {
    let i = f.parent(j);
    if i == 0 || i >= j {
        return Err(Error::RotationUndefined(format!(
            "vertex {j} has no smaller parent"
        )));
    }
    let movers: Vec<usize> = f
        .children(j)
        .iter()
        .copied()
        .filter(|&k| k < j || pg.adjacent(k, i))
        .collect();
    *ops += f.children(j).len() as u64 + 1;
    for k in movers {
        f.detach(k);
        f.attach(k, i);
        *ops += 1;
    }
    let gp = f.parent(i);
    f.detach(j);
    f.detach(i);
    f.attach(j, gp);
    f.attach(i, j);
    Ok(())
}

/// Down-rotation of `j` in place, given its unique smaller child `c` and the
/// next vertex of the insertion path (`0` if none): a subtree of `c` rooted
/// at `k` moves to `j` iff `k` is that path vertex, or `k > j` and `{k, j}`
/// is an edge. Touches only the children of `c`.
pub(crate) fn rotate_down_on_path(
    pg: &PeoGraph,
    f: &mut ElimForest,
    j: usize,
    c: usize,
    next_on_path: usize,
    ops: &mut u64,
) -> Result<()> {
    debug_assert_eq!(f.unique_smaller_child(j)?, Some(c));
    let movers: Vec<usize> = f
        .children(c)
        .iter()
        .copied()
        .filter(|&k| k == next_on_path || (k > j && pg.adjacent(k, j)))
        .collect();
    *ops += f.children(c).len() as u64 + 1;
    for k in movers {
        f.detach(k);
        f.attach(k, j);
        *ops += 1;
    }
    let gp = f.parent(j);
    f.detach(c);
    f.detach(j);
    f.attach(c, gp);
    f.attach(j, c);
    Ok(())
}

/// Down-rotation of `j` in place: `j` swaps with its unique smaller child.
/// The insertion path of `j` is computed on demand (cost proportional to its
/// length) to locate the subtree that moves up under `j`.
pub fn rotate_down(pg: &PeoGraph, f: &mut ElimForest, j: usize) -> Result<()> {
    let c = f
        .unique_smaller_child(j)?
        .ok_or_else(|| Error::RotationUndefined(format!("vertex {j} has no smaller child")))?;
    let mut scratch = WalkScratch::new(f.n());
    let mut ops = 0u64;
    let q = insertion_path_walk(pg, f, j, false, &mut scratch, &mut ops);
    let t = q
        .iter()
        .position(|&x| x == c)
        .ok_or_else(|| Error::InvalidForest(format!("smaller child {c} not on insertion path")))?;
    let next = q.get(t + 1).copied().unwrap_or(0);
    rotate_down_on_path(pg, f, j, c, next, &mut ops)
}

/// Dispatch by direction; the entry point mirroring the two fast paths.
pub fn rotate_fast(pg: &PeoGraph, f: &mut ElimForest, j: usize, dir: Direction) -> Result<()> {
    match dir {
        Direction::Up => rotate_up(pg, f, j),
        Direction::Down => rotate_down(pg, f, j),
    }
}

/// Reusable visit marks for the insertion-path walks, cleared by epoch
/// bumping so that a walk costs O(path length) and not O(n).
pub(crate) struct WalkScratch {
    stamp: Vec<u32>,
    seg_idx: Vec<u32>,
    epoch: u32,
}

impl WalkScratch {
    pub(crate) fn new(n: usize) -> WalkScratch {
        WalkScratch {
            stamp: vec![0; n + 1],
            seg_idx: vec![0; n + 1],
            epoch: 0,
        }
    }
}

/// Computes the insertion path of `j`: the path, in the forest restricted to
/// vertices smaller than `j`, from the root of the tree containing the
/// smaller neighbors of `j` down to the deepest such neighbor.
///
/// Walks upward from each smaller neighbor, stopping at `j` (when
/// `stop_at_j`), at a root, or at a previously visited vertex; vertices
/// `>= j` encountered on the way are skipped as if spliced out. The segments
/// are then stitched together from the top. Returns the empty path when `j`
/// has no smaller neighbors.
pub(crate) fn insertion_path_walk(
    pg: &PeoGraph,
    f: &ElimForest,
    j: usize,
    stop_at_j: bool,
    scratch: &mut WalkScratch,
    ops: &mut u64,
) -> Vec<usize> {
    let neighbors = pg.smaller_neighbors(j);
    if neighbors.is_empty() {
        return Vec::new();
    }
    scratch.epoch += 1;
    let epoch = scratch.epoch;
    // One segment per walk, vertices bottom-to-top. A walk stops at the top
    // (root, or j), or at an already visited vertex, which is always the
    // bottom vertex of an earlier segment: `below[s]` is the segment
    // attaching directly below segment s.
    let mut segments: Vec<Vec<usize>> = Vec::with_capacity(neighbors.len());
    let mut below: Vec<Option<usize>> = Vec::with_capacity(neighbors.len());
    let mut top_seg = None;
    for &start in neighbors {
        if scratch.stamp[start] == epoch {
            continue;
        }
        let mut seg = vec![start];
        scratch.stamp[start] = epoch;
        let mut cur = start;
        let mut stopped_at = 0usize;
        loop {
            let p = f.parent(cur);
            *ops += 1;
            if p == 0 || (stop_at_j && p == j) {
                break;
            }
            if p >= j {
                debug_assert!(!stop_at_j, "clean-state walks never cross larger vertices");
                cur = p;
                continue;
            }
            if scratch.stamp[p] == epoch {
                stopped_at = p;
                break;
            }
            scratch.stamp[p] = epoch;
            seg.push(p);
            cur = p;
        }
        let idx = segments.len();
        for &v in &seg {
            scratch.seg_idx[v] = idx as u32;
        }
        if stopped_at == 0 {
            debug_assert!(top_seg.is_none());
            top_seg = Some(idx);
        } else {
            let above = scratch.seg_idx[stopped_at] as usize;
            debug_assert_eq!(segments[above][0], stopped_at);
            below[above] = Some(idx);
        }
        segments.push(seg);
        below.push(None);
    }
    let mut path = Vec::new();
    let mut cur = top_seg;
    while let Some(s) = cur {
        path.extend(segments[s].iter().rev());
        cur = below[s];
        *ops += 1;
    }
    debug_assert_eq!(
        path.len(),
        segments.iter().map(|s| s.len()).sum::<usize>(),
        "all segments stitched into one path"
    );
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::forest::validate;

    #[test]
    fn generic_rotation_moves_connected_subtrees() {
        // Graph on 8 vertices; rotating the root edge moves exactly the two
        // subtrees of the lower vertex that connect to the upper one.
        let g = Graph::new(
            8,
            [(1, 7), (2, 7), (7, 3), (7, 4), (3, 8), (4, 8), (8, 5), (8, 6)],
        )
        .unwrap();
        let f = ElimForest::from_ordering(&g, &[8, 7, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(f.parent(7), 8);
        for v in [1, 2, 3, 4] {
            assert_eq!(f.parent(v), 7);
        }
        for v in [5, 6] {
            assert_eq!(f.parent(v), 8);
        }
        let r = rotate_edge_generic(&g, &f, 8, 7).unwrap();
        assert!(validate(&g, &r));
        assert!(r.is_root(7));
        assert_eq!(r.parent(8), 7);
        // 3 and 4 connect to 8, so they move under it; 1 and 2 stay.
        for v in [3, 4, 5, 6] {
            assert_eq!(r.parent(v), 8);
        }
        for v in [1, 2] {
            assert_eq!(r.parent(v), 7);
        }
    }

    #[test]
    fn single_edge_rotation_swaps_roles() {
        let g = Graph::new(2, [(1, 2)]).unwrap();
        let f = ElimForest::from_ordering(&g, &[1, 2]).unwrap();
        let r = rotate_edge_generic(&g, &f, 1, 2).unwrap();
        assert_eq!(r.key(), vec![2, 0]);
    }

    #[test]
    fn generic_rotation_is_an_involution() {
        let g = families::cycle(4);
        for order in crate::testutil::all_permutations(4) {
            let f = ElimForest::from_ordering(&g, &order).unwrap();
            for v in 1..=4 {
                let p = f.parent(v);
                if p == 0 {
                    continue;
                }
                let r = rotate_edge_generic(&g, &f, p, v).unwrap();
                assert!(validate(&g, &r));
                let back = rotate_edge_generic(&g, &r, v, p).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn fast_up_equals_generic_on_cliques() {
        // Up-rotation in a complete graph is an adjacent transposition of the
        // chain.
        let pg = PeoGraph::new(families::complete(4)).unwrap();
        let f = ElimForest::from_ordering(pg.graph(), &[1, 2, 3, 4]).unwrap();
        let mut fast = f.clone();
        rotate_up(&pg, &mut fast, 3).unwrap();
        let generic = rotate_edge_generic(pg.graph(), &f, 2, 3).unwrap();
        assert_eq!(fast, generic);
        // Chain 1, 2, 3, 4 becomes chain 1, 3, 2, 4.
        assert_eq!(fast.key(), vec![0, 3, 1, 2]);
    }

    #[test]
    fn fast_rotations_match_generic_at_clean_states() {
        // The fast adjacency tests stand in for the connectivity search only
        // at clean states, which are the states the generator visits: every
        // vertex above the rotated one must hold all of its tree's smaller
        // vertices below itself, or none of them. Exhaustive over all
        // chordal graphs on up to 5 vertices whose identity labeling is a
        // perfect elimination ordering, all forests, all vertices, both
        // directions.
        for n in 1..=5usize {
            let pairs = crate::testutil::vertex_pairs(n);
            for mask in 0u32..1 << pairs.len() {
                let g = crate::testutil::graph_from_mask(n, &pairs, mask);
                if !g.identity_is_peo() {
                    continue;
                }
                let pg = PeoGraph::new(g).unwrap();
                for order in crate::testutil::all_permutations(n) {
                    let f = ElimForest::from_ordering(pg.graph(), &order).unwrap();
                    for j in 2..=n {
                        if !crate::verification::is_clean_rotation(&f, j) {
                            continue;
                        }
                        let p = f.parent(j);
                        if p != 0 && p < j {
                            let mut fast = f.clone();
                            rotate_up(&pg, &mut fast, j).unwrap();
                            let generic = rotate_edge_generic(pg.graph(), &f, p, j).unwrap();
                            assert_eq!(fast, generic, "up n={n} mask={mask} j={j}");
                        }
                        if let Ok(Some(c)) = f.unique_smaller_child(j) {
                            let mut fast = f.clone();
                            rotate_down(&pg, &mut fast, j).unwrap();
                            let generic = rotate_edge_generic(pg.graph(), &f, j, c).unwrap();
                            assert_eq!(fast, generic, "down n={n} mask={mask} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_errors() {
        let pg = PeoGraph::new(families::path(3)).unwrap();
        let f = ElimForest::from_ordering(pg.graph(), &[1, 2, 3]).unwrap();
        // The root has no parent; the deepest vertex has no child at all.
        assert!(rotate_up(&pg, &mut f.clone(), 1).is_err());
        assert!(rotate_down(&pg, &mut f.clone(), 3).is_err());
        assert!(matches!(
            rotate_edge_generic(pg.graph(), &f, 3, 2),
            Err(Error::RotationUndefined(_))
        ));
    }
}
