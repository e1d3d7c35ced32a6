//! Deletion of the largest vertex, the sibling insertions `c_1..c_{λ+1}`
//! along the insertion path, and the representative-permutation encoding.
//!
//! These operate on prefix-restricted forests: a forest on `1..=ν` paired
//! with the subgraph of the certified graph induced by `1..=ν`. The graph is
//! never copied; adjacency is read straight off the full `PeoGraph`.

use crate::error::{Error, Result};
use crate::forest::ElimForest;
use crate::peo::PeoGraph;
use crate::rotation::{insertion_path_walk, WalkScratch};

/// Removes the largest vertex `ν = f.n()` from a forest on `1..=ν`.
///
/// If `ν` is a root with a child, its unique child becomes the root; if it is
/// internal, its parent is connected to its unique child; a leaf or isolated
/// vertex is simply dropped. Two or more children signal a forest of a graph
/// that is not in perfect elimination order.
pub fn delete_max(f: &ElimForest) -> Result<ElimForest> {
    let nu = f.n();
    if nu == 0 {
        return Err(Error::InvalidForest("cannot delete from empty forest".into()));
    }
    let kids = f.children(nu);
    if kids.len() >= 2 {
        return Err(Error::AmbiguousSmallerChild {
            vertex: nu,
            count: kids.len(),
        });
    }
    // Splicing the unique child (if any) onto ν's parent covers all three
    // cases: root-with-child, internal, and leaf/isolated.
    let mut out = ElimForest::with_capacity(nu - 1);
    for v in 1..nu {
        let p = f.parent(v);
        let p = if p == nu { f.parent(nu) } else { p };
        out.attach(v, p);
    }
    Ok(out)
}

/// The insertion path of `ν = f.n() + 1` in a forest on `1..=ν-1`: the path
/// from the root of the tree containing ν's smaller neighbors down to the
/// deepest such neighbor. Empty iff ν is isolated in the prefix graph.
/// Computed in time proportional to its length by upward traversal from each
/// neighbor.
pub fn insertion_path(pg: &PeoGraph, f: &ElimForest) -> Vec<usize> {
    let nu = f.n() + 1;
    assert!(nu <= pg.n(), "forest larger than the certified graph");
    let mut scratch = WalkScratch::new(f.n());
    let mut ops = 0u64;
    insertion_path_walk(pg, f, nu, false, &mut scratch, &mut ops)
}

/// Inserts `ν = f.n() + 1` at position `i` of its insertion path
/// `(x_1, ..., x_λ)`: as the new root of the tree for `i = 1`, subdividing
/// the path edge `{x_{i-1}, x_i}` for `2 <= i <= λ`, or as a leaf of `x_λ`
/// for `i = λ+1`. For isolated `ν` only `i = 1` is valid and adds `ν` as an
/// isolated vertex.
pub fn insert_at(pg: &PeoGraph, f: &ElimForest, i: usize) -> Result<ElimForest> {
    let path = insertion_path(pg, f);
    insert_along(f, &path, i)
}

/// `insert_at` with a precomputed insertion path.
pub fn insert_along(f: &ElimForest, path: &[usize], i: usize) -> Result<ElimForest> {
    let nu = f.n() + 1;
    let lambda = path.len();
    if i < 1 || i > lambda + 1 {
        return Err(Error::InsertionIndexOutOfRange {
            index: i,
            max: lambda + 1,
        });
    }
    let mut out = ElimForest::with_capacity(nu);
    for v in 1..nu {
        out.attach(v, f.parent(v));
    }
    if lambda == 0 {
        out.attach(nu, 0);
    } else if i == 1 {
        let root = path[0];
        out.detach(root);
        out.attach(nu, 0);
        out.attach(root, nu);
    } else if i <= lambda {
        let upper = path[i - 2];
        let lower = path[i - 1];
        out.detach(lower);
        out.attach(nu, upper);
        out.attach(lower, nu);
    } else {
        out.attach(nu, path[lambda - 1]);
    }
    Ok(out)
}

/// The representative permutation of a forest: built by repeatedly removing
/// the largest vertex and inserting it back into the representative of the
/// remainder — prepended when it was a non-trivial root, right before its
/// unique child when internal, appended when it was a leaf or isolated.
///
/// The result is a linear extension of the forest, and the map is a bijection
/// between the forests of the graph and their representative permutations.
pub fn sigma_encode(f: &ElimForest) -> Result<Vec<usize>> {
    enum Action {
        Prepend,
        Before(usize),
        Append,
    }
    let n = f.n();
    let mut actions = Vec::with_capacity(n);
    let mut cur = f.clone();
    for nu in (1..=n).rev() {
        let kids = cur.children(nu);
        let action = if cur.is_root(nu) && !kids.is_empty() {
            Action::Prepend
        } else if !cur.is_root(nu) && !kids.is_empty() {
            if kids.len() >= 2 {
                return Err(Error::AmbiguousSmallerChild {
                    vertex: nu,
                    count: kids.len(),
                });
            }
            Action::Before(kids[0])
        } else {
            Action::Append
        };
        actions.push(action);
        cur = delete_max(&cur)?;
    }
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    for (nu, action) in (1..=n).zip(actions.into_iter().rev()) {
        match action {
            Action::Prepend => perm.insert(0, nu),
            Action::Append => perm.push(nu),
            Action::Before(i) => {
                let at = perm.iter().position(|&v| v == i).expect("child present");
                perm.insert(at, nu);
            }
        }
    }
    Ok(perm)
}
