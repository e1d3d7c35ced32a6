//! Elimination forests: rooted forests on `1..=n` in which the subtree of
//! every vertex spans exactly the connected component containing it after its
//! ancestors are removed from the graph.

use crate::error::{Error, Result};
use crate::graph::{permutation_positions, Graph};

/// Canonical identity of a forest: its parent array over `1..=n`, 0 for
/// roots. Equal forests have equal keys.
pub type ForestKey = Vec<usize>;

/// Rooted forest on `1..=n` with parent pointers and children lists.
///
/// Children lists are unordered semantically; their order is an
/// implementation artifact and all equality (and `key`) goes through the
/// parent array only.
#[derive(Clone, Debug)]
pub struct ElimForest {
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    /// Position of `v` inside its parent's children list (or inside `roots`).
    pos: Vec<usize>,
    roots: Vec<usize>,
}

impl PartialEq for ElimForest {
    fn eq(&self, other: &Self) -> bool {
        self.parent[1..] == other.parent[1..]
    }
}
impl Eq for ElimForest {}

impl ElimForest {
    pub(crate) fn with_capacity(n: usize) -> ElimForest {
        ElimForest {
            parent: vec![0; n + 1],
            children: vec![Vec::new(); n + 1],
            pos: vec![0; n + 1],
            roots: Vec::new(),
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.parent.len() - 1
    }

    /// Parent of `v`, 0 if `v` is a root.
    #[inline]
    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.parent[v] == 0
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Children of `v` smaller than `v`.
    pub fn smaller_children(&self, v: usize) -> Vec<usize> {
        self.children[v].iter().copied().filter(|&c| c < v).collect()
    }

    /// The unique smaller child of `v`; errors if there are two or more
    /// (which signals a forest of a non-PEO graph).
    pub fn unique_smaller_child(&self, v: usize) -> Result<Option<usize>> {
        let sc = self.smaller_children(v);
        match sc.len() {
            0 => Ok(None),
            1 => Ok(Some(sc[0])),
            count => Err(Error::AmbiguousSmallerChild { vertex: v, count }),
        }
    }

    pub fn key(&self) -> ForestKey {
        self.parent[1..].to_vec()
    }

    /// Space-separated parent array, e.g. `"0 1 2"` for the chain 1→2→3.
    pub fn key_string(&self) -> String {
        let strs: Vec<String> = self.parent[1..].iter().map(|p| p.to_string()).collect();
        strs.join(" ")
    }

    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.parent[v];
        while cur != 0 {
            out.push(cur);
            cur = self.parent[cur];
        }
        out
    }

    pub fn depth(&self, v: usize) -> usize {
        self.ancestors(v).len()
    }

    /// Vertices of the subtree rooted at `v`, in DFS order starting with `v`.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut head = 0;
        while head < out.len() {
            let u = out[head];
            head += 1;
            out.extend_from_slice(&self.children[u]);
        }
        out
    }

    /// True iff `v` is an ancestor of `u` (strictly).
    pub fn is_ancestor(&self, v: usize, u: usize) -> bool {
        let mut cur = self.parent[u];
        while cur != 0 {
            if cur == v {
                return true;
            }
            cur = self.parent[cur];
        }
        false
    }

    pub(crate) fn attach(&mut self, v: usize, p: usize) {
        self.parent[v] = p;
        if p == 0 {
            self.pos[v] = self.roots.len();
            self.roots.push(v);
        } else {
            self.pos[v] = self.children[p].len();
            self.children[p].push(v);
        }
    }

    pub(crate) fn detach(&mut self, v: usize) {
        let p = self.parent[v];
        let list = if p == 0 {
            &mut self.roots
        } else {
            &mut self.children[p]
        };
        let i = self.pos[v];
        list.swap_remove(i);
        if let Some(&moved) = list.get(i) {
            self.pos[moved] = i;
        }
        self.parent[v] = 0;
    }

    /// The forest produced by removing vertices in the given order,
    /// recursing on the connected components left behind.
    pub fn from_ordering(g: &Graph, order: &[usize]) -> Result<ElimForest> {
        let n = g.n();
        let pos = permutation_positions(order, n)?;
        let mut f = ElimForest::with_capacity(n);
        // Iterative worklist of (vertex set, parent); the earliest-removed
        // vertex of each set becomes the root of the corresponding subtree.
        let mut work: Vec<(Vec<usize>, usize)> = g
            .connected_components()
            .into_iter()
            .map(|c| (c, 0))
            .collect();
        let mut in_set = vec![false; n + 1];
        while let Some((verts, parent)) = work.pop() {
            let &root = verts.iter().min_by_key(|&&v| pos[v]).unwrap();
            f.attach(root, parent);
            if verts.len() == 1 {
                continue;
            }
            for &v in &verts {
                in_set[v] = true;
            }
            in_set[root] = false;
            // Components of the set minus its root.
            let mut remaining: Vec<usize> = verts.iter().copied().filter(|&v| v != root).collect();
            while let Some(start) = remaining.pop() {
                if !in_set[start] {
                    continue;
                }
                let mut comp = vec![start];
                in_set[start] = false;
                let mut head = 0;
                while head < comp.len() {
                    let v = comp[head];
                    head += 1;
                    for &u in g.neighbors(v) {
                        if in_set[u] {
                            in_set[u] = false;
                            comp.push(u);
                        }
                    }
                }
                work.push((comp, root));
            }
        }
        Ok(f)
    }

    /// True iff `perm` is a linear extension of the forest: every ancestor
    /// appears before its descendants.
    pub fn is_linear_extension(&self, perm: &[usize]) -> bool {
        match permutation_positions(perm, self.n()) {
            Ok(pos) => (1..=self.n())
                .all(|v| self.parent[v] == 0 || pos[self.parent[v]] < pos[v]),
            Err(_) => false,
        }
    }
}

/// Full validation of the elimination-forest property of `f` against `g`:
/// structural consistency, plus, for every vertex `v`, that the subtree of
/// `v` spans exactly the connected component of `g` minus the ancestors of
/// `v` that contains `v`.
pub fn validate(g: &Graph, f: &ElimForest) -> bool {
    let n = g.n();
    if f.n() != n {
        return false;
    }
    // Structure: children lists match parent pointers, no cycles.
    for v in 1..=n {
        let p = f.parent(v);
        if p > n {
            return false;
        }
        if p == 0 {
            if !f.roots().contains(&v) {
                return false;
            }
        } else if !f.children(p).contains(&v) {
            return false;
        }
    }
    let mut reached = 0usize;
    let mut seen = vec![false; n + 1];
    for &r in f.roots() {
        for v in f.subtree(r) {
            if seen[v] {
                return false;
            }
            seen[v] = true;
            reached += 1;
        }
    }
    if reached != n {
        return false;
    }
    if f.roots().len() != g.connected_components().len() {
        return false;
    }
    // Elimination property, by explicit component computation per vertex.
    let mut blocked = vec![false; n + 1];
    for v in 1..=n {
        for a in f.ancestors(v) {
            blocked[a] = true;
        }
        let mut comp = vec![v];
        let mut in_comp = vec![false; n + 1];
        in_comp[v] = true;
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for &u in g.neighbors(x) {
                if !blocked[u] && !in_comp[u] {
                    in_comp[u] = true;
                    comp.push(u);
                }
            }
        }
        for a in f.ancestors(v) {
            blocked[a] = false;
        }
        let mut sub = f.subtree(v);
        comp.sort_unstable();
        sub.sort_unstable();
        if comp != sub {
            return false;
        }
    }
    true
}

/// Maximal tubing of a forest: the vertex sets of all subtrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tubing {
    /// Sorted vertex lists, ordered lexicographically.
    pub tubes: Vec<Vec<usize>>,
}

impl Tubing {
    pub fn serialize(&self) -> String {
        let groups: Vec<String> = self
            .tubes
            .iter()
            .map(|t| {
                let inner: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        groups.join(" ")
    }
}

/// The inclusionwise-maximal tubing whose tubes are the subtree vertex sets
/// of `f`.
pub fn to_tubing(f: &ElimForest) -> Tubing {
    let mut tubes: Vec<Vec<usize>> = (1..=f.n())
        .map(|v| {
            let mut t = f.subtree(v);
            t.sort_unstable();
            t
        })
        .collect();
    tubes.sort();
    Tubing { tubes }
}

/// Checks the tubing axioms against `g`: every tube induces a connected
/// subgraph, every pair is nested or disjoint-and-non-adjacent, and the
/// vertex set of each connected component is present.
pub fn validate_tubing(g: &Graph, t: &Tubing) -> bool {
    let connected = |tube: &[usize]| g.induced(tube).is_connected();
    if !t.tubes.iter().all(|tube| connected(tube)) {
        return false;
    }
    for comp in g.connected_components() {
        if !t.tubes.contains(&comp) {
            return false;
        }
    }
    for (i, a) in t.tubes.iter().enumerate() {
        for b in t.tubes.iter().skip(i + 1) {
            let nested = a.iter().all(|v| b.contains(v)) || b.iter().all(|v| a.contains(v));
            if nested {
                continue;
            }
            let disjoint = a.iter().all(|v| !b.contains(v));
            let adjacent = a
                .iter()
                .any(|&u| b.iter().any(|&v| g.adjacent(u, v)));
            if !disjoint || adjacent {
                return false;
            }
        }
    }
    true
}
