//! Undirected simple graphs on vertices `1..=n`, with constant-time adjacency
//! queries, chordality recognition via lexicographic BFS, and the structural
//! predicates used by the generators and the cyclicity analysis.
//!
//! Vertex 0 is reserved everywhere as the "no vertex" sentinel.

use crate::error::{Error, Result};

/// Bit-packed symmetric adjacency matrix.
#[derive(Clone, Debug)]
struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = (n + 1 + 63) / 64;
        BitMatrix {
            words_per_row,
            bits: vec![0; words_per_row * (n + 1)],
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words_per_row + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }
}

/// Undirected simple graph on vertices `1..=n`.
///
/// Keeps both an adjacency matrix (constant-time queries, O(n^2) bits) and
/// sorted adjacency lists. Immutable after construction. The matrix puts a
/// practical limit of about n <= 2^15 on the vertex count.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    matrix: BitMatrix,
    lists: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges may be given in either
    /// orientation; duplicates, self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut matrix = BitMatrix::new(n);
        let mut lists = vec![Vec::new(); n + 1];
        let mut normalized = Vec::new();
        for (line, (a, b)) in edges.into_iter().enumerate() {
            let line = line + 2; // matches the file format's 1-based line numbers
            if a == b {
                return Err(Error::SelfLoop { line });
            }
            if a < 1 || a > n || b < 1 || b > n {
                return Err(Error::VertexOutOfRange { line, n });
            }
            let (u, v) = (a.min(b), a.max(b));
            if matrix.get(u, v) {
                return Err(Error::DuplicateEdge { line });
            }
            matrix.set(u, v);
            matrix.set(v, u);
            lists[u].push(v);
            lists[v].push(u);
            normalized.push((u, v));
        }
        for l in &mut lists {
            l.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            matrix,
            lists,
        })
    }

    /// Parses the edge-list file format: a header line `n m`, followed by m
    /// lines `u v` with `1 <= u < v <= n`. Lines starting with `#` are
    /// comments and may appear anywhere.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim_start().starts_with('#'))
            .filter(|(_, l)| !l.trim().is_empty());
        let (line, header) = lines.next().ok_or(Error::MalformedLine {
            line: 1,
            reason: "missing header line \"n m\"".into(),
        })?;
        let mut it = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize| -> Result<usize> {
            tok.and_then(|t| t.parse().ok()).ok_or(Error::MalformedLine {
                line,
                reason: format!("expected \"n m\", got {header:?}"),
            })
        };
        let n: usize = parse_num(it.next(), line)?;
        let m: usize = parse_num(it.next(), line)?;
        if it.next().is_some() {
            return Err(Error::MalformedLine {
                line,
                reason: "trailing tokens after \"n m\"".into(),
            });
        }
        if n == 0 {
            return Err(Error::MalformedLine {
                line,
                reason: "vertex count must be at least 1".into(),
            });
        }
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, text) = lines.next().ok_or(Error::MalformedLine {
                line: 0,
                reason: format!("expected {m} edge lines"),
            })?;
            let mut it = text.split_whitespace();
            let u: usize = parse_num(it.next(), line)?;
            let v: usize = parse_num(it.next(), line)?;
            if it.next().is_some() {
                return Err(Error::MalformedLine {
                    line,
                    reason: "trailing tokens after \"u v\"".into(),
                });
            }
            if u == v {
                return Err(Error::SelfLoop { line });
            }
            if u > v {
                return Err(Error::MalformedLine {
                    line,
                    reason: format!("expected u < v, got {u} {v}"),
                });
            }
            if u < 1 || v > n {
                return Err(Error::VertexOutOfRange { line, n });
            }
            edges.push((line, u, v));
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::MalformedLine {
                line,
                reason: "unexpected content after last edge".into(),
            });
        }
        // Re-run duplicate detection so the error carries the right line.
        let mut g = Graph::new(n, edges.iter().map(|&(_, u, v)| (u, v)));
        if let Err(Error::DuplicateEdge { line }) = g {
            let idx = line - 2;
            g = Err(Error::DuplicateEdge {
                line: edges[idx].0,
            });
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.matrix.get(u, v)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.lists[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.lists[v].len()
    }

    /// Partition of the vertices by connectivity; blocks and their contents
    /// are sorted ascending.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n >= 1 && self.connected_components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.m() == self.n - 1
    }

    /// True iff the graph has at least three vertices and removing any single
    /// vertex leaves a connected graph.
    pub fn is_2_connected(&self) -> bool {
        if self.n < 3 {
            return false;
        }
        (1..=self.n).all(|skip| {
            let start = if skip == 1 { 2 } else { 1 };
            let mut seen = vec![false; self.n + 1];
            seen[skip] = true;
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        count += 1;
                        stack.push(u);
                    }
                }
            }
            count == self.n - 1
        })
    }

    /// True iff for every edge `{i, k}` with `i < k`, every intermediate
    /// vertex `i < j < k` is adjacent to both `i` and `k`.
    pub fn is_filled(&self) -> bool {
        self.edges.iter().all(|&(i, k)| {
            (i + 1..k).all(|j| self.adjacent(i, j) && self.adjacent(j, k))
        })
    }

    /// The subgraph induced by `verts` (sorted ascending), relabeled to
    /// `1..=verts.len()` in that order.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut new_of = vec![0usize; self.n + 1];
        for (i, &v) in verts.iter().enumerate() {
            new_of[v] = i + 1;
        }
        let edges = self.edges.iter().filter_map(|&(u, v)| {
            if new_of[u] != 0 && new_of[v] != 0 {
                Some((new_of[u], new_of[v]))
            } else {
                None
            }
        });
        Graph::new(verts.len(), edges).expect("induced subgraph of a valid graph")
    }

    /// Lexicographic breadth-first search. Returns the visit sequence
    /// (`order[k]` is the vertex visited (k+1)-th); ties are broken toward the
    /// smallest vertex, so the output is deterministic. If the graph is
    /// chordal, assigning labels in visit order yields a perfect elimination
    /// ordering.
    pub fn lex_bfs_order(&self) -> Vec<usize> {
        // Partition refinement over a doubly linked list of cells. Each cell
        // keeps its vertices in a sorted set so the smallest-index tie rule is
        // a first() away.
        use std::collections::BTreeSet;
        struct Cell {
            verts: BTreeSet<usize>,
            prev: usize,
            next: usize,
        }
        const NIL: usize = usize::MAX;
        let mut cells = vec![Cell {
            verts: (1..=self.n).collect(),
            prev: NIL,
            next: NIL,
        }];
        let mut head = 0usize;
        let mut cell_of = vec![0usize; self.n + 1];
        let mut visited = vec![false; self.n + 1];
        let mut order = Vec::with_capacity(self.n);

        while order.len() < self.n {
            while cells[head].verts.is_empty() {
                head = cells[head].next;
            }
            let v = *cells[head].verts.iter().next().unwrap();
            cells[head].verts.remove(&v);
            visited[v] = true;
            order.push(v);

            // Split every cell containing an unvisited neighbor of v: the
            // neighbors move to a fresh cell placed immediately before it.
            let mut split_of: Vec<(usize, usize)> = Vec::new();
            for &u in self.neighbors(v) {
                if visited[u] {
                    continue;
                }
                let c = cell_of[u];
                let target = match split_of.iter().find(|&&(orig, _)| orig == c) {
                    Some(&(_, t)) => t,
                    None => {
                        let t = cells.len();
                        let prev = cells[c].prev;
                        cells.push(Cell {
                            verts: BTreeSet::new(),
                            prev,
                            next: c,
                        });
                        if prev != NIL {
                            cells[prev].next = t;
                        }
                        cells[c].prev = t;
                        // Cells before `head` are drained; keep the new cell
                        // reachable when splitting the head cell itself.
                        if c == head {
                            head = t;
                        }
                        split_of.push((c, t));
                        t
                    }
                };
                cells[c].verts.remove(&u);
                cells[target].verts.insert(u);
                cell_of[u] = target;
            }
        }
        order
    }

    /// True iff `order` is a permutation of `1..=n` such that every vertex's
    /// earlier neighbors form a clique.
    pub fn is_peo(&self, order: &[usize]) -> Result<bool> {
        let pos = permutation_positions(order, self.n)?;
        for &x in order {
            // It suffices to check the remaining earlier neighbors against
            // the latest one; pairwise adjacency follows inductively.
            let mut latest = 0;
            for &u in self.neighbors(x) {
                if pos[u] < pos[x] && (latest == 0 || pos[u] > pos[latest]) {
                    latest = u;
                }
            }
            if latest == 0 {
                continue;
            }
            for &u in self.neighbors(x) {
                if pos[u] < pos[x] && u != latest && !self.adjacent(u, latest) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff the labeling `1..=n` itself is a perfect elimination ordering.
    pub fn identity_is_peo(&self) -> bool {
        let order: Vec<usize> = (1..=self.n).collect();
        self.is_peo(&order).unwrap()
    }

    /// A perfect elimination ordering if the graph is chordal, `None`
    /// otherwise.
    pub fn chordal_peo(&self) -> Option<Vec<usize>> {
        let order = self.lex_bfs_order();
        if self.is_peo(&order).unwrap() {
            Some(order)
        } else {
            None
        }
    }

    pub fn is_chordal(&self) -> bool {
        self.chordal_peo().is_some()
    }
}

/// Returns `pos` with `pos[v]` = index of `v` in `order`, checking that
/// `order` is a permutation of `1..=n`.
pub(crate) fn permutation_positions(order: &[usize], n: usize) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    let mut pos = vec![usize::MAX; n + 1];
    for (i, &v) in order.iter().enumerate() {
        if v < 1 || v > n || pos[v] != usize::MAX {
            return Err(Error::NotAPermutation { n });
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// The number of edges of the largest induced star, together with whether the
/// value is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaEstimate {
    pub value: usize,
    pub exact: bool,
}

/// Computes the maximum, over vertices v, of the largest independent set
/// among the neighbors of v.
///
/// Exact for chordal graphs (greedy on a perfect elimination ordering) and
/// whenever every neighborhood has at most 20 vertices (exhaustive search);
/// otherwise the reported value is an upper bound flagged as inexact.
pub fn max_star_sigma(g: &Graph) -> SigmaEstimate {
    if let Some(order) = g.chordal_peo() {
        let pos = permutation_positions(&order, g.n()).unwrap();
        return SigmaEstimate {
            value: sigma_star_peo_positions(g, &pos),
            exact: true,
        };
    }
    let mut value = 0;
    let mut exact = true;
    for v in 1..=g.n() {
        let nbrs = g.neighbors(v);
        if nbrs.len() <= 20 {
            value = value.max(max_independent_set(g, nbrs));
        } else {
            // Trivial bound; independent sets in the neighborhood cannot
            // exceed its size.
            value = value.max(nbrs.len());
            exact = false;
        }
    }
    SigmaEstimate { value, exact }
}

/// Greedy maximum independent set per neighborhood, exact when `pos` encodes
/// a perfect elimination ordering: vertices processed in reverse order are
/// simplicial in the processed remainder.
pub(crate) fn sigma_star_peo_positions(g: &Graph, pos: &[usize]) -> usize {
    let mut best = 0;
    for v in 1..=g.n() {
        let mut nbrs: Vec<usize> = g.neighbors(v).to_vec();
        nbrs.sort_unstable_by(|&a, &b| pos[b].cmp(&pos[a]));
        let mut taken: Vec<usize> = Vec::new();
        for u in nbrs {
            if taken.iter().all(|&t| !g.adjacent(t, u)) {
                taken.push(u);
            }
        }
        best = best.max(taken.len());
    }
    best
}

fn max_independent_set(g: &Graph, verts: &[usize]) -> usize {
    fn rec(adj: &[u32], avail: u32) -> usize {
        if avail == 0 {
            return 0;
        }
        let v = avail.trailing_zeros() as usize;
        let without = rec(adj, avail & !(1 << v));
        let with = 1 + rec(adj, avail & !(1 << v) & !adj[v]);
        with.max(without)
    }
    let k = verts.len();
    debug_assert!(k <= 20);
    let mut adj = vec![0u32; k];
    for i in 0..k {
        for j in i + 1..k {
            if g.adjacent(verts[i], verts[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    rec(&adj, (1u32 << k) - 1)
}
