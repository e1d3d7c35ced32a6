//! Brute-force oracles: exhaustive enumeration of elimination forests by
//! recursive root choice, the flip graph under single rotations, Gray-code
//! verification, and an independent greedy minimal-jump generator over the
//! representative permutations.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::analysis::count_forests;
use crate::error::{Error, Result};
use crate::forest::{validate, ElimForest, ForestKey};
use crate::graph::Graph;
use crate::insertion::sigma_encode;
use crate::peo::PeoGraph;
use crate::rotation::rotate_edge_generic;

const ENUMERATION_GUARD: u64 = 10_000_000;

fn check_enumeration_guard(g: &Graph) -> Result<BigUint> {
    let count = count_forests(g)?;
    if count > BigUint::from(ENUMERATION_GUARD) {
        return Err(Error::SizeGuard(format!(
            "graph has {count} elimination forests, enumeration is limited to {ENUMERATION_GUARD}"
        )));
    }
    Ok(count)
}

/// All elimination forests of `g`, each built exactly once by choosing a
/// root per component and recursing on the split, without deduplication.
/// Guarded by the forest count.
pub fn enumerate_all(g: &Graph) -> Result<Vec<ElimForest>> {
    let count = check_enumeration_guard(g)?;
    // Per component, enumerate all trees as parent-assignment maps; then take
    // the cartesian product across components.
    fn trees_of(g: &Graph, verts: &[usize], parent: usize) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for &root in verts {
            let rest: Vec<usize> = verts.iter().copied().filter(|&v| v != root).collect();
            let mut comp_choices: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
            for comp in split_components(g, &rest) {
                comp_choices.push(trees_of(g, &comp, root));
            }
            let mut partials: Vec<Vec<(usize, usize)>> = vec![vec![(root, parent)]];
            for choices in comp_choices {
                let mut next = Vec::with_capacity(partials.len() * choices.len());
                for p in &partials {
                    for c in &choices {
                        let mut q = p.clone();
                        q.extend_from_slice(c);
                        next.push(q);
                    }
                }
                partials = next;
            }
            out.extend(partials);
        }
        out
    }
    let mut forests: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for comp in g.connected_components() {
        let choices = trees_of(g, &comp, 0);
        let mut next = Vec::with_capacity(forests.len() * choices.len());
        for f in &forests {
            for c in &choices {
                let mut q = f.clone();
                q.extend_from_slice(c);
                next.push(q);
            }
        }
        forests = next;
    }
    let out: Vec<ElimForest> = forests
        .into_iter()
        .map(|assignment| {
            let mut parent = vec![0usize; g.n() + 1];
            for (v, p) in assignment {
                parent[v] = p;
            }
            forest_from_parents(g.n(), &parent)
        })
        .collect();
    debug_assert_eq!(BigUint::from(out.len()), count);
    Ok(out)
}

fn split_components(g: &Graph, verts: &[usize]) -> Vec<Vec<usize>> {
    let mut in_set: HashSet<usize> = verts.iter().copied().collect();
    let mut comps = Vec::new();
    for &start in verts {
        if !in_set.contains(&start) {
            continue;
        }
        in_set.remove(&start);
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &u in g.neighbors(v) {
                if in_set.remove(&u) {
                    comp.push(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Rebuilds an [`ElimForest`] from a parent array indexed `1..=n`
/// (`parent[0]` ignored). Children are attached in ascending vertex order.
pub fn forest_from_parents(n: usize, parent: &[usize]) -> ElimForest {
    let mut f = ElimForest::with_capacity(n);
    // Attach in topological order: roots first.
    let mut attached = vec![false; n + 1];
    let mut pending: Vec<usize> = (1..=n).collect();
    while !pending.is_empty() {
        pending.retain(|&v| {
            let p = parent[v];
            if p == 0 || attached[p] {
                f.attach(v, p);
                attached[v] = true;
                false
            } else {
                true
            }
        });
    }
    f
}

/// Flip graph: one vertex per elimination forest (canonical keys), one edge
/// per single tree rotation.
pub struct FlipGraph {
    pub keys: Vec<ForestKey>,
    index: HashMap<ForestKey, usize>,
    pub adj: Vec<Vec<usize>>,
}

impl FlipGraph {
    pub fn vertex_count(&self) -> usize {
        self.keys.len()
    }

    pub fn index_of(&self, key: &ForestKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn are_adjacent(&self, a: &ForestKey, b: &ForestKey) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adj[i].contains(&j),
            _ => false,
        }
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.vertex_count())
            .all(|v| self.degree(v) == d)
            .then_some(d)
    }

    /// DOT rendering; `label` maps a forest key to the node label, and the
    /// consecutive pairs of `highlight` are drawn bold.
    pub fn to_dot(
        &self,
        label: impl Fn(&ForestKey) -> String,
        highlight: Option<&[ForestKey]>,
    ) -> String {
        let mut bold: HashSet<(usize, usize)> = HashSet::new();
        if let Some(path) = highlight {
            for w in path.windows(2) {
                if let (Some(a), Some(b)) = (self.index_of(&w[0]), self.index_of(&w[1])) {
                    bold.insert((a.min(b), a.max(b)));
                }
            }
        }
        let mut out = String::from("graph flip {\n  node [shape=box];\n");
        for (i, k) in self.keys.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}\"];\n", i, label(k)));
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        for (i, j) in edges {
            if bold.contains(&(i, j)) {
                out.push_str(&format!("  v{i} -- v{j} [penwidth=3];\n"));
            } else {
                out.push_str(&format!("  v{i} -- v{j};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the flip graph by applying the rotation of every parent-child
/// pair of every forest.
pub fn build_flip_graph(g: &Graph) -> Result<FlipGraph> {
    let forests = enumerate_all(g)?;
    let keys: Vec<ForestKey> = forests.iter().map(|f| f.key()).collect();
    let index: HashMap<ForestKey, usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.clone(), i))
        .collect();
    let mut scratch = crate::generator::KeyScratch::new(g.n());
    let mut adj = vec![Vec::new(); forests.len()];
    for (i, f) in forests.iter().enumerate() {
        let base = &keys[i];
        for j in 1..=g.n() {
            let p = f.parent(j);
            if p == 0 {
                continue;
            }
            let neighbor = crate::generator::rotated_key(g, f, p, j, base, &mut scratch);
            let t = *index
                .get(&neighbor)
                .expect("rotation stays within the forest set");
            adj[i].push(t);
        }
        adj[i].sort_unstable();
        adj[i].dedup();
    }
    Ok(FlipGraph { keys, index, adj })
}

/// Are two forests connected by exactly one rotation?
pub fn differ_by_one_rotation(g: &Graph, a: &ElimForest, b: &ElimForest) -> bool {
    if a == b {
        return false;
    }
    for j in 1..=g.n() {
        let p = a.parent(j);
        if p == 0 {
            continue;
        }
        if let Ok(r) = rotate_edge_generic(g, a, p, j) {
            if &r == b {
                return true;
            }
        }
    }
    false
}

/// Structured result of the Gray-code checks; failures are entries, not
/// errors.
#[derive(Clone, Debug)]
pub struct GrayCodeReport {
    pub all_valid: bool,
    pub all_distinct: bool,
    pub consecutive_adjacent: bool,
    pub complete: bool,
    pub cyclic: bool,
    pub details: Vec<String>,
}

impl GrayCodeReport {
    pub fn all_checks_pass(&self) -> bool {
        self.all_valid && self.all_distinct && self.consecutive_adjacent && self.complete
    }
}

/// Verifies a forest sequence against the oracle: validity of every entry,
/// pairwise distinctness, flip-graph adjacency of consecutive entries,
/// completeness against the enumeration, and first/last adjacency.
pub fn verify_gray_code(g: &Graph, seq: &[ElimForest]) -> Result<GrayCodeReport> {
    let mut details = Vec::new();
    let all_valid = seq.iter().enumerate().all(|(i, f)| {
        let ok = validate(g, f);
        if !ok {
            details.push(format!("entry {i} is not an elimination forest"));
        }
        ok
    });
    let mut seen = HashSet::new();
    let all_distinct = seq.iter().enumerate().all(|(i, f)| {
        let fresh = seen.insert(f.key());
        if !fresh {
            details.push(format!("entry {i} repeats an earlier forest"));
        }
        fresh
    });
    let consecutive_adjacent = seq.windows(2).enumerate().all(|(i, w)| {
        let ok = differ_by_one_rotation(g, &w[0], &w[1]);
        if !ok {
            details.push(format!("entries {i} and {} are not one rotation apart", i + 1));
        }
        ok
    });
    let expected: HashSet<ForestKey> = enumerate_all(g)?.iter().map(|f| f.key()).collect();
    let complete = seen == expected;
    if !complete {
        details.push(format!(
            "sequence covers {} of {} forests",
            seen.len(),
            expected.len()
        ));
    }
    let cyclic = seq.len() >= 2
        && differ_by_one_rotation(g, seq.last().unwrap(), seq.first().unwrap());
    Ok(GrayCodeReport {
        all_valid,
        all_distinct,
        consecutive_adjacent,
        complete,
        cyclic,
        details,
    })
}

/// Jump direction within a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JumpDir {
    Left,
    Right,
}

/// The minimal jump of `value` in `perm` in the given direction with respect
/// to membership in `lang`: the value moves over smaller entries only, by
/// the fewest steps that land in the language.
pub fn minimal_jump(
    perm: &[usize],
    value: usize,
    dir: JumpDir,
    lang: &HashSet<Vec<usize>>,
) -> Option<Vec<usize>> {
    let at = perm.iter().position(|&v| v == value)?;
    let mut cur = perm.to_vec();
    match dir {
        JumpDir::Right => {
            let mut i = at;
            while i + 1 < cur.len() && cur[i + 1] < value {
                cur.swap(i, i + 1);
                i += 1;
                if lang.contains(&cur) {
                    return Some(cur);
                }
            }
        }
        JumpDir::Left => {
            let mut i = at;
            while i > 0 && cur[i - 1] < value {
                cur.swap(i, i - 1);
                i -= 1;
                if lang.contains(&cur) {
                    return Some(cur);
                }
            }
        }
    }
    None
}

/// A jump of `value` is clean if every larger value sits to the left or to
/// the right of all values smaller than itself.
pub fn is_clean_jump(perm: &[usize], value: usize) -> bool {
    let n = perm.len();
    for k in value + 1..=n {
        let at = perm.iter().position(|&v| v == k).unwrap();
        let left = perm[..at].iter().any(|&v| v < k);
        let right = perm[at + 1..].iter().any(|&v| v < k);
        if left && right {
            return false;
        }
    }
    true
}

/// A rotation of an edge with larger endpoint `j` is clean if every vertex
/// `k > j` has either all vertices of its tree smaller than `k` as
/// descendants, or none of them.
pub fn is_clean_rotation(f: &ElimForest, j: usize) -> bool {
    for k in j + 1..=f.n() {
        // Vertices smaller than k within k's tree.
        let mut root = k;
        while f.parent(root) != 0 {
            root = f.parent(root);
        }
        let tree = f.subtree(root);
        let smaller: Vec<usize> = tree.iter().copied().filter(|&v| v < k).collect();
        if smaller.is_empty() {
            continue;
        }
        let descendants: HashSet<usize> = f.subtree(k).into_iter().collect();
        let inside = smaller.iter().filter(|v| descendants.contains(v)).count();
        if inside != 0 && inside != smaller.len() {
            return false;
        }
    }
    true
}

/// Greedy minimal-jump run over the representative permutations of all
/// forests, starting at the identity: repeatedly jumps the largest possible
/// value to an unvisited member of the language. Independent of the
/// rotation-based generators; used to cross-validate them.
pub fn algorithm_j(pg: &PeoGraph) -> Result<Vec<Vec<usize>>> {
    let lang: HashSet<Vec<usize>> = enumerate_all(pg.graph())?
        .iter()
        .map(|f| sigma_encode(f).expect("forests of certified graphs"))
        .collect();
    let start: Vec<usize> = (1..=pg.n()).collect();
    debug_assert!(lang.contains(&start));
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    visited.insert(start.clone());
    let mut seq = vec![start];
    'run: loop {
        let cur = seq.last().unwrap();
        for value in (2..=pg.n()).rev() {
            let mut candidates: Vec<Vec<usize>> = [JumpDir::Left, JumpDir::Right]
                .into_iter()
                .filter_map(|d| minimal_jump(cur, value, d, &lang))
                .filter(|p| !visited.contains(p))
                .collect();
            match candidates.len() {
                0 => continue,
                1 => {
                    let next = candidates.pop().unwrap();
                    visited.insert(next.clone());
                    seq.push(next);
                    continue 'run;
                }
                _ => break 'run,
            }
        }
        break 'run;
    }
    Ok(seq)
}

/// Per-level closure check of the representative-permutation languages.
#[derive(Clone, Debug)]
pub struct ZigzagLevel {
    pub nu: usize,
    /// Inserting the new largest value first or last stays in the language.
    pub z1: bool,
    /// The level is exactly the previous one with the largest value appended.
    pub z2: bool,
}

#[derive(Clone, Debug)]
pub struct ZigzagReport {
    pub levels: Vec<ZigzagLevel>,
    pub all_hold: bool,
}

/// Materializes the representative-permutation language of every prefix
/// graph and verifies that each level satisfies one of the two closure
/// conditions, and that deleting the largest value maps each level onto the
/// previous one.
pub fn check_zigzag_closure(pg: &PeoGraph) -> Result<ZigzagReport> {
    let n = pg.n();
    let mut levels: Vec<HashSet<Vec<usize>>> = Vec::with_capacity(n + 1);
    levels.push([Vec::new()].into_iter().collect());
    for nu in 1..=n {
        let prefix: Vec<usize> = (1..=nu).collect();
        let sub = pg.graph().induced(&prefix);
        let lang: HashSet<Vec<usize>> = enumerate_all(&sub)?
            .iter()
            .map(|f| sigma_encode(f).expect("prefixes of certified graphs"))
            .collect();
        levels.push(lang);
    }
    let mut out = Vec::new();
    let mut all_hold = true;
    for nu in 1..=n {
        let (lower, upper) = (&levels[nu - 1], &levels[nu]);
        let projected: HashSet<Vec<usize>> = upper
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.retain(|&v| v != nu);
                q
            })
            .collect();
        if &projected != lower {
            all_hold = false;
        }
        let z1 = lower.iter().all(|p| {
            let mut first = p.clone();
            first.insert(0, nu);
            let mut last = p.clone();
            last.push(nu);
            upper.contains(&first) && upper.contains(&last)
        });
        let z2 = upper.len() == lower.len()
            && lower.iter().all(|p| {
                let mut last = p.clone();
                last.push(nu);
                upper.contains(&last)
            });
        if !(z1 || z2) {
            all_hold = false;
        }
        out.push(ZigzagLevel { nu, z1, z2 });
    }
    Ok(ZigzagReport {
        levels: out,
        all_hold,
    })
}

/// Length and termination of one greedy reference run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub visited: usize,
    pub termination: crate::generator::Termination,
}

/// Runs the greedy reference algorithm from every elimination forest of
/// `g`, sharing a single precomputed table of rotation targets across the
/// runs. Decision logic is identical to
/// [`crate::generator::run_algorithm_r`]; only the per-candidate rotations
/// are memoized. Summaries are indexed like [`enumerate_all`].
pub fn reference_runs_from_all_starts(g: &Graph) -> Result<Vec<RunSummary>> {
    use crate::generator::Termination;
    let forests = enumerate_all(g)?;
    let index: HashMap<ForestKey, usize> = forests
        .iter()
        .enumerate()
        .map(|(i, f)| (f.key(), i))
        .collect();
    // Moves encoded at their larger endpoint, largest vertex first: the up
    // edge when the parent is smaller, one down edge per smaller child.
    let mut scratch = crate::generator::KeyScratch::new(g.n());
    let mut moves: Vec<Vec<(usize, usize)>> = Vec::with_capacity(forests.len());
    for f in &forests {
        let base = f.key();
        let mut mv = Vec::new();
        for j in (2..=g.n()).rev() {
            let p = f.parent(j);
            if p != 0 && p < j {
                let key = crate::generator::rotated_key(g, f, p, j, &base, &mut scratch);
                mv.push((j, index[&key]));
            }
            for c in f.smaller_children(j) {
                let key = crate::generator::rotated_key(g, f, j, c, &base, &mut scratch);
                mv.push((j, index[&key]));
            }
        }
        moves.push(mv);
    }
    let total = forests.len();
    let mut stamp = vec![u32::MAX; total];
    let mut out = Vec::with_capacity(total);
    for (run, start) in (0..total).enumerate() {
        let run = run as u32;
        let mut cur = start;
        stamp[cur] = run;
        let mut count = 1usize;
        let termination = 'walk: loop {
            let mv = &moves[cur];
            let mut at = 0;
            while at < mv.len() {
                let j = mv[at].0;
                let mut fresh = None;
                let mut fresh_count = 0;
                while at < mv.len() && mv[at].0 == j {
                    let t = mv[at].1;
                    if stamp[t] != run {
                        fresh_count += 1;
                        fresh = Some(t);
                    }
                    at += 1;
                }
                match fresh_count {
                    0 => continue,
                    1 => {
                        cur = fresh.unwrap();
                        stamp[cur] = run;
                        count += 1;
                        continue 'walk;
                    }
                    _ => break 'walk Termination::Ambiguous,
                }
            }
            break if count == total {
                Termination::Exhausted
            } else {
                Termination::Stuck
            };
        };
        out.push(RunSummary {
            visited: count,
            termination,
        });
    }
    Ok(out)
}

/// Hamilton-cycle search with a time budget. `Some(true)` if a cycle was
/// found, `Some(false)` if the backtracking search space was exhausted
/// without one, `None` if the budget ran out (inconclusive, never a
/// failure).
///
/// A seeded path-rotation phase finds cycles quickly on well-connected
/// graphs; exhaustive backtracking (fewest-free-neighbors first, with
/// dead-vertex pruning) settles the rest and is the only source of negative
/// answers.
pub fn find_hamilton_cycle(fg: &FlipGraph, budget: Duration) -> Option<bool> {
    let n = fg.vertex_count();
    if n < 3 {
        return Some(false);
    }
    if posa_rotation_search(fg, 64 * n as u64 * n as u64) {
        return Some(true);
    }
    struct Search<'a> {
        fg: &'a FlipGraph,
        visited: Vec<bool>,
        // Unvisited neighbors per vertex.
        free: Vec<u32>,
        deadline: Instant,
        ticks: u32,
    }
    impl Search<'_> {
        fn adjacent(&self, a: usize, b: usize) -> bool {
            self.fg.adj[a].contains(&b)
        }

        fn rec(&mut self, cur: usize, depth: usize) -> Option<bool> {
            self.ticks = self.ticks.wrapping_add(1);
            if self.ticks & 0x3ff == 0 && Instant::now() > self.deadline {
                return None;
            }
            let n = self.fg.vertex_count();
            if depth == n {
                return Some(self.adjacent(cur, 0));
            }
            // A vertex that cannot reach two free ends any more kills the
            // branch; its remaining cycle neighbors must be unvisited, or be
            // the current end or the start.
            for w in 0..n {
                if self.visited[w] {
                    continue;
                }
                let slack = self.free[w]
                    + u32::from(self.adjacent(w, cur))
                    + u32::from(self.adjacent(w, 0));
                if slack < 2 {
                    return Some(false);
                }
            }
            let mut candidates: Vec<usize> = self.fg.adj[cur]
                .iter()
                .copied()
                .filter(|&u| !self.visited[u])
                .collect();
            candidates.sort_by_key(|&u| self.free[u]);
            for u in candidates {
                self.visited[u] = true;
                for &w in &self.fg.adj[u] {
                    self.free[w] -= 1;
                }
                match self.rec(u, depth + 1) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
                self.visited[u] = false;
                for &w in &self.fg.adj[u] {
                    self.free[w] += 1;
                }
            }
            Some(false)
        }
    }
    let mut search = Search {
        fg,
        visited: vec![false; n],
        free: (0..n).map(|v| fg.degree(v) as u32).collect(),
        deadline: Instant::now() + budget,
        ticks: 0,
    };
    search.visited[0] = true;
    for &w in &fg.adj[0] {
        search.free[w] -= 1;
    }
    search.rec(0, 1)
}

/// Seeded rotation heuristic: grow a path, and when the endpoint is stuck,
/// pivot around one of its neighbors on the path, reversing the tail. Only
/// ever answers "found".
fn posa_rotation_search(fg: &FlipGraph, step_limit: u64) -> bool {
    use rand::{Rng, SeedableRng};
    let n = fg.vertex_count();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9e3779b9);
    for restart in 0..8u64 {
        let mut pos: Vec<usize> = vec![usize::MAX; n];
        let mut path: Vec<usize> = Vec::with_capacity(n);
        let start = (restart as usize * 7919) % n;
        path.push(start);
        pos[start] = 0;
        let mut steps = 0u64;
        while steps < step_limit {
            steps += 1;
            let v = *path.last().unwrap();
            if path.len() == n && fg.adj[v].contains(&path[0]) {
                return true;
            }
            let fresh: Vec<usize> = fg.adj[v]
                .iter()
                .copied()
                .filter(|&u| pos[u] == usize::MAX)
                .collect();
            if let Some(&u) = pick(&fresh, &mut rng) {
                pos[u] = path.len();
                path.push(u);
                continue;
            }
            // Stuck: pivot. The new endpoint is the successor of a path
            // neighbor of v; the tail beyond it is reversed.
            let pivots: Vec<usize> = fg.adj[v]
                .iter()
                .copied()
                .filter(|&u| pos[u] != usize::MAX && pos[u] + 2 < path.len())
                .collect();
            let Some(&u) = pick(&pivots, &mut rng) else {
                break;
            };
            let from = pos[u] + 1;
            path[from..].reverse();
            for (i, &w) in path.iter().enumerate().skip(from) {
                pos[w] = i;
            }
        }
    }
    false
}

fn pick<'a, T>(items: &'a [T], rng: &mut impl rand::Rng) -> Option<&'a T> {
    if items.is_empty() {
        None
    } else {
        items.get(rng.gen_range(0..items.len()))
    }
}
