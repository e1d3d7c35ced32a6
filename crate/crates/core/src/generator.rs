//! The three generators.
//!
//! - [`run_algorithm_r`]: the greedy reference. Repeatedly up- or
//!   down-rotates the largest vertex that yields an unvisited forest,
//!   keeping an explicit history. Works on arbitrary graphs and reports how
//!   it terminates; memory is proportional to the number of visited forests,
//!   so this is oracle/reference mode only.
//! - [`ChordalGenerator`]: history-free replay of the same sequence for
//!   certified graphs, driven by direction flags and a stack-simulating
//!   array; amortized O(σ) work per forest.
//! - [`TreeGenerator`]: the loopless variant for trees, where each step is a
//!   bounded number of elementary operations independent of n.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::analysis::count_forests;
use crate::error::{Error, Result};
use crate::forest::{validate, ElimForest, ForestKey};
use crate::graph::Graph;
use crate::insertion::sigma_encode;
use crate::peo::PeoGraph;
use crate::rotation::{
    insertion_path_walk, rotate_down_on_path, rotate_edge_generic, rotate_up_counting, Direction,
    WalkScratch,
};

/// Instrumentation counters. `ops` counts elementary operations: children
/// examined, subtrees reparented, traversal steps of insertion-path
/// computations, and a constant overhead per step.
#[derive(Clone, Copy, Debug, Default)]
pub struct GenStats {
    pub steps: u64,
    pub total_ops: u64,
    pub last_step_ops: u64,
    pub max_step_ops: u64,
}

impl GenStats {
    fn record(&mut self, ops: u64) {
        self.steps += 1;
        self.total_ops += ops;
        self.last_step_ops = ops;
        self.max_step_ops = self.max_step_ops.max(ops);
    }
}

/// History-free generator for a certified graph.
///
/// State per vertex: the rotation direction `o`, the stack-simulation entry
/// `s`, the cached insertion path and the index of the vertex on it. Only
/// entries of rotatable vertices are ever read or written.
pub struct ChordalGenerator<'a> {
    pg: &'a PeoGraph,
    forest: ElimForest,
    o: Vec<Direction>,
    s: Vec<usize>,
    q: Vec<usize>,
    paths: Vec<Vec<usize>>,
    scratch: WalkScratch,
    started: bool,
    done: bool,
    last_rotation: Option<(usize, Direction)>,
    stats: GenStats,
}

impl<'a> ChordalGenerator<'a> {
    /// Initializes at the forest obtained by removing vertices in increasing
    /// order, with every vertex oriented up and the stack fresh.
    pub fn new(pg: &'a PeoGraph) -> ChordalGenerator<'a> {
        let n = pg.n();
        let order: Vec<usize> = (1..=n).collect();
        let forest = ElimForest::from_ordering(pg.graph(), &order).expect("identity ordering");
        ChordalGenerator {
            pg,
            forest,
            o: vec![Direction::Up; n + 1],
            s: (0..=n).collect(),
            q: vec![0; n + 1],
            paths: vec![Vec::new(); n + 1],
            scratch: WalkScratch::new(n),
            started: false,
            done: pg.rho() == 0,
            last_rotation: None,
            stats: GenStats::default(),
        }
    }

    pub fn current(&self) -> &ElimForest {
        &self.forest
    }

    /// The rotation that produced the current forest, if any.
    pub fn last_rotation(&self) -> Option<(usize, Direction)> {
        self.last_rotation
    }

    pub fn stats(&self) -> GenStats {
        self.stats
    }

    /// Advances to the next forest; false when the sequence is exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let rho = self.pg.rho();
        let mut ops = 1u64;
        let j = self.s[rho];
        if j == 1 {
            self.done = true;
            return false;
        }
        match self.o[j] {
            Direction::Up => {
                rotate_up_counting(self.pg, &mut self.forest, j, &mut ops)
                    .expect("up-rotation of the selected vertex");
                self.last_rotation = Some((j, Direction::Up));
            }
            Direction::Down => {
                if self.q[j] == 0 {
                    self.paths[j] = insertion_path_walk(
                        self.pg,
                        &self.forest,
                        j,
                        true,
                        &mut self.scratch,
                        &mut ops,
                    );
                }
                let t = self.q[j];
                let c = self.paths[j][t];
                debug_assert_eq!(self.forest.unique_smaller_child(j).unwrap(), Some(c));
                let next = self.paths[j].get(t + 1).copied().unwrap_or(0);
                rotate_down_on_path(self.pg, &mut self.forest, j, c, next, &mut ops)
                    .expect("down-rotation of the selected vertex");
                self.q[j] = t + 1;
                self.last_rotation = Some((j, Direction::Down));
            }
        }
        self.s[rho] = rho;
        let blocked = match self.o[j] {
            Direction::Up => {
                let p = self.forest.parent(j);
                p == 0 || p > j
            }
            Direction::Down => {
                ops += self.forest.children(j).len() as u64;
                self.forest.children(j).iter().all(|&c| c > j)
            }
        };
        if blocked {
            match self.o[j] {
                Direction::Up => {
                    self.o[j] = Direction::Down;
                    self.q[j] = 0;
                }
                Direction::Down => self.o[j] = Direction::Up,
            }
            let k = self.pg.alpha(j);
            self.s[j] = self.s[k];
            self.s[k] = k;
            ops += 1;
        }
        self.stats.record(ops);
        true
    }

    /// Streaming interface: the first call yields the initial forest, later
    /// calls advance by one rotation. Returns a borrowed view; callers
    /// needing persistence must copy.
    pub fn next_forest(&mut self) -> Option<&ElimForest> {
        if self.step() {
            Some(&self.forest)
        } else {
            None
        }
    }

    /// Like [`Self::next_forest`] but without the borrow: true when a forest
    /// is available via [`Self::current`].
    pub fn step(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        self.advance()
    }
}

/// Static and dynamic lookup tables for the loopless tree generator.
///
/// `beta[i][j]` is the unique neighbor of `i` in the direction of `j` in the
/// tree (graph-only, immutable). `gamma[i][a]` is the current child of `i`
/// whose subtree lies in the direction of i's neighbor `a`, or 0. Row and
/// column 0 are scratch so root handling needs no branches.
pub struct TreeRotationTables {
    n: usize,
    beta: Vec<u32>,
    gamma: Vec<u32>,
}

impl TreeRotationTables {
    fn index(&self, i: usize, j: usize) -> usize {
        i * (self.n + 1) + j
    }

    pub fn beta(&self, i: usize, j: usize) -> usize {
        self.beta[self.index(i, j)] as usize
    }

    pub fn gamma(&self, i: usize, a: usize) -> usize {
        self.gamma[self.index(i, a)] as usize
    }

    fn set_gamma(&mut self, i: usize, a: usize, v: usize) {
        let at = self.index(i, a);
        self.gamma[at] = v as u32;
    }

    /// Recomputes all gamma entries of the given forest from scratch; used to
    /// cross-check the incremental maintenance.
    pub fn gamma_from_forest(&self, f: &ElimForest) -> Vec<u32> {
        let mut gamma = vec![0u32; (self.n + 1) * (self.n + 1)];
        for v in 1..=self.n {
            let p = f.parent(v);
            if p != 0 {
                gamma[self.index(p, self.beta(p, v))] = v as u32;
            }
        }
        gamma
    }

    /// Row and column 0 are scratch targets for root rotations and are
    /// excluded from the comparison.
    pub fn gamma_consistent(&self, f: &ElimForest) -> bool {
        let want = self.gamma_from_forest(f);
        (1..=self.n).all(|i| {
            (1..=self.n).all(|a| self.gamma[self.index(i, a)] == want[self.index(i, a)])
        })
    }
}

/// Loopless generator for trees: same control flow as the history-free
/// generator, but each rotation moves at most one subtree, located in O(1)
/// through the `beta`/`gamma` tables and the tracked unique smaller child.
pub struct TreeGenerator<'a> {
    pg: &'a PeoGraph,
    forest: ElimForest,
    tables: TreeRotationTables,
    /// Unique child smaller than the vertex, or 0.
    small: Vec<usize>,
    o: Vec<Direction>,
    s: Vec<usize>,
    started: bool,
    done: bool,
    last_rotation: Option<(usize, Direction)>,
    stats: GenStats,
}

impl<'a> TreeGenerator<'a> {
    /// Precomputes `beta` by one DFS per vertex (O(n^2) init) and initializes
    /// `gamma` and the smaller-child tracking from the initial forest.
    pub fn new(pg: &'a PeoGraph) -> Result<TreeGenerator<'a>> {
        let g = pg.graph();
        if !g.is_tree() {
            return Err(Error::NotATree);
        }
        let n = g.n();
        let mut tables = TreeRotationTables {
            n,
            beta: vec![0; (n + 1) * (n + 1)],
            gamma: vec![0; (n + 1) * (n + 1)],
        };
        for i in 1..=n {
            // DFS from i, remembering for every reached vertex the first step
            // taken out of i.
            let mut stack: Vec<(usize, usize)> =
                g.neighbors(i).iter().map(|&a| (a, a)).collect();
            let mut seen = vec![false; n + 1];
            seen[i] = true;
            while let Some((v, first)) = stack.pop() {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                let at = tables.index(i, v);
                tables.beta[at] = first as u32;
                for &u in g.neighbors(v) {
                    if !seen[u] {
                        stack.push((u, first));
                    }
                }
            }
        }
        let order: Vec<usize> = (1..=n).collect();
        let forest = ElimForest::from_ordering(g, &order)?;
        let mut small = vec![0usize; n + 1];
        for v in 1..=n {
            let p = forest.parent(v);
            if p != 0 {
                tables.set_gamma(p, tables.beta(p, v), v);
                if v < p {
                    debug_assert_eq!(small[p], 0);
                    small[p] = v;
                }
            }
        }
        Ok(TreeGenerator {
            pg,
            forest,
            tables,
            small,
            o: vec![Direction::Up; n + 1],
            s: (0..=n).collect(),
            started: false,
            done: pg.rho() == 0,
            last_rotation: None,
            stats: GenStats::default(),
        })
    }

    pub fn current(&self) -> &ElimForest {
        &self.forest
    }

    pub fn tables(&self) -> &TreeRotationTables {
        &self.tables
    }

    pub fn last_rotation(&self) -> Option<(usize, Direction)> {
        self.last_rotation
    }

    pub fn stats(&self) -> GenStats {
        self.stats
    }

    fn rotate_up(&mut self, j: usize) -> u64 {
        let f = &mut self.forest;
        let t = &mut self.tables;
        let i = f.parent(j);
        debug_assert!(i != 0 && i < j);
        let p = f.parent(i);
        let a = t.beta(p, i);
        let b = t.beta(i, j);
        let c = t.beta(j, i);
        let k = t.gamma(j, c);
        let mut ops = 6;
        f.detach(j);
        ops += 2;
        if k != 0 {
            f.detach(k);
            f.attach(k, i);
            ops += 2;
        }
        f.detach(i);
        f.attach(j, p);
        f.attach(i, j);
        ops += 3;
        t.set_gamma(p, a, j);
        t.set_gamma(i, b, k);
        t.set_gamma(j, c, i);
        ops += 3;
        // Smaller-child tracking: j gains i; i may gain k; p swaps i for j.
        self.small[j] = i;
        if k != 0 && k < i {
            debug_assert_eq!(self.small[i], 0);
            self.small[i] = k;
        }
        if i < p {
            self.small[p] = if j < p { j } else { 0 };
        }
        ops += 3;
        self.last_rotation = Some((j, Direction::Up));
        ops
    }

    fn rotate_down(&mut self, j: usize) -> u64 {
        let f = &mut self.forest;
        let t = &mut self.tables;
        let i = self.small[j];
        debug_assert!(i != 0 && i < j);
        let p = f.parent(j);
        let a = t.beta(p, j);
        let b = t.beta(j, i);
        let c = t.beta(i, j);
        let k = t.gamma(i, c);
        let mut ops = 6;
        f.detach(i);
        ops += 2;
        if k != 0 {
            f.detach(k);
            f.attach(k, j);
            ops += 2;
        }
        f.detach(j);
        f.attach(i, p);
        f.attach(j, i);
        ops += 3;
        t.set_gamma(p, a, i);
        t.set_gamma(j, b, k);
        t.set_gamma(i, c, j);
        ops += 3;
        // Smaller-child tracking: j loses i and may gain k; i gains j
        // (larger) and loses k; p swaps j for i.
        self.small[j] = if k != 0 && k < j { k } else { 0 };
        if k != 0 && k < i {
            self.small[i] = 0;
        }
        if i < p {
            self.small[p] = i;
        }
        ops += 3;
        self.last_rotation = Some((j, Direction::Down));
        ops
    }

    /// Advances by one rotation in a bounded number of elementary operations.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let rho = self.pg.rho();
        let j = self.s[rho];
        if j == 1 {
            self.done = true;
            return false;
        }
        let mut ops = 1 + match self.o[j] {
            Direction::Up => self.rotate_up(j),
            Direction::Down => self.rotate_down(j),
        };
        self.s[rho] = rho;
        let blocked = match self.o[j] {
            Direction::Up => {
                let p = self.forest.parent(j);
                p == 0 || p > j
            }
            // Leaf, or all children larger: both mean no smaller child.
            Direction::Down => self.small[j] == 0,
        };
        ops += 1;
        if blocked {
            self.o[j] = match self.o[j] {
                Direction::Up => Direction::Down,
                Direction::Down => Direction::Up,
            };
            let k = self.pg.alpha(j);
            self.s[j] = self.s[k];
            self.s[k] = k;
            ops += 3;
        }
        self.stats.record(ops);
        true
    }

    pub fn next_forest(&mut self) -> Option<&ElimForest> {
        if self.step() {
            Some(&self.forest)
        } else {
            None
        }
    }

    pub fn step(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        self.advance()
    }
}

/// Streaming generator over all elimination forests of a certified graph:
/// the loopless variant for trees, the history-free generator otherwise.
/// Yields every forest exactly once, starting from the increasing-removal
/// forest, with consecutive forests differing in a single rotation.
pub enum Generator<'a> {
    Tree(TreeGenerator<'a>),
    Chordal(ChordalGenerator<'a>),
}

impl<'a> Generator<'a> {
    pub fn new(pg: &'a PeoGraph) -> Generator<'a> {
        if pg.graph().is_tree() {
            Generator::Tree(TreeGenerator::new(pg).expect("tree checked"))
        } else {
            Generator::Chordal(ChordalGenerator::new(pg))
        }
    }

    pub fn next_forest(&mut self) -> Option<&ElimForest> {
        match self {
            Generator::Tree(g) => g.next_forest(),
            Generator::Chordal(g) => g.next_forest(),
        }
    }

    pub fn step(&mut self) -> bool {
        match self {
            Generator::Tree(g) => g.step(),
            Generator::Chordal(g) => g.step(),
        }
    }

    pub fn current(&self) -> &ElimForest {
        match self {
            Generator::Tree(g) => g.current(),
            Generator::Chordal(g) => g.current(),
        }
    }

    pub fn last_rotation(&self) -> Option<(usize, Direction)> {
        match self {
            Generator::Tree(g) => g.last_rotation(),
            Generator::Chordal(g) => g.last_rotation(),
        }
    }

    pub fn stats(&self) -> GenStats {
        match self {
            Generator::Tree(g) => g.stats(),
            Generator::Chordal(g) => g.stats(),
        }
    }
}

/// Convenience entry point mirroring the streaming contract.
pub fn generate_all(pg: &PeoGraph) -> Generator<'_> {
    Generator::new(pg)
}

/// Collects generated forest keys, optionally stopping after `limit` items.
pub fn collect_keys(pg: &PeoGraph, limit: Option<usize>) -> Vec<ForestKey> {
    let mut gen = Generator::new(pg);
    let mut out = Vec::new();
    while let Some(f) = gen.next_forest() {
        out.push(f.key());
        if limit.is_some_and(|l| out.len() >= l) {
            break;
        }
    }
    out
}

/// Collects the representative permutations of the generated forests.
pub fn collect_sigmas(pg: &PeoGraph, limit: Option<usize>) -> Vec<Vec<usize>> {
    let mut gen = Generator::new(pg);
    let mut out = Vec::new();
    while let Some(f) = gen.next_forest() {
        out.push(sigma_encode(f).expect("generated forests have unique smaller children"));
        if limit.is_some_and(|l| out.len() >= l) {
            break;
        }
    }
    out
}

/// How a greedy reference run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// No rotation led to an unvisited forest and all forests were visited.
    Exhausted,
    /// No rotation led to an unvisited forest but some were never visited.
    Stuck,
    /// One vertex offered two rotations to unvisited forests.
    Ambiguous,
}

/// Outcome of [`run_algorithm_r`]: the visited keys in order, the
/// termination cause, rotation counts by direction, and the total count of
/// forests when it is feasible to compute.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub keys: Vec<ForestKey>,
    pub termination: Termination,
    pub up_rotations: u64,
    pub down_rotations: u64,
    pub total: Option<BigUint>,
}

impl RunReport {
    pub fn visited(&self) -> usize {
        self.keys.len()
    }
}

/// Scratch marks for candidate evaluation, cleared by epoch bumping.
pub(crate) struct KeyScratch {
    in_sub: Vec<u32>,
    in_comp: Vec<u32>,
    epoch: u32,
    stack: Vec<usize>,
}

impl KeyScratch {
    pub(crate) fn new(n: usize) -> KeyScratch {
        KeyScratch {
            in_sub: vec![0; n + 1],
            in_comp: vec![0; n + 1],
            epoch: 0,
            stack: Vec::new(),
        }
    }
}

/// Canonical key of the forest obtained by rotating the tree edge `{i, j}`
/// (`i` the parent of `j`), without materializing the forest. Semantics
/// identical to [`rotate_edge_generic`].
pub(crate) fn rotated_key(
    g: &Graph,
    f: &ElimForest,
    i: usize,
    j: usize,
    base: &ForestKey,
    scratch: &mut KeyScratch,
) -> ForestKey {
    scratch.epoch += 1;
    let epoch = scratch.epoch;
    scratch.stack.clear();
    scratch.stack.push(i);
    scratch.in_sub[i] = epoch;
    while let Some(v) = scratch.stack.pop() {
        for &c in f.children(v) {
            scratch.in_sub[c] = epoch;
            scratch.stack.push(c);
        }
    }
    scratch.stack.push(i);
    scratch.in_comp[i] = epoch;
    while let Some(v) = scratch.stack.pop() {
        for &u in g.neighbors(v) {
            if u != j && scratch.in_sub[u] == epoch && scratch.in_comp[u] != epoch {
                scratch.in_comp[u] = epoch;
                scratch.stack.push(u);
            }
        }
    }
    let mut key = base.clone();
    key[j - 1] = f.parent(i);
    key[i - 1] = j;
    for &k in f.children(j) {
        if scratch.in_comp[k] == epoch {
            key[k - 1] = i;
        }
    }
    key
}

/// The greedy reference run from an arbitrary valid starting forest.
///
/// Scans vertices from largest to smallest; for each, the candidate moves
/// are the up-rotation (when the parent is smaller) and one down-rotation
/// per smaller child. Whichever candidates lead to unvisited forests: none
/// means the next vertex is tried, exactly one is performed, two or more
/// terminate the run as ambiguous. History is kept as a set of canonical
/// keys.
pub fn run_algorithm_r(g: &Graph, f0: &ElimForest) -> Result<RunReport> {
    run_algorithm_r_with_total(g, f0, count_forests(g).ok())
}

/// [`run_algorithm_r`] with the total forest count supplied by the caller
/// (used to classify a stuck run as exhausted); pass `None` to skip the
/// distinction.
pub fn run_algorithm_r_with_total(
    g: &Graph,
    f0: &ElimForest,
    total: Option<BigUint>,
) -> Result<RunReport> {
    if !validate(g, f0) {
        return Err(Error::InvalidForest(
            "starting forest is not an elimination forest of the graph".into(),
        ));
    }
    let mut scratch = KeyScratch::new(g.n());
    let mut cur = f0.clone();
    let mut cur_key = cur.key();
    let mut visited: HashSet<ForestKey> = HashSet::new();
    visited.insert(cur_key.clone());
    let mut keys = vec![cur_key.clone()];
    let mut up_rotations = 0;
    let mut down_rotations = 0;
    let termination = 'run: loop {
        for j in (2..=g.n()).rev() {
            // Candidate rotations encoded at j: the parent edge when the
            // parent is smaller, and one edge per smaller child.
            let mut fresh: Option<(usize, usize, ForestKey, Direction)> = None;
            let p = cur.parent(j);
            let mut edges: Vec<(usize, usize, Direction)> = Vec::new();
            if p != 0 && p < j {
                edges.push((p, j, Direction::Up));
            }
            for c in cur.smaller_children(j) {
                edges.push((j, c, Direction::Down));
            }
            let mut fresh_count = 0;
            for (ei, ej, dir) in edges {
                let key = rotated_key(g, &cur, ei, ej, &cur_key, &mut scratch);
                if !visited.contains(&key) {
                    fresh_count += 1;
                    fresh = Some((ei, ej, key, dir));
                }
            }
            match fresh_count {
                0 => continue,
                1 => {
                    let (ei, ej, key, dir) = fresh.unwrap();
                    cur = rotate_edge_generic(g, &cur, ei, ej)?;
                    debug_assert_eq!(cur.key(), key);
                    match dir {
                        Direction::Up => up_rotations += 1,
                        Direction::Down => down_rotations += 1,
                    }
                    visited.insert(key.clone());
                    keys.push(key.clone());
                    cur_key = key;
                    continue 'run;
                }
                _ => break 'run Termination::Ambiguous,
            }
        }
        break match &total {
            Some(t) => {
                if BigUint::from(keys.len()) == *t {
                    Termination::Exhausted
                } else {
                    Termination::Stuck
                }
            }
            None => Termination::Stuck,
        };
    };
    Ok(RunReport {
        keys,
        termination,
        up_rotations,
        down_rotations,
        total,
    })
}
