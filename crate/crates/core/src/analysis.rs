//! Exact counting of elimination forests and cyclicity prediction: whether
//! the generated rotation Gray code closes into a cycle.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::peo::PeoGraph;

/// Memoized counter over induced-subgraph bitmasks; usable for any graph
/// with at most 62 vertices.
pub struct ForestCounter {
    adj_masks: Vec<u64>,
    memo: HashMap<u64, BigUint>,
}

impl ForestCounter {
    pub fn new(g: &Graph) -> Result<ForestCounter> {
        if g.n() > 62 {
            return Err(Error::SizeGuard(format!(
                "counting is limited to 62 vertices, got {}",
                g.n()
            )));
        }
        let mut adj_masks = vec![0u64; g.n() + 1];
        for &(u, v) in g.edges() {
            adj_masks[u] |= 1 << (v - 1);
            adj_masks[v] |= 1 << (u - 1);
        }
        Ok(ForestCounter {
            adj_masks,
            memo: HashMap::new(),
        })
    }

    pub fn full_mask(&self) -> u64 {
        let n = self.adj_masks.len() - 1;
        if n == 0 {
            0
        } else {
            (1u64 << n) - 1
        }
    }

    /// Number of elimination forests of the subgraph induced by `mask`:
    /// a product over connected components, and for a connected subgraph the
    /// sum over root choices.
    pub fn count(&mut self, mask: u64) -> BigUint {
        if mask == 0 {
            return BigUint::from(1u32);
        }
        if let Some(c) = self.memo.get(&mask) {
            return c.clone();
        }
        let comps = self.components(mask);
        let result = if comps.len() > 1 {
            comps
                .into_iter()
                .map(|c| self.count(c))
                .product::<BigUint>()
        } else if mask.count_ones() == 1 {
            BigUint::from(1u32)
        } else {
            let mut sum = BigUint::from(0u32);
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                sum += self.count(mask ^ bit);
            }
            sum
        };
        self.memo.insert(mask, result.clone());
        result
    }

    fn components(&self, mask: u64) -> Vec<u64> {
        let mut comps = Vec::new();
        let mut left = mask;
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            loop {
                let mut grown = comp;
                let mut scan = comp;
                while scan != 0 {
                    let bit = scan & scan.wrapping_neg();
                    scan ^= bit;
                    let v = bit.trailing_zeros() as usize + 1;
                    grown |= self.adj_masks[v] & mask;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            comps.push(comp);
            left &= !comp;
        }
        comps
    }
}

/// The number of elimination forests of `g`, exactly.
pub fn count_forests(g: &Graph) -> Result<BigUint> {
    let mut counter = ForestCounter::new(g)?;
    let mask = counter.full_mask();
    Ok(counter.count(mask))
}

/// Parities of the forest counts of the prefix graphs on `1..=ν` for
/// `ν = 2, ..., n-1`; entry `k` corresponds to `ν = k + 2`. The generated
/// Gray code is cyclic exactly when all of them are even.
pub fn prefix_parities(pg: &PeoGraph) -> Result<Vec<bool>> {
    let n = pg.n();
    let mut counter = ForestCounter::new(pg.graph())?;
    let mut out = Vec::new();
    for nu in 2..n {
        let mask = (1u64 << nu) - 1;
        out.push((counter.count(mask) % 2u32) == BigUint::from(0u32));
    }
    Ok(out)
}

/// Structural explanations attached to a cyclicity verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// 2-connected graphs always give cyclic codes.
    TwoConnected,
    /// Trees on at least four vertices are never cyclic.
    TreeAcyclic,
    /// Vertices 1 and 2 form an isolated edge.
    IsolatedEdgeFirst,
    /// Some prefix `1..=h` induces a 2-connected subgraph whose removal of a
    /// cut vertex leaves it 2-connected or a single edge, glued onto the
    /// rest at that vertex.
    AppendixPrefix,
    /// Vertex n is simplicial and the labeling below it matches another rule.
    SimplicialLast,
    /// Fewer than two forests; degenerate, never cyclic.
    SingleForest,
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::TwoConnected => "two-connected",
            Rule::TreeAcyclic => "tree-acyclic",
            Rule::IsolatedEdgeFirst => "isolated-edge-first",
            Rule::AppendixPrefix => "appendix-prefix",
            Rule::SimplicialLast => "simplicial-last",
            Rule::SingleForest => "single-forest",
        }
    }
}

/// Cyclicity verdict: the parity-based prediction (definitive), the parity
/// vector it is based on, and the structural rules that apply (reported as
/// explanations, not used for the decision).
#[derive(Clone, Debug)]
pub struct CyclicityVerdict {
    pub cyclic: bool,
    /// Parity of the prefix counts for ν = 2..n-1 (true = even).
    pub parities_even: Vec<bool>,
    pub rules: Vec<Rule>,
    pub count: BigUint,
}

/// Predicts whether the first and last generated forests differ in a single
/// rotation.
///
/// The decision walks the prefix levels ν = 2..n. Levels whose vertex is
/// isolated in its prefix graph append the new vertex at a fixed position
/// and are transparent. At a rotatable level ν, the new vertex sweeps once
/// across each forest of the prefix below: if that prefix has a single
/// forest the ends of the sweep meet (first reset to cyclic), if it has an
/// odd count of at least 3 the ends land on different forests with the new
/// vertex on opposite sides (never cyclic from here on), and an even count
/// passes the relation through. For connected graphs this reduces to
/// "every prefix count for ν = 2..n-1 is even".
pub fn predict_cyclic(pg: &PeoGraph) -> Result<CyclicityVerdict> {
    let n = pg.n();
    let parities_even = prefix_parities(pg)?;
    let mut counter = ForestCounter::new(pg.graph())?;
    let count = counter.count(counter.full_mask());
    let mut cyclic = false;
    for nu in 2..=n {
        if !pg.is_rotatable(nu) {
            continue;
        }
        let below = counter.count((1u64 << (nu - 1)) - 1);
        if below == BigUint::from(1u32) {
            cyclic = true;
        } else if (below % 2u32) != BigUint::from(0u32) {
            cyclic = false;
        }
    }
    let mut rules = Vec::new();
    if count <= BigUint::from(1u32) {
        rules.push(Rule::SingleForest);
    }
    let g = pg.graph();
    if g.is_2_connected() {
        rules.push(Rule::TwoConnected);
    }
    if g.is_tree() && g.n() >= 4 {
        rules.push(Rule::TreeAcyclic);
    }
    if has_isolated_edge_first(pg) {
        rules.push(Rule::IsolatedEdgeFirst);
    }
    if g.n() <= 12 {
        if appendix_prefix_len(pg).is_some() {
            rules.push(Rule::AppendixPrefix);
        }
        if simplicial_last_applies(pg) {
            rules.push(Rule::SimplicialLast);
        }
    }
    Ok(CyclicityVerdict {
        cyclic,
        parities_even,
        rules,
        count,
    })
}

fn has_isolated_edge_first(pg: &PeoGraph) -> bool {
    let g = pg.graph();
    g.n() >= 2
        && g.adjacent(1, 2)
        && g.degree(1) == 1
        && g.degree(2) == 1
}

/// Checks whether the vertices `1..=h` form, for some `h`, a 2-connected
/// prefix that meets the rest of the graph in exactly one vertex `x <= h`
/// and stays 2-connected (or a single edge) after removing `x`.
fn appendix_prefix_len(pg: &PeoGraph) -> Option<usize> {
    let g = pg.graph();
    let n = g.n();
    for h in 3..n {
        let prefix: Vec<usize> = (1..=h).collect();
        let hg = g.induced(&prefix);
        if !hg.is_2_connected() {
            continue;
        }
        // Vertices of the prefix with neighbors outside it.
        let cut: Vec<usize> = (1..=h)
            .filter(|&v| g.neighbors(v).iter().any(|&u| u > h))
            .collect();
        if cut.len() != 1 {
            continue;
        }
        let x = cut[0];
        let rest: Vec<usize> = (1..=h).filter(|&v| v != x).collect();
        let hx = g.induced(&rest);
        if hx.is_2_connected() || (hx.n() == 2 && hx.m() == 1) {
            return Some(h);
        }
    }
    None
}

fn simplicial_last_applies(pg: &PeoGraph) -> bool {
    let g = pg.graph();
    let n = g.n();
    if n < 2 {
        return false;
    }
    // Vertex n is simplicial by certification. Check the graph below it.
    let below: Vec<usize> = (1..=n - 1).collect();
    let reduced = g.induced(&below);
    if reduced.is_2_connected() {
        return true;
    }
    match PeoGraph::new(reduced) {
        Ok(rpg) => has_isolated_edge_first(&rpg) || appendix_prefix_len(&rpg).is_some(),
        Err(_) => false,
    }
}

/// Searches for a perfect elimination ordering of a chordal graph that makes
/// the generated code cyclic, trying in turn: 2-connectedness (any ordering
/// works), an isolated edge labeled first, a simplicial vertex placed last
/// over a reduced base case, and a glued 2-connected appendix labeled first
/// (subset search, limited to `appendix_limit` vertices, default 12).
///
/// Returns an ordering whose verdict is cyclic, or `None` when no rule
/// applies. Errors when the graph is not chordal.
pub fn choose_cyclic_peo(g: &Graph) -> Result<Option<Vec<usize>>> {
    choose_cyclic_peo_with_limit(g, 12)
}

pub fn choose_cyclic_peo_with_limit(
    g: &Graph,
    appendix_limit: usize,
) -> Result<Option<Vec<usize>>> {
    if !g.is_chordal() {
        return Err(Error::NotChordal);
    }
    let candidates = cyclic_peo_candidates(g, appendix_limit, true);
    for order in candidates {
        let Ok(pg) = PeoGraph::relabel(g.clone(), &order) else {
            continue;
        };
        if predict_cyclic(&pg)?.cyclic {
            return Ok(Some(order));
        }
    }
    Ok(None)
}

fn cyclic_peo_candidates(g: &Graph, appendix_limit: usize, recurse: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = g.n();
    if g.is_2_connected() {
        if let Some(order) = g.chordal_peo() {
            out.push(order);
        }
    }
    // Isolated edge labeled 1, 2 plus any ordering of the rest.
    let comps = g.connected_components();
    if let Some(edge_comp) = comps
        .iter()
        .find(|c| c.len() == 2 && g.adjacent(c[0], c[1]))
    {
        let rest: Vec<usize> = (1..=n).filter(|v| !edge_comp.contains(v)).collect();
        let rest_graph = g.induced(&rest);
        if let Some(rest_order) = rest_graph.chordal_peo() {
            let mut order = edge_comp.clone();
            order.extend(rest_order.into_iter().map(|v| rest[v - 1]));
            out.push(order);
        }
    }
    // Simplicial vertex placed last over a base case.
    if recurse && n >= 3 {
        for y in 1..=n {
            let nbrs = g.neighbors(y);
            let clique = nbrs
                .iter()
                .enumerate()
                .all(|(i, &u)| nbrs[i + 1..].iter().all(|&v| g.adjacent(u, v)));
            if !clique {
                continue;
            }
            let rest: Vec<usize> = (1..=n).filter(|&v| v != y).collect();
            let reduced = g.induced(&rest);
            for base in cyclic_peo_candidates(&reduced, appendix_limit, false) {
                let mut order: Vec<usize> = base.into_iter().map(|v| rest[v - 1]).collect();
                order.push(y);
                out.push(order);
            }
        }
    }
    // Appendix: a 2-connected subgraph H glued onto the rest at one vertex,
    // with H minus that vertex 2-connected or a single edge; the ordering
    // starts with the vertices of H.
    if n <= appendix_limit {
        if let Some((h_verts, x)) = find_appendix(g) {
            if let Some(order) = appendix_order(g, &h_verts, x) {
                out.push(order);
            }
        }
    }
    out
}

/// Brute-force search for an appendix: enumerates connected vertex subsets S
/// (smallest first) such that the induced subgraph is 2-connected, exactly
/// one vertex x of S has neighbors outside, and S minus x is 2-connected or
/// a single edge, with at least two vertices outside S minus x.
fn find_appendix(g: &Graph) -> Option<(Vec<usize>, usize)> {
    let n = g.n();
    if n > 62 {
        return None;
    }
    let masks: Vec<u64> = {
        let mut m = vec![0u64; n + 1];
        for &(u, v) in g.edges() {
            m[u] |= 1 << (v - 1);
            m[v] |= 1 << (u - 1);
        }
        m
    };
    let mut candidates: Vec<u64> = (0u64..1 << n).collect();
    candidates.sort_by_key(|m| m.count_ones());
    for mask in candidates {
        if (mask.count_ones() as usize) < 3 || mask.count_ones() as usize >= n {
            continue;
        }
        let verts: Vec<usize> = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        // Exactly one vertex with outside neighbors.
        let cut: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|&v| masks[v] & !mask != 0)
            .collect();
        if cut.len() != 1 {
            continue;
        }
        let x = cut[0];
        if (n - verts.len()) + 1 < 2 {
            continue;
        }
        let hg = g.induced(&verts);
        if !hg.is_2_connected() {
            continue;
        }
        let rest: Vec<usize> = verts.iter().copied().filter(|&v| v != x).collect();
        let hx = g.induced(&rest);
        if hx.is_2_connected() || (hx.n() == 2 && hx.m() == 1) {
            return Some((verts, x));
        }
    }
    None
}

fn appendix_order(g: &Graph, h_verts: &[usize], x: usize) -> Option<Vec<usize>> {
    let hg = g.induced(h_verts);
    let h_order = hg.chordal_peo()?;
    let mut order: Vec<usize> = h_order.into_iter().map(|v| h_verts[v - 1]).collect();
    // The rest, including x, ordered by a perfect elimination ordering that
    // starts with x; then x is dropped (it already appears within H).
    let rest: Vec<usize> = (1..=g.n())
        .filter(|v| !h_verts.contains(v) || *v == x)
        .collect();
    let rg = g.induced(&rest);
    let rx = rest.iter().position(|&v| v == x)? + 1;
    let r_order = peo_starting_with(&rg, rx)?;
    debug_assert_eq!(r_order[0], rx);
    order.extend(r_order.into_iter().skip(1).map(|v| rest[v - 1]));
    Some(order)
}

/// A perfect elimination ordering of a chordal graph that starts with `x`:
/// repeatedly strip a simplicial vertex different from `x` and place it
/// last. Every chordal graph with at least two vertices has two simplicial
/// vertices, so the strip always succeeds.
pub fn peo_starting_with(g: &Graph, x: usize) -> Option<Vec<usize>> {
    if !g.is_chordal() {
        return None;
    }
    let n = g.n();
    let mut alive: Vec<usize> = (1..=n).collect();
    let mut suffix = Vec::new();
    while alive.len() > 1 {
        let h = g.induced(&alive);
        let pick = alive.iter().copied().find(|&v| {
            if v == x {
                return false;
            }
            let hv = alive.iter().position(|&u| u == v).unwrap() + 1;
            let nbrs = h.neighbors(hv);
            nbrs.iter()
                .enumerate()
                .all(|(i, &a)| nbrs[i + 1..].iter().all(|&b| h.adjacent(a, b)))
        })?;
        suffix.push(pick);
        alive.retain(|&v| v != pick);
    }
    debug_assert_eq!(alive, vec![x]);
    let mut order = vec![x];
    order.extend(suffix.into_iter().rev());
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn path3_has_five_forests() {
        assert_eq!(count_forests(&families::path(3)).unwrap(), big(5));
    }

    #[test]
    fn cycle4_has_twenty_forests() {
        assert_eq!(count_forests(&families::cycle(4)).unwrap(), big(20));
    }

    #[test]
    fn clique_counts_are_factorials() {
        let mut fact = 1u64;
        for n in 1..=8 {
            fact *= n as u64;
            assert_eq!(count_forests(&families::complete(n)).unwrap(), big(fact));
        }
    }

    #[test]
    fn star_counts_match_partial_permutation_formula() {
        // e(Star_n) = sum over k of (n-1)!/k!.
        for n in 1..=8usize {
            let mut expect = big(0);
            let fact = |m: usize| (1..=m as u64).product::<u64>();
            for k in 0..=n - 1 {
                expect += big(fact(n - 1) / fact(k));
            }
            assert_eq!(count_forests(&families::star(n)).unwrap(), expect);
        }
        assert_eq!(count_forests(&families::star(4)).unwrap(), big(16));
    }

    #[test]
    fn disconnected_counts_multiply() {
        assert_eq!(count_forests(&families::matching(3)).unwrap(), big(8));
        let g = Graph::new(5, [(1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(count_forests(&g).unwrap(), big(2 * 6));
    }

    #[test]
    fn prefix_parities_examples() {
        // Clique prefixes have ν! forests, all even for ν >= 2.
        let k5 = PeoGraph::new(families::complete(5)).unwrap();
        assert_eq!(prefix_parities(&k5).unwrap(), vec![true, true, true]);

        // Path prefixes: e = 2 (even), then e = 5 (odd).
        let p4 = PeoGraph::new(families::path(4)).unwrap();
        assert_eq!(prefix_parities(&p4).unwrap(), vec![true, false]);

        // Matching with edges {1,3},{2,4}: the prefix on {1,2} is empty, a
        // single forest (odd).
        let m2 = PeoGraph::new(families::matching(2)).unwrap();
        assert_eq!(prefix_parities(&m2).unwrap()[0], false);
    }

    #[test]
    fn verdict_rules_and_predictions() {
        // K4 minus an edge is 2-connected: cyclic.
        let g = Graph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        let pg = PeoGraph::new(g).unwrap();
        let v = predict_cyclic(&pg).unwrap();
        assert!(v.cyclic);
        assert!(v.rules.contains(&Rule::TwoConnected));

        for n in 4..=7 {
            let pg = PeoGraph::new(families::path(n)).unwrap();
            let v = predict_cyclic(&pg).unwrap();
            assert!(!v.cyclic, "path n={n}");
            assert!(v.rules.contains(&Rule::TreeAcyclic));
        }

        // The four standard shapes: clique and matching cyclic, path and
        // star not.
        let verdicts: Vec<bool> = [
            families::complete(4),
            families::path(4),
            families::star(4),
            families::matching(2),
        ]
        .into_iter()
        .map(|g| predict_cyclic(&PeoGraph::new(g).unwrap()).unwrap().cyclic)
        .collect();
        assert_eq!(verdicts, vec![true, false, false, true]);
    }

    #[test]
    fn choose_cyclic_peo_on_triangle_with_pendant() {
        // Triangle with a pendant path: the triangle is an appendix.
        let g = Graph::new(5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        let order = choose_cyclic_peo(&g).unwrap().expect("ordering found");
        let pg = PeoGraph::relabel(g, &order).unwrap();
        assert!(predict_cyclic(&pg).unwrap().cyclic);
    }

    #[test]
    fn choose_cyclic_peo_with_isolated_edge() {
        // An isolated edge next to a path.
        let g = Graph::new(5, [(1, 2), (3, 4), (4, 5)]).unwrap();
        let order = choose_cyclic_peo(&g).unwrap().expect("ordering found");
        let pg = PeoGraph::relabel(g, &order).unwrap();
        let v = predict_cyclic(&pg).unwrap();
        assert!(v.cyclic);
        assert!(v.rules.contains(&Rule::IsolatedEdgeFirst));
    }

    #[test]
    fn choose_cyclic_peo_fails_on_trees() {
        for n in 4..=7 {
            assert_eq!(choose_cyclic_peo(&families::path(n)).unwrap(), None);
            assert_eq!(choose_cyclic_peo(&families::star(n)).unwrap(), None);
        }
        assert!(choose_cyclic_peo(&families::cycle(4)).is_err());
    }

    #[test]
    fn peo_starting_with_every_vertex() {
        let g = families::random_ktree(8, 2, 4);
        for x in 1..=8 {
            let order = peo_starting_with(&g, x).unwrap();
            assert_eq!(order[0], x);
            assert!(g.is_peo(&order).unwrap());
        }
    }

    #[test]
    fn size_guard() {
        let g = Graph::new(70, [(1, 2)]).unwrap();
        assert!(matches!(count_forests(&g), Err(Error::SizeGuard(_))));
    }

    use crate::graph::Graph;
}
