//! Detection of special graph shapes and translation of their elimination
//! forests into the classical combinatorial objects they encode:
//!
//! - complete graph → permutations (root-to-leaf read of the chain);
//! - path → binary trees (smaller/larger label = left/right child);
//! - star → partial permutations (broom handle, shifted down by one);
//! - disjoint edges → bitstrings (bit i set iff the larger endpoint is root);
//! - disjoint edges plus a clique → signed permutations.

use crate::error::{Error, Result};
use crate::forest::ElimForest;
use crate::generator::Generator;
use crate::graph::Graph;
use crate::peo::PeoGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    Complete,
    Path,
    Star,
    Matching,
    MatchingPlusClique,
    Generic,
}

impl ShapeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ShapeKind::Complete => "complete",
            ShapeKind::Path => "path",
            ShapeKind::Star => "star",
            ShapeKind::Matching => "matching",
            ShapeKind::MatchingPlusClique => "matching-plus-clique",
            ShapeKind::Generic => "generic",
        }
    }
}

/// A detected shape plus the witness relabeling: `relabel[c]` is the input
/// vertex playing the role of canonical vertex `c`.
#[derive(Clone, Debug)]
pub struct ShapeTag {
    pub kind: ShapeKind,
    pub relabel: Vec<usize>,
}

/// Detects the first matching shape, canonicalizing the labeling (path
/// labeled consecutively, star centered at 1, matching pairs `{i, k+i}`,
/// clique occupying the top labels). Checks run in the order complete, path,
/// star, matching, matching-plus-clique; ties such as a 2-vertex path (also
/// a complete graph) resolve to the earlier shape.
pub fn detect_shape(g: &Graph) -> ShapeTag {
    let n = g.n();
    let identity = |kind| ShapeTag {
        kind,
        relabel: (0..=n).collect(),
    };
    // Complete: C(n,2) edges.
    if g.m() == n * (n - 1) / 2 {
        return identity(ShapeKind::Complete);
    }
    if let Some(order) = path_witness(g) {
        let mut relabel = vec![0; n + 1];
        for (i, v) in order.into_iter().enumerate() {
            relabel[i + 1] = v;
        }
        return ShapeTag {
            kind: ShapeKind::Path,
            relabel,
        };
    }
    if n >= 2 && g.m() == n - 1 {
        if let Some(center) = (1..=n).find(|&v| g.degree(v) == n - 1) {
            let mut relabel = vec![0; n + 1];
            relabel[1] = center;
            let mut next = 2;
            for v in (1..=n).filter(|&v| v != center) {
                relabel[next] = v;
                next += 1;
            }
            return ShapeTag {
                kind: ShapeKind::Star,
                relabel,
            };
        }
    }
    let comps = g.connected_components();
    let is_edge = |c: &Vec<usize>| c.len() == 2;
    if n >= 2 && comps.iter().all(is_edge) {
        let k = comps.len();
        let mut relabel = vec![0; n + 1];
        for (i, c) in comps.iter().enumerate() {
            relabel[i + 1] = c[0];
            relabel[k + i + 1] = c[1];
        }
        return ShapeTag {
            kind: ShapeKind::Matching,
            relabel,
        };
    }
    // Matching plus clique: k single edges and one clique on k >= 3 vertices.
    let edges: Vec<&Vec<usize>> = comps.iter().filter(|c| is_edge(c)).collect();
    let others: Vec<&Vec<usize>> = comps.iter().filter(|c| !is_edge(c)).collect();
    if others.len() == 1 && edges.len() >= 3 && others[0].len() == edges.len() {
        let clique = others[0];
        let k = edges.len();
        let complete = clique
            .iter()
            .enumerate()
            .all(|(i, &u)| clique[i + 1..].iter().all(|&v| g.adjacent(u, v)));
        if complete {
            let mut relabel = vec![0; n + 1];
            for (i, c) in edges.iter().enumerate() {
                relabel[i + 1] = c[0];
                relabel[k + i + 1] = c[1];
            }
            for (i, &v) in clique.iter().enumerate() {
                relabel[2 * k + i + 1] = v;
            }
            return ShapeTag {
                kind: ShapeKind::MatchingPlusClique,
                relabel,
            };
        }
    }
    identity(ShapeKind::Generic)
}

/// Vertices of a path graph in path order (starting from the
/// smallest-labeled endpoint), or None.
fn path_witness(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 2 || g.m() != n - 1 || !g.is_connected() {
        return None;
    }
    let endpoints: Vec<usize> = (1..=n).filter(|&v| g.degree(v) == 1).collect();
    if endpoints.len() != 2 || (1..=n).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = endpoints[0];
    let mut order = vec![start];
    let mut prev = 0;
    let mut cur = start;
    while order.len() < n {
        let &next = g.neighbors(cur).iter().find(|&&u| u != prev)?;
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// The canonically relabeled graph of a detected shape.
pub fn shape_canonical_graph(g: &Graph, tag: &ShapeTag) -> Graph {
    let n = g.n();
    let mut canon_of = vec![0usize; n + 1];
    for c in 1..=n {
        canon_of[tag.relabel[c]] = c;
    }
    let edges = g.edges().iter().map(|&(u, v)| (canon_of[u], canon_of[v]));
    Graph::new(n, edges.collect::<Vec<_>>()).expect("relabeling preserves the graph")
}

fn digits(values: impl IntoIterator<Item = usize>, wide: bool) -> String {
    let vals: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
    if wide {
        vals.join(",")
    } else {
        vals.concat()
    }
}

/// Encodes a forest on the canonical labeling of the given shape as its
/// object string. Numeric components print as concatenated digits while
/// single digits suffice, comma-separated beyond.
pub fn encode(kind: ShapeKind, f: &ElimForest) -> Result<String> {
    let n = f.n();
    match kind {
        ShapeKind::Complete => {
            let chain = chain_from_root(f, n)?;
            Ok(digits(chain, n > 9))
        }
        ShapeKind::Path => {
            let root = single_root(f)?;
            let mut out = String::new();
            binary_tree_string(f, root, &mut out)?;
            Ok(out)
        }
        ShapeKind::Star => {
            let root = single_root(f)?;
            let mut handle = Vec::new();
            let mut cur = root;
            while cur != 1 {
                handle.push(cur - 1);
                let kids = f.children(cur);
                if kids.len() != 1 {
                    return Err(Error::UnsupportedShape(
                        "broom handle vertex with several children".into(),
                    ));
                }
                cur = kids[0];
            }
            Ok(digits(handle, n - 1 > 9))
        }
        ShapeKind::Matching => {
            if n % 2 != 0 {
                return Err(Error::UnsupportedShape("odd matching".into()));
            }
            let k = n / 2;
            Ok((1..=k)
                .map(|i| if f.is_root(k + i) { '1' } else { '0' })
                .collect())
        }
        ShapeKind::MatchingPlusClique => {
            if n % 3 != 0 {
                return Err(Error::UnsupportedShape("malformed shape".into()));
            }
            let k = n / 3;
            let root = (2 * k + 1..=3 * k)
                .find(|&v| f.is_root(v))
                .ok_or_else(|| Error::UnsupportedShape("clique tree has no root".into()))?;
            let mut out = Vec::new();
            let mut cur = root;
            loop {
                let entry = cur - 2 * k;
                let sign = if f.is_root(entry) { '+' } else { '-' };
                out.push(format!("{sign}{entry}"));
                match f.children(cur) {
                    [] => break,
                    [child] => cur = *child,
                    _ => {
                        return Err(Error::UnsupportedShape(
                            "clique tree is not a chain".into(),
                        ))
                    }
                }
            }
            Ok(out.concat())
        }
        ShapeKind::Generic => Err(Error::UnsupportedShape(
            "no object encoding for generic graphs".into(),
        )),
    }
}

fn single_root(f: &ElimForest) -> Result<usize> {
    match f.roots() {
        [r] => Ok(*r),
        _ => Err(Error::UnsupportedShape("expected a single tree".into())),
    }
}

fn chain_from_root(f: &ElimForest, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(n);
    let mut cur = single_root(f)?;
    loop {
        out.push(cur);
        match f.children(cur) {
            [] => break,
            [child] => cur = *child,
            _ => return Err(Error::UnsupportedShape("expected a chain".into())),
        }
    }
    if out.len() != n {
        return Err(Error::UnsupportedShape("chain does not cover all vertices".into()));
    }
    Ok(out)
}

/// Nested-parentheses form with explicit empty subtrees: `()` is empty, a
/// node prints as `(LR)`. Children split by label: smaller left, larger
/// right.
fn binary_tree_string(f: &ElimForest, v: usize, out: &mut String) -> Result<()> {
    out.push('(');
    let kids = f.children(v);
    if kids.len() > 2 {
        return Err(Error::UnsupportedShape("vertex with three children".into()));
    }
    let left = kids.iter().copied().filter(|&c| c < v).collect::<Vec<_>>();
    let right = kids.iter().copied().filter(|&c| c > v).collect::<Vec<_>>();
    if left.len() > 1 || right.len() > 1 {
        return Err(Error::UnsupportedShape("ambiguous binary split".into()));
    }
    match left.first() {
        Some(&c) => binary_tree_string(f, c, out)?,
        None => out.push_str("()"),
    }
    match right.first() {
        Some(&c) => binary_tree_string(f, c, out)?,
        None => out.push_str("()"),
    }
    out.push(')');
    Ok(())
}

/// The full object-string Gray code of a shaped graph: generation runs on
/// the canonical labeling, and consecutive strings differ by the shape's
/// local move.
pub fn gray_code(g: &Graph) -> Result<Vec<String>> {
    let tag = detect_shape(g);
    if tag.kind == ShapeKind::Generic {
        return Err(Error::UnsupportedShape(
            "graph matches no encodable shape".into(),
        ));
    }
    let canonical = shape_canonical_graph(g, &tag);
    let pg = PeoGraph::new(canonical)?;
    let mut gen = Generator::new(&pg);
    let mut out = Vec::new();
    while let Some(f) = gen.next_forest() {
        out.push(encode(tag.kind, f)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::forest::ElimForest;

    #[test]
    fn shape_detection() {
        assert_eq!(detect_shape(&families::complete(5)).kind, ShapeKind::Complete);
        assert_eq!(detect_shape(&families::star(4)).kind, ShapeKind::Star);
        assert_eq!(detect_shape(&families::path(4)).kind, ShapeKind::Path);
        assert_eq!(detect_shape(&families::matching(2)).kind, ShapeKind::Matching);
        assert_eq!(
            detect_shape(&families::matching_plus_clique(3)).kind,
            ShapeKind::MatchingPlusClique
        );
        assert_eq!(detect_shape(&families::cycle(4)).kind, ShapeKind::Generic);
        // Small overlaps resolve to the first matching shape.
        assert_eq!(detect_shape(&families::complete(2)).kind, ShapeKind::Complete);
        assert_eq!(detect_shape(&families::path(3)).kind, ShapeKind::Path);
        // Three disjoint edges are a matching, not an edge pair plus a
        // 2-clique.
        assert_eq!(detect_shape(&families::matching(3)).kind, ShapeKind::Matching);
    }

    #[test]
    fn path_witness_relabels_scrambled_paths() {
        // Path 2 - 4 - 1 - 3.
        let g = Graph::new(4, [(2, 4), (1, 4), (1, 3)]).unwrap();
        let tag = detect_shape(&g);
        assert_eq!(tag.kind, ShapeKind::Path);
        assert_eq!(tag.relabel[1..], [2, 4, 1, 3]);
        let canon = shape_canonical_graph(&g, &tag);
        assert_eq!(canon.edges(), families::path(4).edges());
    }

    #[test]
    fn star_broom_encodes_as_partial_permutation() {
        let f = ElimForest::from_ordering(&families::star(9), &[3, 6, 7, 1, 2, 4, 5, 8, 9])
            .unwrap();
        assert_eq!(encode(ShapeKind::Star, &f).unwrap(), "256");
    }

    #[test]
    fn chain_encodes_as_permutation() {
        let f = ElimForest::from_ordering(&families::complete(3), &[2, 1, 3]).unwrap();
        assert_eq!(encode(ShapeKind::Complete, &f).unwrap(), "213");
    }

    #[test]
    fn matching_forest_encodes_as_bitstring() {
        let g = families::matching(2);
        let f = ElimForest::from_ordering(&g, &[1, 4, 2, 3]).unwrap();
        // Roots 1 and 4: bit 1 is 0 (vertex 1 is root), bit 2 is 1 (vertex
        // 4 = 2+2 is root).
        assert_eq!(encode(ShapeKind::Matching, &f).unwrap(), "01");
    }

    #[test]
    fn binary_tree_strings_are_canonical() {
        let g = families::path(3);
        // Chain 1 -> 2 -> 3: right spine; leaves are (()()).
        let chain = ElimForest::from_ordering(&g, &[1, 2, 3]).unwrap();
        assert_eq!(encode(ShapeKind::Path, &chain).unwrap(), "(()(()(()())))");
        let balanced = ElimForest::from_ordering(&g, &[2, 1, 3]).unwrap();
        assert_eq!(encode(ShapeKind::Path, &balanced).unwrap(), "((()())(()()))");
    }

    #[test]
    fn signed_permutation_encoding() {
        let g = families::matching_plus_clique(3);
        // Remove clique vertices 8, 7, 9 in that order; pair roots 1, 5, 6.
        let f =
            ElimForest::from_ordering(&g, &[8, 7, 9, 1, 5, 6, 2, 3, 4]).unwrap();
        let s = encode(ShapeKind::MatchingPlusClique, &f).unwrap();
        // Chain 8 -> 7 -> 9 reads entries 2, 1, 3; signs come from the pair
        // roots: 5 root means -2, 1 root means +1, 6 root means -3.
        assert_eq!(s, "-2+1-3");
    }

    #[test]
    fn gray_code_rejects_generic() {
        assert!(gray_code(&families::cycle(4)).is_err());
    }

    #[test]
    fn star4_gray_code_is_the_known_listing() {
        let code = gray_code(&families::star(4)).unwrap();
        let expected = vec![
            "", "3", "32", "23", "2", "21", "213", "231", "321", "312", "132", "123", "12",
            "1", "13", "31",
        ];
        assert_eq!(code, expected);
    }

    #[test]
    fn bitstring_gray_code_is_reflected() {
        let code = gray_code(&families::matching(2)).unwrap();
        assert_eq!(code, vec!["00", "01", "11", "10"]);
    }

    use crate::graph::Graph;
}
