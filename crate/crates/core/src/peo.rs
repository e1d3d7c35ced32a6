//! Graphs certified to be labeled by a perfect elimination ordering, together
//! with the precomputed rotation metadata used by the generators.

use crate::error::{Error, Result};
use crate::graph::{permutation_positions, sigma_star_peo_positions, Graph};

/// A graph whose labeling `1..=n` is a certified perfect elimination
/// ordering: every vertex's smaller neighbors form a clique.
///
/// Construction precomputes, per vertex, whether it is rotatable (has a
/// neighbor smaller than itself), the next smaller rotatable vertex `alpha`,
/// the largest rotatable vertex `rho`, the smaller-neighbor lists, and the
/// star number `sigma`. The original labels of a relabeled input are retained
/// for output translation.
#[derive(Clone, Debug)]
pub struct PeoGraph {
    graph: Graph,
    /// `orig[v]` is the input label of the vertex now called `v`; identity
    /// when the input was already in perfect elimination order.
    orig: Vec<usize>,
    rotatable: Vec<bool>,
    /// For rotatable `j`: the next smaller rotatable vertex, or 1 if none.
    alpha: Vec<usize>,
    /// Largest rotatable vertex, or 0 if there is none.
    rho: usize,
    sigma_star: usize,
    smaller_neighbors: Vec<Vec<usize>>,
}

impl PeoGraph {
    /// Certifies that the identity labeling of `g` is a perfect elimination
    /// ordering.
    pub fn new(g: Graph) -> Result<PeoGraph> {
        let order: Vec<usize> = (1..=g.n()).collect();
        PeoGraph::relabel(g, &order)
    }

    /// Relabels `g` so that `order` becomes the identity; requires that
    /// `order` is a perfect elimination ordering of `g`.
    pub fn relabel(g: Graph, order: &[usize]) -> Result<PeoGraph> {
        if !g.is_peo(order)? {
            return Err(Error::NotAPeo);
        }
        let n = g.n();
        let pos = permutation_positions(order, n)?;
        let relabeled = if order.iter().enumerate().all(|(i, &v)| v == i + 1) {
            g
        } else {
            let edges = g.edges().iter().map(|&(u, v)| (pos[u] + 1, pos[v] + 1));
            Graph::new(n, edges.collect::<Vec<_>>()).unwrap()
        };

        let mut orig = vec![0usize; n + 1];
        for (i, &v) in order.iter().enumerate() {
            orig[i + 1] = v;
        }

        let mut smaller_neighbors = vec![Vec::new(); n + 1];
        for v in 1..=n {
            smaller_neighbors[v] = relabeled
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| u < v)
                .collect();
        }
        let rotatable: Vec<bool> = (0..=n).map(|v| v >= 1 && !smaller_neighbors[v].is_empty()).collect();
        let mut alpha = vec![0usize; n + 1];
        let mut last = 1;
        for j in 2..=n {
            if rotatable[j] {
                alpha[j] = last;
                last = j;
            }
        }
        let rho = (1..=n).rev().find(|&j| rotatable[j]).unwrap_or(0);

        let identity: Vec<usize> = (0..=n).map(|i| i.wrapping_sub(1)).collect();
        let sigma_star = sigma_star_peo_positions(&relabeled, &identity);

        Ok(PeoGraph {
            graph: relabeled,
            orig,
            rotatable,
            alpha,
            rho,
            sigma_star,
            smaller_neighbors,
        })
    }

    /// Recognizes a chordal graph and relabels it along a lex-BFS perfect
    /// elimination ordering.
    pub fn from_chordal(g: Graph) -> Result<PeoGraph> {
        let order = g.chordal_peo().ok_or(Error::NotChordal)?;
        PeoGraph::relabel(g, &order)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.graph.adjacent(u, v)
    }

    /// Neighbors of `v` smaller than `v`, ascending.
    pub fn smaller_neighbors(&self, v: usize) -> &[usize] {
        &self.smaller_neighbors[v]
    }

    pub fn is_rotatable(&self, v: usize) -> bool {
        self.rotatable[v]
    }

    pub fn alpha(&self, v: usize) -> usize {
        self.alpha[v]
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    /// Number of edges of the largest induced star; bounds the child count of
    /// any vertex in any elimination forest and the generator's amortized
    /// per-step cost.
    pub fn sigma_star(&self) -> usize {
        self.sigma_star
    }

    /// The input label of the vertex now called `v` (0 maps to 0).
    pub fn original_label(&self, v: usize) -> usize {
        if v == 0 {
            0
        } else {
            self.orig[v]
        }
    }

    /// Translates a parent array over the internal labels into a parent array
    /// indexed by and referring to the original labels.
    pub fn translate_parents(&self, parents: &[usize]) -> Vec<usize> {
        let n = self.n();
        debug_assert_eq!(parents.len(), n);
        let mut out = vec![0usize; n];
        for v in 1..=n {
            out[self.orig[v] - 1] = self.original_label(parents[v - 1]);
        }
        out
    }

    /// A permutation over internal labels, rewritten in original labels.
    pub fn translate_perm(&self, perm: &[usize]) -> Vec<usize> {
        perm.iter().map(|&v| self.original_label(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn connected_graph_rotation_metadata() {
        let pg = PeoGraph::new(families::complete(5)).unwrap();
        assert_eq!(pg.rho(), 5);
        for j in 2..=5 {
            assert!(pg.is_rotatable(j));
            assert_eq!(pg.alpha(j), j - 1);
        }
        assert!(!pg.is_rotatable(1));
        assert_eq!(pg.sigma_star(), 1);
    }

    #[test]
    fn star_sigma() {
        let pg = PeoGraph::new(families::star(4)).unwrap();
        assert_eq!(pg.sigma_star(), 3);
    }

    #[test]
    fn disconnected_rotation_metadata() {
        // Edges {1,3} and {2,4}: the component minima 1 and 2 never rotate.
        let pg = PeoGraph::new(families::matching(2)).unwrap();
        assert_eq!(pg.rho(), 4);
        assert!(pg.is_rotatable(3) && pg.is_rotatable(4));
        assert!(!pg.is_rotatable(1) && !pg.is_rotatable(2));
        assert_eq!(pg.alpha(4), 3);
        assert_eq!(pg.alpha(3), 1);
    }

    #[test]
    fn rotatable_matches_component_minimum() {
        // On certified graphs, "has a smaller neighbor" coincides with "not
        // the smallest vertex of its component".
        for g in [
            families::matching(3),
            families::star(5),
            families::path(6),
            families::random_ktree(9, 2, 3),
        ] {
            let pg = PeoGraph::new(g).unwrap();
            for comp in pg.graph().connected_components() {
                let min = comp[0];
                for &v in &comp {
                    assert_eq!(pg.is_rotatable(v), v != min);
                }
            }
        }
    }

    #[test]
    fn relabeling_retains_original_labels() {
        let g = crate::graph::Graph::new(3, [(1, 3), (2, 3)]).unwrap();
        let pg = PeoGraph::from_chordal(g).unwrap();
        assert!(pg.graph().identity_is_peo());
        // The relabeled graph is the path with the old middle vertex 3 in the
        // middle again.
        let labels: Vec<usize> = (1..=3).map(|v| pg.original_label(v)).collect();
        assert_eq!(labels.len(), 3);
        assert_ne!(pg.original_label(3), 3);
    }

    #[test]
    fn relabel_rejects_non_peo() {
        let c4 = families::cycle(4);
        assert!(matches!(
            PeoGraph::relabel(c4, &[1, 2, 3, 4]),
            Err(Error::NotAPeo)
        ));
    }

    #[test]
    fn empty_graph_has_no_rotatable_vertex() {
        let pg = PeoGraph::new(Graph::new(3, []).unwrap()).unwrap();
        assert_eq!(pg.rho(), 0);
    }
}
