//! Randomized invariants over seeded chordal inputs.

use proptest::prelude::*;

use elimtrees::families;
use elimtrees::forest::{to_tubing, validate, validate_tubing, ElimForest};
use elimtrees::insertion::{delete_max, insert_at, insertion_path, sigma_encode};
use elimtrees::peo::PeoGraph;
use elimtrees::rotation::rotate_edge_generic;
use elimtrees::Graph;

fn arb_ktree() -> impl Strategy<Value = Graph> {
    (2usize..=8, 1usize..=3, any::<u64>()).prop_map(|(n, k, seed)| {
        let k = k.min(n - 1);
        families::random_ktree(n, k, seed)
    })
}

fn arb_ordering(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representative_permutation_round_trips(g in arb_ktree(), seed in any::<u64>()) {
        let order = shuffled(g.n(), seed);
        let f = ElimForest::from_ordering(&g, &order).unwrap();
        let sigma = sigma_encode(&f).unwrap();
        prop_assert!(f.is_linear_extension(&sigma));
        prop_assert_eq!(ElimForest::from_ordering(&g, &sigma).unwrap(), f);
    }

    #[test]
    fn rotations_are_involutions(g in arb_ktree(), seed in any::<u64>()) {
        let order = shuffled(g.n(), seed);
        let f = ElimForest::from_ordering(&g, &order).unwrap();
        for j in 1..=g.n() {
            let p = f.parent(j);
            if p == 0 {
                continue;
            }
            let r = rotate_edge_generic(&g, &f, p, j).unwrap();
            prop_assert!(validate(&g, &r));
            prop_assert_eq!(rotate_edge_generic(&g, &r, j, p).unwrap(), f.clone());
        }
    }

    #[test]
    fn deletion_inverts_every_insertion(g in arb_ktree(), seed in any::<u64>()) {
        let pg = PeoGraph::new(g).unwrap();
        let below: Vec<usize> = (1..pg.n()).collect();
        let sub = pg.graph().induced(&below);
        let order = shuffled(sub.n(), seed);
        let f = ElimForest::from_ordering(&sub, &order).unwrap();
        let lambda = insertion_path(&pg, &f).len();
        for i in 1..=lambda + 1 {
            let fi = insert_at(&pg, &f, i).unwrap();
            prop_assert!(validate(pg.graph(), &fi));
            prop_assert_eq!(fi.depth(pg.n()), i - 1);
            prop_assert_eq!(delete_max(&fi).unwrap(), f.clone());
        }
    }

    #[test]
    fn tubings_satisfy_the_axioms(g in arb_ktree(), seed in any::<u64>()) {
        let order = shuffled(g.n(), seed);
        let f = ElimForest::from_ordering(&g, &order).unwrap();
        let t = to_tubing(&f);
        prop_assert!(validate_tubing(&g, &t));
        prop_assert_eq!(t.tubes.len(), g.n());
    }

    #[test]
    fn lex_bfs_certifies_random_chordal_graphs(g in arb_ktree(), seed in any::<u64>()) {
        // Scramble the labels; the graph stays chordal and must be
        // recognized.
        let relabel = shuffled(g.n(), seed);
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(u, v)| (relabel[u - 1], relabel[v - 1]))
            .collect();
        let scrambled = Graph::new(g.n(), edges).unwrap();
        let order = scrambled.chordal_peo();
        prop_assert!(order.is_some());
        prop_assert!(scrambled.is_peo(order.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn parse_round_trips(g in arb_ktree()) {
        let mut text = format!("{} {}\n", g.n(), g.m());
        for &(u, v) in g.edges() {
            text.push_str(&format!("{u} {v}\n"));
        }
        let parsed = Graph::parse(&text).unwrap();
        prop_assert_eq!(parsed.n(), g.n());
        prop_assert_eq!(parsed.edges(), g.edges());
    }
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut order: Vec<usize> = (1..=n).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    order
}
