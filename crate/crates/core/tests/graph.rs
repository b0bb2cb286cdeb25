mod common;

use std::collections::{BTreeMap, BTreeSet};

use online_ramsey::{canonical_key, Color, ColoredGraph, GraphError};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use Color::{Blue, Red};

fn g(edges: &[(u32, u32, Color)]) -> ColoredGraph {
    ColoredGraph::from_edges(edges.iter().copied()).unwrap()
}

#[test]
fn add_edge_examples() {
    let mut empty = ColoredGraph::new();
    let (a, b) = (empty.add_vertex(), empty.add_vertex());
    let one = empty.with_edge(a, b, Blue).unwrap();
    assert_eq!(one.edge_count(), 1);
    assert_eq!(one.count_color(Blue), 1);
    assert_eq!(empty.edge_count(), 0, "input untouched");

    assert_eq!(
        one.with_edge(a, b, Red),
        Err(GraphError::DuplicateEdge(a, b))
    );
    assert_eq!(
        one.with_edge(b, a, Red),
        Err(GraphError::DuplicateEdge(b, a))
    );
    assert_eq!(one.with_edge(a, a, Red), Err(GraphError::LoopEdge(a)));
    assert_eq!(one.with_edge(a, 7, Red), Err(GraphError::UnknownVertex(7)));

    let mut p = g(&[(0, 1, Red), (1, 2, Red)]);
    p.add_vertex();
    let p4 = p.with_edge(2, 3, Red).unwrap();
    assert!(p4.has_red_path_of_order(4));
    assert!(common::has_red_path(&p4, 4));
}

#[test]
fn red_path_examples() {
    assert!(g(&[(0, 1, Red), (1, 2, Red), (2, 3, Red)]).has_red_path_of_order(4));
    let star = g(&[(0, 1, Red), (0, 2, Red), (0, 3, Red)]);
    assert!(!star.has_red_path_of_order(4));
    assert!(star.has_red_path_of_order(3));
    assert!(!common::has_red_path(&star, 4));
    assert!(!ColoredGraph::new().has_red_path_of_order(1));
}

#[test]
fn would_create_red_p4_examples() {
    let mut p3 = g(&[(0, 1, Red), (1, 2, Red)]);
    p3.add_vertex();
    assert_eq!(p3.would_create_red_p4(2, 3), Ok(true));
    let two = g(&[(0, 1, Red), (2, 3, Red)]);
    assert_eq!(two.would_create_red_p4(1, 2), Ok(true));
    let mut one = g(&[(0, 1, Red)]);
    one.add_vertex();
    assert_eq!(one.would_create_red_p4(1, 2), Ok(false));
    assert_eq!(
        one.would_create_red_p4(0, 1),
        Err(GraphError::DuplicateEdge(0, 1))
    );
}

#[test]
fn would_create_red_cycle_examples() {
    assert_eq!(
        g(&[(0, 1, Red), (1, 2, Red)]).would_create_red_cycle(0, 2),
        Ok(true)
    );
    let mut e = g(&[(0, 1, Red)]);
    e.add_vertex();
    assert_eq!(e.would_create_red_cycle(0, 2), Ok(false));
    assert_eq!(
        g(&[(0, 1, Blue), (1, 2, Blue)]).would_create_red_cycle(0, 2),
        Ok(false)
    );
}

#[test]
fn longest_blue_path_examples() {
    assert_eq!(g(&[(0, 1, Blue)]).longest_blue_path().0, 2);
    assert_eq!(ColoredGraph::new().longest_blue_path().0, 0);
    let mut lone = ColoredGraph::new();
    lone.add_vertex();
    assert_eq!(lone.longest_blue_path().0, 1);

    // G7 with roles v0..v4 = 0..4: blue v0v1 v1v4 v4v3, red v1v2 v2v3.
    let g7 = g(&[
        (0, 1, Blue),
        (1, 2, Red),
        (2, 3, Red),
        (1, 4, Blue),
        (4, 3, Blue),
    ]);
    let (order, path) = g7.longest_blue_path();
    assert_eq!(order, 4);
    let rev: Vec<u32> = path.iter().rev().copied().collect();
    assert!(
        path == vec![0, 1, 4, 3] || rev == vec![0, 1, 4, 3],
        "{path:?}"
    );
}

#[test]
fn longest_blue_path_matches_oracle_on_eight_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let g = common::random_graph(&mut rng, 8, 0.5);
        let (order, path) = g.longest_blue_path();
        assert_eq!(order, common::longest_blue_order(&g));
        assert_eq!(path.len(), order);
        assert!(common::is_path(&g, &path, Blue));
    }
}

#[test]
fn colors_separate_keys() {
    let blue = g(&[(0, 1, Blue), (1, 2, Blue)]);
    let red = g(&[(0, 1, Red), (1, 2, Red)]);
    assert_ne!(canonical_key(&blue), canonical_key(&red));
}

#[test]
fn hand_built_pairs_separate() {
    let pairs = [
        // P4 versus star, same colors
        (
            g(&[(0, 1, Blue), (1, 2, Blue), (2, 3, Blue)]),
            g(&[(0, 1, Blue), (0, 2, Blue), (0, 3, Blue)]),
        ),
        // red end versus red middle of a P4
        (
            g(&[(0, 1, Red), (1, 2, Blue), (2, 3, Blue)]),
            g(&[(0, 1, Blue), (1, 2, Red), (2, 3, Blue)]),
        ),
        // C6 versus two triangles
        (
            g(&[
                (0, 1, Blue),
                (1, 2, Blue),
                (2, 3, Blue),
                (3, 4, Blue),
                (4, 5, Blue),
                (5, 0, Blue),
            ]),
            g(&[
                (0, 1, Blue),
                (1, 2, Blue),
                (2, 0, Blue),
                (3, 4, Blue),
                (4, 5, Blue),
                (5, 3, Blue),
            ]),
        ),
        // C6 with red chords at distance 3 versus distance 2
        (
            g(&[
                (0, 1, Blue),
                (1, 2, Blue),
                (2, 3, Blue),
                (3, 4, Blue),
                (4, 5, Blue),
                (5, 0, Blue),
                (0, 3, Red),
            ]),
            g(&[
                (0, 1, Blue),
                (1, 2, Blue),
                (2, 3, Blue),
                (3, 4, Blue),
                (4, 5, Blue),
                (5, 0, Blue),
                (0, 2, Red),
            ]),
        ),
    ];
    for (a, b) in &pairs {
        assert_ne!(common::brute_canon(a), common::brute_canon(b));
        assert_ne!(canonical_key(a), canonical_key(b));
    }
}

#[test]
fn small_catalog_keys_are_injective() {
    let catalog = common::small_catalog();
    // Hand count: 1 empty, 2 single edges, 6 on two edges, 24 on three.
    assert_eq!(catalog.len(), 33);
    let keys: BTreeSet<_> = catalog.iter().map(canonical_key).collect();
    assert_eq!(keys.len(), catalog.len());
}

#[test]
fn keys_agree_with_brute_force_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut by_key: BTreeMap<_, BTreeSet<_>> = BTreeMap::new();
    for _ in 0..400 {
        let g = common::random_graph(&mut rng, 5, 0.35);
        by_key
            .entry(canonical_key(&g))
            .or_default()
            .insert(common::brute_canon(&g));
    }
    let classes: usize = by_key.values().map(|s| s.len()).sum();
    assert_eq!(classes, by_key.len(), "one brute-force class per key");
}

#[test]
fn spare_isolated_vertices_fold() {
    let mut a = g(&[(0, 1, Blue)]);
    let mut b = a.clone();
    a.add_vertex();
    for _ in 0..5 {
        b.add_vertex();
    }
    assert_eq!(canonical_key(&a), canonical_key(&b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn longest_blue_path_matches_oracle(seed in any::<u64>(), n in 1usize..=10, density in 0.1f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, density);
        let (order, path) = g.longest_blue_path();
        prop_assert_eq!(order, common::longest_blue_order(&g));
        prop_assert!(common::is_path(&g, &path, Blue));
        prop_assert_eq!(path.len(), order);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn key_survives_relabeling(seed in any::<u64>(), n in 1usize..=9, density in 0.1f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, density);
        let key = canonical_key(&g);
        let mut perm: Vec<u32> = (0..n as u32).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            prop_assert_eq!(&canonical_key(&common::relabel(&g, &perm)), &key);
        }
    }

    #[test]
    fn red_p4_prediction_is_exact(seed in any::<u64>(), n in 4usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.25);
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                if g.has_edge(a, b) {
                    continue;
                }
                let with = g.with_edge(a, b, Red).unwrap();
                let fresh = !common::has_red_path(&g, 4) && common::has_red_path(&with, 4);
                if !common::has_red_path(&g, 4) {
                    prop_assert_eq!(g.would_create_red_p4(a, b).unwrap(), fresh);
                }
            }
        }
    }
}
