mod common;

use argkg_core::concepts::{link_argument, pagerank, shortest_path, ConceptStoreBuilder, LinkConfig, PageRankConfig, Seeds};
use common::{corpus_store, linked_store};
use proptest::prelude::*;

fn chain_store() -> argkg_core::concepts::ConceptStore {
    let mut b = ConceptStoreBuilder::new();
    // two equal-cost routes from a to d: a-b-d and a-c-d
    b.add("a", "b", "IsA", 1.0);
    b.add("b", "d", "IsA", 1.0);
    b.add("a", "c", "IsA", 1.0);
    b.add("c", "d", "IsA", 1.0);
    b.add("d", "e", "IsA", 0.5);
    b.build()
}

#[test]
fn ties_resolve_to_the_smaller_node_sequence() {
    let s = chain_store();
    let p = shortest_path(&s, s.id("a").unwrap(), s.id("d").unwrap()).unwrap();
    let labels: Vec<&str> = p.nodes.iter().map(|n| s.label(*n)).collect();
    assert_eq!(labels, ["a", "b", "d"]);
    assert_eq!(p.cost, 2.0);
    let far = shortest_path(&s, s.id("a").unwrap(), s.id("e").unwrap()).unwrap();
    assert_eq!(far.cost, 4.0);
}

#[test]
fn given_seeds_link_and_rank() {
    let store = corpus_store();
    let s = chain_store();
    let arg = store.argument("p1").unwrap();
    let seeds = vec![(0, "a".to_owned()), (1, "e".to_owned()), (1, "zebra".to_owned())];
    let g = link_argument(arg, &s, Seeds::Given(&seeds), &LinkConfig::default());
    let concepts: Vec<&str> = g.all_concepts.iter().map(String::as_str).collect();
    assert_eq!(concepts, ["a", "b", "d", "e", "zebra"]);
    assert_eq!(g.path_edges.len(), 3);
    let total: f64 = g.pagerank.values().sum();
    assert!((total - 1.0).abs() < 1e-9);
    assert!(g.pagerank["zebra"] > 0.0);
}

#[test]
fn single_seed_gets_all_the_mass() {
    let store = corpus_store();
    let s = chain_store();
    let seeds = vec![(0, "c".to_owned())];
    let g = link_argument(store.argument("p2").unwrap(), &s, Seeds::Given(&seeds), &LinkConfig::default());
    assert!(g.path_edges.is_empty());
    assert_eq!(g.pagerank["c"], 1.0);
}

#[test]
fn fixture_graphs_respect_invariants() {
    let store = linked_store();
    let concepts = store.concept_store().unwrap();
    for g in store.concept_graphs() {
        for (_, c) in &g.seed_concepts {
            assert!(g.all_concepts.contains(c), "{}: seed {c}", g.post_id);
        }
        for e in &g.path_edges {
            let (a, b) = (concepts.id(&e.a).unwrap(), concepts.id(&e.b).unwrap());
            assert!(concepts.edge_between(a, b).is_some());
        }
        if !g.is_empty() {
            let total: f64 = g.pagerank.values().sum();
            assert!((total - 1.0).abs() <= 1e-9, "{}", g.post_id);
        }
    }
    let hunting = store.concept_graph("p1").unwrap();
    assert!(hunting.all_concepts.contains("hunting"));
}

proptest! {
    #[test]
    fn pagerank_is_permutation_equivariant(
        n in 1usize..12,
        raw in prop::collection::vec((0usize..12, 0usize..12), 0..30),
        shift in 0usize..12,
    ) {
        let edges: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let perm = |i: usize| (i + shift) % n;
        let moved: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (perm(a), perm(b))).collect();
        let cfg = PageRankConfig::default();
        let r = pagerank(n, &edges, &cfg);
        let m = pagerank(n, &moved, &cfg);
        prop_assert!((r.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        for i in 0..n {
            prop_assert!((r[i] - m[perm(i)]).abs() <= 1e-9);
        }
    }

    #[test]
    fn path_cost_is_symmetric_and_triangular(
        raw in prop::collection::vec((0u8..7, 0u8..7, 1u32..5), 1..20),
    ) {
        let mut b = ConceptStoreBuilder::new();
        for i in 0..7 {
            b.add_concept(&format!("n{i}"));
        }
        for (x, y, w) in raw {
            b.add(&format!("n{x}"), &format!("n{y}"), "IsA", w as f64);
        }
        let s = b.build();
        let cost: Vec<Vec<Option<f64>>> = (0..7)
            .map(|x| {
                (0..7)
                    .map(|y| shortest_path(&s, s.id(&format!("n{x}")).unwrap(), s.id(&format!("n{y}")).unwrap()).map(|p| p.cost))
                    .collect()
            })
            .collect();
        for x in 0..7 {
            for y in 0..7 {
                prop_assert_eq!(cost[x][y].is_some(), cost[y][x].is_some());
                if let (Some(a), Some(b)) = (cost[x][y], cost[y][x]) {
                    prop_assert!((a - b).abs() < 1e-12);
                }
                for z in 0..7 {
                    if let (Some(a), Some(b), Some(c)) = (cost[x][z], cost[x][y], cost[y][z]) {
                        prop_assert!(a <= b + c + 1e-12);
                    }
                }
            }
        }
    }
}
