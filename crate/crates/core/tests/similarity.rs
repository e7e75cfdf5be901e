mod common;

use std::collections::{BTreeMap, BTreeSet};

use argkg_core::similarity::{
    concept_similarity, generalized_jaccard, jaccard, map_relative, provider_for, retrieve, similar_with_value,
    ConceptVariant, IdfTable, NeighborIndex, RelativeLabel, RetrieveMode, SimilaritySource,
};
use argkg_core::{PostId, ValueClass};
use common::linked_store;
use proptest::prelude::*;

fn ids(ranked: &[argkg_core::similarity::Ranked]) -> Vec<&str> {
    ranked.iter().map(|r| r.post_id.as_str()).collect()
}

#[test]
fn retrieval_respects_stance_and_issue() {
    let store = linked_store();
    let scores = provider_for(&store, SimilaritySource::EmbeddingPort);
    let support = retrieve(&store, "p1", RetrieveMode::Support, 5, scores.as_ref(), false).unwrap();
    assert_eq!(ids(&support), ["p2"]);
    let wide = retrieve(&store, "p1", RetrieveMode::Support, 5, scores.as_ref(), true).unwrap();
    assert_eq!(ids(&wide), ["p2", "p4"]);
    let counter = retrieve(&store, "p1", RetrieveMode::Counter, 5, scores.as_ref(), false).unwrap();
    assert_eq!(ids(&counter), ["p3"]);
    assert!(retrieve(&store, "nope", RetrieveMode::Counter, 5, scores.as_ref(), false).is_err());
}

#[test]
fn duplicate_similarity_lines_collapse() {
    let store = linked_store();
    let edges = store.similarity_edges(SimilaritySource::EmbeddingPort).count();
    assert_eq!(edges, 8);
    let (a, b) = (PostId::new("p2"), PostId::new("p1"));
    assert_eq!(store.similarity(SimilaritySource::EmbeddingPort, &a, &b), Some(0.82));
}

#[test]
fn concept_sources_compute_on_the_fly() {
    let store = linked_store();
    let scores = provider_for(&store, SimilaritySource::Jaccard);
    let (p1, p2) = (PostId::new("p1"), PostId::new("p2"));
    let s = scores.score(&p1, &p2).unwrap();
    let g1 = &store.concept_graph("p1").unwrap().all_concepts;
    let g2 = &store.concept_graph("p2").unwrap().all_concepts;
    assert_eq!(s, jaccard(g1, g2).score);
    assert_eq!(scores.score(&p1, &p1), Some(1.0));
}

#[test]
fn value_swap_filters_neighbors() {
    let mut store = linked_store();
    store.set_values("p2", BTreeSet::from([ValueClass::UniversalismNature]));
    store.set_values("p3", BTreeSet::from([ValueClass::UniversalismNature, ValueClass::Tradition]));
    store.set_values("p4", BTreeSet::from([ValueClass::UniversalismNature]));
    let index = NeighborIndex::build(&store, SimilaritySource::EmbeddingPort);
    let hits = similar_with_value(&store, &index, "p1", ValueClass::UniversalismNature, ValueClass::Tradition, 10).unwrap();
    assert_eq!(ids(&hits), ["p2", "p4"]);
    let one = similar_with_value(&store, &index, "p1", ValueClass::UniversalismNature, ValueClass::Tradition, 1).unwrap();
    assert_eq!(ids(&one), ["p2"]);
    assert!(similar_with_value(&store, &index, "p1", ValueClass::Tradition, ValueClass::Tradition, 1).is_err());
}

#[test]
fn empty_sets_are_flagged_undefined() {
    let empty = BTreeSet::new();
    let s = jaccard(&empty, &empty);
    assert_eq!(s.score, 0.0);
    assert!(s.undefined);
    let g = generalized_jaccard(&BTreeMap::new(), &BTreeMap::new());
    assert!(g.undefined);
}

#[test]
fn idf_follows_the_smoothed_formula() {
    let df = BTreeMap::from([("deer".to_owned(), 3usize), ("the".to_owned(), 10)]);
    let t = IdfTable::new(df, 10);
    assert!((t.idf("deer") - ((11.0f64 / 4.0).ln() + 1.0)).abs() < 1e-15);
    assert!((t.idf("the") - 1.0).abs() < 1e-15);
}

fn concept_set() -> impl Strategy<Value = BTreeMap<String, f64>> {
    prop::collection::btree_map("[a-f]", 0.01f64..1.0, 0..6)
}

fn graph(rank: BTreeMap<String, f64>) -> argkg_core::concepts::ArgumentConceptGraph {
    argkg_core::concepts::ArgumentConceptGraph {
        post_id: PostId::new("x"),
        seed_concepts: Vec::new(),
        path_edges: Vec::new(),
        all_concepts: rank.keys().cloned().collect(),
        pagerank: rank,
    }
}

proptest! {
    #[test]
    fn scores_lie_in_unit_interval(a in concept_set(), b in concept_set(), df in prop::collection::vec(0usize..20, 6)) {
        let table = IdfTable::new(
            ["a", "b", "c", "d", "e", "f"].iter().zip(df).map(|(c, n)| (c.to_string(), n)).collect(),
            20,
        );
        let (ga, gb) = (graph(a), graph(b));
        for v in [ConceptVariant::Jaccard, ConceptVariant::Idf, ConceptVariant::Tfidf] {
            let s = concept_similarity(&ga, &gb, v, &table);
            prop_assert!((0.0..=1.0).contains(&s.score));
            prop_assert_eq!(s.score.to_bits(), concept_similarity(&gb, &ga, v, &table).score.to_bits());
        }
    }

    #[test]
    fn map_relative_is_monotone_in_theta(s1 in 0.0f64..1.0, s2 in 0.0f64..1.0, t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        // a decision at a wide threshold is also made at a narrower one
        let wide = map_relative(s1, s2, hi);
        if wide != RelativeLabel::Equal {
            prop_assert_eq!(map_relative(s1, s2, lo), wide);
        }
        prop_assert_eq!(map_relative(s1, s2, f64::INFINITY), RelativeLabel::Equal);
    }
}
