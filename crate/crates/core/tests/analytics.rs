mod common;

use std::collections::BTreeSet;

use argkg_core::analytics::{
    camp_comparison, concept_delta, concept_delta_against, friendship_embedding, issue_distance, matrix_diff, matrix_for,
    nearest_issues, select, spectral_embed, Baseline, Selector, SpectralConfig,
};
use argkg_core::annotate::{apply_port, PortConfig, PortKind, PortMode};
use argkg_core::{CampDimension, Error, FrameClass, GraphStore, IssueId, Label, ValueClass};
use common::{fixture, linked_store};
use proptest::prelude::*;

fn labelled_store() -> GraphStore {
    let mut store = linked_store();
    let lexicon = PortConfig::new(PortKind::ValueDetector, PortMode::LexiconBaseline).with_path(fixture("lexicon.json"));
    apply_port(&mut store, &lexicon, None).unwrap();
    store
}

fn sel(s: &str) -> Selector {
    s.parse().unwrap()
}

fn cell(m: &argkg_core::analytics::FrameValueMatrix, f: FrameClass, v: ValueClass) -> f64 {
    let fi = FrameClass::ALL.iter().position(|x| *x == f).unwrap();
    let vi = ValueClass::ALL.iter().position(|x| *x == v).unwrap();
    m.cells[fi][vi]
}

#[test]
fn single_argument_matrix_is_zero_or_hundred() {
    let store = labelled_store();
    let m = matrix_for(&store, &sel("issue:i1;stance:con")).unwrap();
    assert_eq!(m.n, 1);
    let p3 = store.argument("p3").unwrap();
    for (fi, f) in FrameClass::ALL.iter().enumerate() {
        for (vi, v) in ValueClass::ALL.iter().enumerate() {
            let want = if p3.frames.contains(f) && p3.values.contains(v) { 100.0 } else { 0.0 };
            assert_eq!(m.cells[fi][vi], want);
        }
    }
    assert_eq!(cell(&m, FrameClass::CulturalIdentity, ValueClass::Tradition), 100.0);
}

#[test]
fn diff_is_entrywise() {
    let store = labelled_store();
    let (a, b) = (matrix_for(&store, &sel("stance:pro")).unwrap(), matrix_for(&store, &sel("stance:con")).unwrap());
    let d = matrix_diff(&a, &b);
    for i in 0..a.cells.len() {
        for j in 0..a.cells[i].len() {
            assert_eq!(d.cells[i][j], a.cells[i][j] - b.cells[i][j]);
        }
    }
    assert_eq!(d.frame_marginals[0], a.frame_marginals[0] - b.frame_marginals[0]);
}

#[test]
fn empty_subsets_are_errors() {
    let store = labelled_store();
    assert!(matches!(matrix_for(&store, &sel("stance:pro;category:nothing")), Err(Error::EmptySubset(_))));
    assert!(matches!(matrix_for(&store, &sel("issue:i9")), Err(Error::NotFound { .. })));
}

#[test]
fn issue_distances_and_neighbors() {
    let store = labelled_store();
    let d = issue_distance(&store, "i1", "i2").unwrap();
    assert_eq!(d, issue_distance(&store, "i2", "i1").unwrap());
    assert_eq!(issue_distance(&store, "i1", "i1").unwrap(), 0.0);
    let near = nearest_issues(&store, "i1", 5).unwrap();
    assert_eq!(near.len(), 1);
    assert_eq!(near[0].distance, d);
}

#[test]
fn complement_delta_counts() {
    let store = labelled_store();
    let subset = select(&store, &sel("issue:i1;stance:pro")).unwrap();
    let within = select(&store, &sel("issue:i1")).unwrap();
    let rows = concept_delta_against(&store, &subset, &within.minus(&subset)).unwrap();
    let hunting = rows.iter().find(|r| r.concept == "hunting").unwrap();
    assert_eq!((hunting.subset_count, hunting.baseline_count), (2, 1));
    assert_eq!(hunting.delta_pp, 0.0);
    // rows are ordered by descending delta, then label
    for w in rows.windows(2) {
        assert!(w[0].delta_pp > w[1].delta_pp || (w[0].delta_pp == w[1].delta_pp && w[0].concept < w[1].concept));
    }
    let global = concept_delta(&store, &subset, Baseline::Global).unwrap();
    assert!(global.iter().all(|r| r.subset_count <= r.baseline_count));
}

#[test]
fn ideology_camps_compare() {
    let store = labelled_store();
    let c = camp_comparison(&store, CampDimension::Ideology, "left", "right", None).unwrap();
    assert_eq!((c.authors_a, c.authors_b), (2, 1));
    assert_eq!((c.matrix_a.n, c.matrix_b.n), (3, 2));
    let society = c.participation.iter().find(|p| p.category == "society").unwrap();
    assert!((society.share_a / society.share_b - (2.0 / 3.0) / 0.5).abs() < 1e-12);
    assert_eq!(society.delta_pp, society.share_a - society.share_b);
    assert!(camp_comparison(&store, CampDimension::Ideology, "left", "unknown", None).is_err());
    let scope = BTreeSet::from([IssueId::new("i9")]);
    assert!(camp_comparison(&store, CampDimension::Ideology, "left", "right", Some(&scope)).is_err());
}

#[test]
fn friendship_path_embedding() {
    let store = labelled_store();
    let e = friendship_embedding(&store, 2, &SpectralConfig::default()).unwrap();
    for (got, want) in e.eigenvalues.iter().zip([0.0, 1.0, 2.0]) {
        assert!((got - want).abs() < 1e-9, "{:?}", e.eigenvalues);
    }
    assert!(e.residuals.iter().all(|r| *r < 1e-9));
    assert!(matches!(friendship_embedding(&store, 3, &SpectralConfig::default()), Err(Error::EmbeddingTooLarge { .. })));
}

#[test]
fn embedding_uses_the_largest_component() {
    let nodes: BTreeSet<String> = ["a", "b", "c", "d", "x", "y"].iter().map(|s| s.to_string()).collect();
    let edges: Vec<(String, String)> = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("x", "y")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let e = spectral_embed(&nodes, &edges, 2, &SpectralConfig::default()).unwrap();
    assert_eq!(e.nodes, ["a", "b", "c", "d"]);
    // C4 has normalized spectrum 0, 1, 1, 2
    assert!((e.eigenvalues[1] - 1.0).abs() < 1e-9 && (e.eigenvalues[2] - 1.0).abs() < 1e-9);
}

proptest! {
    #[test]
    fn dense_and_iterative_solvers_agree(n in 6usize..30, raw in prop::collection::vec((0usize..30, 0usize..30), 10..80)) {
        let nodes: BTreeSet<String> = (0..n).map(|i| format!("v{i:02}")).collect();
        // a spanning path keeps the graph connected
        let mut edges: Vec<(String, String)> = (1..n).map(|i| (format!("v{:02}", i - 1), format!("v{i:02}"))).collect();
        edges.extend(raw.into_iter().map(|(a, b)| (format!("v{:02}", a % n), format!("v{:02}", b % n))));
        let dense = spectral_embed(&nodes, &edges, 2, &SpectralConfig::default()).unwrap();
        let iterative = spectral_embed(&nodes, &edges, 2, &SpectralConfig { dense_limit: 2, tolerance: 1e-10 }).unwrap();
        prop_assert_eq!(iterative.solver.as_str(), "lanczos");
        for (a, b) in dense.eigenvalues.iter().zip(&iterative.eigenvalues) {
            prop_assert!((a - b).abs() < 1e-7, "{:?} vs {:?}", dense.eigenvalues, iterative.eigenvalues);
        }
        prop_assert!(iterative.residuals.iter().all(|r| *r < 1e-6));
    }
}
