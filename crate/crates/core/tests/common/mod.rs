#![allow(dead_code)]

use std::path::{Path, PathBuf};

use argkg_core::concepts::{link_store, LinkConfig, SeedMap};
use argkg_core::ingest::{ingest_annotations, ingest_concept_dump, ingest_corpus, AnnotationKind};
use argkg_core::GraphStore;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/pipeline").join(name)
}

/// Corpus and authors only.
pub fn corpus_store() -> GraphStore {
    let mut store = GraphStore::new();
    let report = ingest_corpus(&mut store, &fixture("debates.jsonl"), Some(&fixture("authors.jsonl"))).unwrap();
    assert!(report.rejected.is_empty(), "{:?}", report.rejected);
    store
}

/// Corpus with frames, conclusions, similarity edges and linked concepts.
pub fn linked_store() -> GraphStore {
    let mut store = corpus_store();
    for (file, kind) in [
        ("frames.jsonl", AnnotationKind::Frames),
        ("conclusions.jsonl", AnnotationKind::Conclusions),
        ("similarity.jsonl", AnnotationKind::Similarity),
    ] {
        ingest_annotations(&mut store, &fixture(file), kind).unwrap();
    }
    let (concepts, _) = ingest_concept_dump(&fixture("concepts.tsv"), Some("en")).unwrap();
    store.set_concept_store(concepts);
    let config = LinkConfig {
        seeds_per_sentence: 2,
        ..LinkConfig::default()
    };
    link_store(&mut store, &SeedMap::new(), &config).unwrap();
    store
}
