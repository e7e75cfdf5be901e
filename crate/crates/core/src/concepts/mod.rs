//! Grounding arguments in commonsense concepts: segmentation, seed
//! extraction, shortest-path connection and per-argument pagerank.

mod link;
mod pagerank;
mod path;
mod store;
mod text;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

pub use link::{link_argument, ArgumentConceptGraph, LinkConfig, PathEdge, Seeds};
pub use pagerank::{pagerank, PageRankConfig};
pub use path::{shortest_path, shortest_paths_from, ConceptPath};
pub use store::{
    concept_language, normalize_concept, ConceptEdge, ConceptId, ConceptStore,
    ConceptStoreBuilder,
};
pub use text::{
    split_sentences, ConceptMatcher, Tokenizer, MIN_SENTENCE_WORDS, SEEDS_PER_SENTENCE,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Argument, PostId};
use crate::store::GraphStore;

/// Precomputed seeds keyed by post.
pub type SeedMap = HashMap<PostId, Vec<(usize, String)>>;

/// Links many arguments in parallel. Output order follows `arguments`.
pub fn link_arguments(
    arguments: &[&Argument],
    store: &ConceptStore,
    seeds: &SeedMap,
    config: &LinkConfig,
) -> Vec<ArgumentConceptGraph> {
    let matcher = ConceptMatcher::new(store);
    arguments
        .par_iter()
        .map(|arg| {
            let source = match seeds.get(&arg.post_id) {
                Some(given) => Seeds::Given(given),
                None => Seeds::Matcher(&matcher),
            };
            link_argument(arg, store, source, config)
        })
        .collect()
}

/// Number of graphs mentioning each concept.
pub fn document_frequencies<'a>(
    graphs: impl IntoIterator<Item = &'a ArgumentConceptGraph>,
) -> BTreeMap<String, usize> {
    let mut df = BTreeMap::new();
    for g in graphs {
        for c in &g.all_concepts {
            *df.entry(c.clone()).or_insert(0) += 1;
        }
    }
    df
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSummary {
    pub arguments: usize,
    /// Arguments whose graph has no concept.
    pub empty: usize,
    pub from_seed_file: usize,
    pub concepts: usize,
    pub path_edges: usize,
}

/// Links every argument of the store, replacing earlier graphs, and
/// refreshes the concept store's document frequencies.
pub fn link_store(store: &mut GraphStore, seeds: &SeedMap, config: &LinkConfig) -> Result<LinkSummary> {
    let concepts = store.concept_store().ok_or(Error::MissingConceptStore)?;
    let args: Vec<&Argument> = store.arguments().collect();
    let graphs = link_arguments(&args, concepts, seeds, config);
    let df = document_frequencies(&graphs);
    let summary = LinkSummary {
        arguments: graphs.len(),
        empty: graphs.iter().filter(|g| g.is_empty()).count(),
        from_seed_file: args.iter().filter(|a| seeds.contains_key(&a.post_id)).count(),
        concepts: df.len(),
        path_edges: graphs.iter().map(|g| g.path_edges.len()).sum(),
    };
    let n = graphs.len();
    for g in graphs {
        store.set_concept_graph(g).map_err(Error::InvalidInput)?;
    }
    store
        .concept_store_mut()
        .expect("checked above")
        .set_document_frequencies(df, n);
    Ok(summary)
}
