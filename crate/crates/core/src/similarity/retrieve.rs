use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::concept::{concept_similarity, ConceptVariant, IdfTable};
use super::SimilaritySource;
use crate::error::{Error, Result};
use crate::labels::ValueClass;
use crate::model::PostId;
use crate::store::GraphStore;

/// Scores unordered post pairs.
pub trait SimilarityProvider: Sync {
    fn score(&self, a: &PostId, b: &PostId) -> Option<f64>;
}

/// Edges materialized in the store.
pub struct StoredEdges<'a> {
    pub store: &'a GraphStore,
    pub source: SimilaritySource,
}

impl SimilarityProvider for StoredEdges<'_> {
    fn score(&self, a: &PostId, b: &PostId) -> Option<f64> {
        self.store.similarity(self.source, a, b)
    }
}

/// Concept-overlap scores computed on demand from the concept graphs.
/// Pairs where either argument is unlinked have no score.
pub struct ComputedConcepts<'a> {
    pub store: &'a GraphStore,
    pub variant: ConceptVariant,
    pub idf: IdfTable,
}

impl<'a> ComputedConcepts<'a> {
    pub fn new(store: &'a GraphStore, variant: ConceptVariant) -> Self {
        let idf = store
            .concept_store()
            .map(IdfTable::from_store)
            .unwrap_or_default();
        ComputedConcepts {
            store,
            variant,
            idf,
        }
    }
}

impl SimilarityProvider for ComputedConcepts<'_> {
    fn score(&self, a: &PostId, b: &PostId) -> Option<f64> {
        let ga = self.store.concept_graph(a.as_str())?;
        let gb = self.store.concept_graph(b.as_str())?;
        Some(concept_similarity(ga, gb, self.variant, &self.idf).score)
    }
}

/// Stored edges when the store has any for `source`; otherwise, for concept
/// sources, on-the-fly concept overlap.
pub fn provider_for(store: &GraphStore, source: SimilaritySource) -> Box<dyn SimilarityProvider + '_> {
    let materialized = store.similarity_edges(source).next().is_some();
    match source.concept_variant() {
        Some(variant) if !materialized => Box::new(ComputedConcepts::new(store, variant)),
        _ => Box::new(StoredEdges { store, source }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RetrieveMode {
    /// Same stance.
    Support,
    /// Opposite stance.
    Counter,
}

impl std::str::FromStr for RetrieveMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "support" => Ok(RetrieveMode::Support),
            "counter" => Ok(RetrieveMode::Counter),
            other => Err(format!("unknown retrieval mode '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranked {
    pub post_id: PostId,
    pub score: f64,
}

fn by_score_then_id(x: &Ranked, y: &Ranked) -> Ordering {
    y.score.total_cmp(&x.score).then_with(|| x.post_id.cmp(&y.post_id))
}

/// Most similar arguments with the same (`Support`) or opposite (`Counter`)
/// stance. Candidates come from the query's issue unless `widen` is set.
pub fn retrieve(
    store: &GraphStore,
    query: &str,
    mode: RetrieveMode,
    k: usize,
    scores: &dyn SimilarityProvider,
    widen: bool,
) -> Result<Vec<Ranked>> {
    let q = store.argument(query).ok_or_else(|| Error::NotFound {
        kind: "argument",
        id: query.to_owned(),
    })?;
    let wanted = match mode {
        RetrieveMode::Support => q.stance,
        RetrieveMode::Counter => q.stance.opposite(),
    };
    let candidates: Box<dyn Iterator<Item = &crate::model::Argument>> = if widen {
        Box::new(store.arguments())
    } else {
        let issue = store.issue(q.issue_id.as_str()).expect("store integrity");
        Box::new(store.arguments_of(issue))
    };
    let mut ranked: Vec<Ranked> = candidates
        .filter(|a| a.post_id != q.post_id && a.stance == wanted)
        .filter_map(|a| {
            scores.score(&q.post_id, &a.post_id).map(|score| Ranked {
                post_id: a.post_id.clone(),
                score,
            })
        })
        .collect();
    ranked.sort_by(by_score_then_id);
    ranked.truncate(k);
    Ok(ranked)
}

/// Per-post neighbor lists over one source's stored edges, sorted by
/// descending score then post id.
#[derive(Debug, Clone, Default)]
pub struct NeighborIndex {
    neighbors: HashMap<PostId, Vec<Ranked>>,
}

impl NeighborIndex {
    pub fn build(store: &GraphStore, source: SimilaritySource) -> Self {
        let mut neighbors: HashMap<PostId, Vec<Ranked>> = HashMap::new();
        for (a, b, score) in store.similarity_edges(source) {
            neighbors.entry(a.clone()).or_default().push(Ranked {
                post_id: b.clone(),
                score,
            });
            neighbors.entry(b.clone()).or_default().push(Ranked {
                post_id: a.clone(),
                score,
            });
        }
        for list in neighbors.values_mut() {
            list.sort_by(by_score_then_id);
        }
        NeighborIndex { neighbors }
    }

    pub fn neighbors(&self, post: &str) -> &[Ranked] {
        self.neighbors.get(post).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Similarity neighbors that carry value `include` but not `exclude`.
pub fn similar_with_value(
    store: &GraphStore,
    index: &NeighborIndex,
    query: &str,
    include: ValueClass,
    exclude: ValueClass,
    k: usize,
) -> Result<Vec<Ranked>> {
    if include == exclude {
        return Err(Error::invalid("include and exclude values must differ"));
    }
    if store.argument(query).is_none() {
        return Err(Error::NotFound {
            kind: "argument",
            id: query.to_owned(),
        });
    }
    Ok(index
        .neighbors(query)
        .iter()
        .filter(|n| {
            let values = &store.argument(n.post_id.as_str()).expect("store integrity").values;
            values.contains(&include) && !values.contains(&exclude)
        })
        .take(k)
        .cloned()
        .collect())
}
