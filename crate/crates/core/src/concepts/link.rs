use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::pagerank::{pagerank, PageRankConfig};
use super::path::shortest_paths_from;
use super::store::{normalize_concept, ConceptId, ConceptStore};
use super::text::{split_sentences, ConceptMatcher, SEEDS_PER_SENTENCE};
use crate::model::{Argument, PostId};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkConfig {
    pub seeds_per_sentence: usize,
    pub pagerank: PageRankConfig,
}

impl Default for LinkConfig {
    fn default() -> Self {
        LinkConfig {
            seeds_per_sentence: SEEDS_PER_SENTENCE,
            pagerank: PageRankConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathEdge {
    /// Lexicographically smaller endpoint.
    pub a: String,
    pub b: String,
    pub relation: String,
    pub weight: f64,
}

/// Concept subgraph grounding one argument.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArgumentConceptGraph {
    pub post_id: PostId,
    /// (sentence index, concept) in extraction order; the conclusion, when
    /// kept, is the last sentence.
    pub seed_concepts: Vec<(usize, String)>,
    pub path_edges: Vec<PathEdge>,
    pub all_concepts: BTreeSet<String>,
    pub pagerank: BTreeMap<String, f64>,
}

impl ArgumentConceptGraph {
    pub fn is_empty(&self) -> bool {
        self.all_concepts.is_empty()
    }
}

/// Seed source for one argument.
pub enum Seeds<'a> {
    /// Token matcher over the argument's sentences.
    Matcher(&'a ConceptMatcher),
    /// Precomputed (sentence index, concept) pairs.
    Given(&'a [(usize, String)]),
}

/// Grounds an argument: extracts seeds and joins every pair of distinct seeds
/// by its shortest path. Seeds not present in the store are kept as isolated
/// concepts.
pub fn link_argument(
    argument: &Argument,
    store: &ConceptStore,
    seeds: Seeds<'_>,
    config: &LinkConfig,
) -> ArgumentConceptGraph {
    let seed_concepts: Vec<(usize, String)> = match seeds {
        Seeds::Matcher(matcher) => {
            split_sentences(&argument.premise, argument.conclusion.as_deref())
                .iter()
                .enumerate()
                .flat_map(|(i, sentence)| {
                    matcher
                        .extract(sentence, store, config.seeds_per_sentence)
                        .into_iter()
                        .map(move |id| (i, store.label(id).to_owned()))
                })
                .collect()
        }
        Seeds::Given(given) => given
            .iter()
            .map(|(i, c)| (*i, normalize_concept(c)))
            .filter(|(_, c)| !c.is_empty())
            .collect(),
    };

    let mut all_concepts: BTreeSet<String> =
        seed_concepts.iter().map(|(_, c)| c.clone()).collect();
    let known: Vec<ConceptId> = all_concepts.iter().filter_map(|c| store.id(c)).collect();

    let mut edge_ids: BTreeSet<u32> = BTreeSet::new();
    for (i, &source) in known.iter().enumerate() {
        let targets: BTreeSet<ConceptId> = known[i + 1..].iter().copied().collect();
        if targets.is_empty() {
            break;
        }
        for path in shortest_paths_from(store, source, &targets).into_values() {
            edge_ids.extend(path.edges);
        }
    }

    let path_edges: Vec<PathEdge> = edge_ids
        .iter()
        .map(|&e| {
            let edge = store.edge(e);
            PathEdge {
                a: store.label(edge.a).to_owned(),
                b: store.label(edge.b).to_owned(),
                relation: store.relation_name(edge.relation).to_owned(),
                weight: edge.weight,
            }
        })
        .collect();
    for e in &path_edges {
        all_concepts.insert(e.a.clone());
        all_concepts.insert(e.b.clone());
    }

    let nodes: Vec<&String> = all_concepts.iter().collect();
    let position = |label: &str| nodes.binary_search_by(|n| n.as_str().cmp(label)).unwrap();
    let local_edges: Vec<(usize, usize)> = path_edges
        .iter()
        .map(|e| (position(&e.a), position(&e.b)))
        .collect();
    let ranks = pagerank(nodes.len(), &local_edges, &config.pagerank);
    let pagerank = nodes
        .iter()
        .zip(ranks)
        .map(|(n, r)| ((*n).clone(), r))
        .collect();

    ArgumentConceptGraph {
        post_id: argument.post_id.clone(),
        seed_concepts,
        path_edges,
        all_concepts,
        pagerank,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::super::store::ConceptStoreBuilder;
    use super::*;
    use crate::model::{IssueId, Stance};

    fn argument(premise: &str) -> Argument {
        Argument {
            post_id: PostId::new("p1"),
            issue_id: IssueId::new("i1"),
            stance: Stance::Pro,
            header: String::new(),
            premise: premise.to_owned(),
            conclusion: None,
            frames: BTreeSet::new(),
            values: BTreeSet::new(),
            author_id: None,
            concept_graph_id: None,
        }
    }

    fn store() -> ConceptStore {
        let mut b = ConceptStoreBuilder::new();
        b.add("hunting", "killing", "IsA", 1.0);
        b.add("killing", "animal", "RelatedTo2", 1.0);
        b.add("hunting", "animal", "UsedFor", 0.2);
        b.add("fishing", "boat", "AtLocation", 1.0);
        b.build()
    }

    fn given(pairs: &[(usize, &str)]) -> Vec<(usize, String)> {
        pairs.iter().map(|(i, c)| (*i, c.to_string())).collect()
    }

    #[test]
    fn two_seeds_joined_through_intermediate() {
        let s = store();
        let seeds = given(&[(0, "hunting"), (1, "animal")]);
        let g = link_argument(&argument("x"), &s, Seeds::Given(&seeds), &LinkConfig::default());
        let all: Vec<&str> = g.all_concepts.iter().map(String::as_str).collect();
        assert_eq!(all, ["animal", "hunting", "killing"]);
        assert_eq!(g.path_edges.len(), 2);
        let total: f64 = g.pagerank.values().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(g.pagerank["killing"] > g.pagerank["animal"]);
    }

    #[test]
    fn single_seed_graph() {
        let s = store();
        let seeds = given(&[(0, "hunting")]);
        let g = link_argument(&argument("x"), &s, Seeds::Given(&seeds), &LinkConfig::default());
        assert_eq!(g.all_concepts.len(), 1);
        assert_eq!(g.pagerank["hunting"], 1.0);
        assert!(g.path_edges.is_empty());
    }

    #[test]
    fn disconnected_seed_retained() {
        let s = store();
        let seeds = given(&[(0, "hunting"), (0, "animal"), (1, "fishing")]);
        let g = link_argument(&argument("x"), &s, Seeds::Given(&seeds), &LinkConfig::default());
        assert!(g.all_concepts.contains("fishing"));
        assert!(!g.all_concepts.contains("boat"));
        assert!(g.path_edges.iter().all(|e| e.a != "fishing" && e.b != "fishing"));
        assert_eq!(g.all_concepts.len(), 4);
    }

    #[test]
    fn zero_seeds_is_empty_graph() {
        let s = store();
        let m = ConceptMatcher::new(&s);
        let g = link_argument(
            &argument("Nothing matches this sentence at all."),
            &s,
            Seeds::Matcher(&m),
            &LinkConfig::default(),
        );
        assert!(g.is_empty() && g.pagerank.is_empty());
    }

    #[test]
    fn matcher_seeds_and_determinism() {
        let s = store();
        let m = ConceptMatcher::new(&s);
        let a = argument("Hunting means killing for fun. Fishing from a boat is calmer.");
        let g1 = link_argument(&a, &s, Seeds::Matcher(&m), &LinkConfig::default());
        let g2 = link_argument(&a, &s, Seeds::Matcher(&m), &LinkConfig::default());
        assert_eq!(g1, g2);
        assert_eq!(
            g1.seed_concepts,
            given(&[(0, "hunting"), (0, "killing"), (1, "boat"), (1, "fishing")])
        );
    }
}
