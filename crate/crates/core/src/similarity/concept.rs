use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::concepts::{ArgumentConceptGraph, ConceptStore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConceptVariant {
    Jaccard,
    Idf,
    Tfidf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConceptScore {
    pub score: f64,
    /// Both concept sets were empty; `score` is 0 by convention.
    pub undefined: bool,
}

/// Smoothed inverse document frequency over linked arguments:
/// `ln((1 + N) / (1 + df)) + 1`.
#[derive(Debug, Clone, Default)]
pub struct IdfTable {
    df: BTreeMap<String, usize>,
    n_args: usize,
}

impl IdfTable {
    pub fn new(df: BTreeMap<String, usize>, n_args: usize) -> Self {
        IdfTable { df, n_args }
    }

    pub fn from_store(store: &ConceptStore) -> Self {
        Self::new(store.document_frequencies().clone(), store.n_args())
    }

    pub fn idf(&self, concept: &str) -> f64 {
        let df = self.df.get(concept).copied().unwrap_or(0);
        ((1.0 + self.n_args as f64) / (1.0 + df as f64)).ln() + 1.0
    }
}

/// Walks the sorted union of two sets; `f(item, in_both)`.
fn for_union<'a>(a: &'a BTreeSet<String>, b: &'a BTreeSet<String>, mut f: impl FnMut(&'a str, bool)) {
    let mut ia = a.iter().peekable();
    let mut ib = b.iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => match x.cmp(y) {
                std::cmp::Ordering::Less => f(ia.next().unwrap(), false),
                std::cmp::Ordering::Greater => f(ib.next().unwrap(), false),
                std::cmp::Ordering::Equal => {
                    ib.next();
                    f(ia.next().unwrap(), true)
                }
            },
            (Some(_), None) => f(ia.next().unwrap(), false),
            (None, Some(_)) => f(ib.next().unwrap(), false),
            (None, None) => break,
        }
    }
}

fn ratio(num: f64, den: f64) -> ConceptScore {
    if den > 0.0 {
        ConceptScore {
            score: num / den,
            undefined: false,
        }
    } else {
        ConceptScore {
            score: 0.0,
            undefined: true,
        }
    }
}

/// `|A ∩ B| / |A ∪ B|`.
pub fn jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> ConceptScore {
    let (mut inter, mut union) = (0usize, 0usize);
    for_union(a, b, |_, both| {
        union += 1;
        inter += both as usize;
    });
    ratio(inter as f64, union as f64)
}

/// Jaccard with every concept weighted by its idf.
pub fn idf_weighted_jaccard(
    a: &BTreeSet<String>,
    b: &BTreeSet<String>,
    idf: &IdfTable,
) -> ConceptScore {
    let (mut num, mut den) = (0.0, 0.0);
    for_union(a, b, |c, both| {
        let w = idf.idf(c);
        den += w;
        if both {
            num += w;
        }
    });
    ratio(num, den)
}

/// `Σ min(w_a, w_b) / Σ max(w_a, w_b)` over the union of keys; a missing key
/// weighs 0.
pub fn generalized_jaccard(a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>) -> ConceptScore {
    let ka: BTreeSet<String> = a.keys().cloned().collect();
    let kb: BTreeSet<String> = b.keys().cloned().collect();
    let (mut num, mut den) = (0.0, 0.0);
    for_union(&ka, &kb, |c, _| {
        let wa = a.get(c).copied().unwrap_or(0.0);
        let wb = b.get(c).copied().unwrap_or(0.0);
        num += wa.min(wb);
        den += wa.max(wb);
    });
    ratio(num, den)
}

/// Concept-overlap similarity of two linked arguments. The tf-idf variant
/// weighs each concept by its pagerank in the argument's graph times idf.
pub fn concept_similarity(
    a: &ArgumentConceptGraph,
    b: &ArgumentConceptGraph,
    variant: ConceptVariant,
    idf: &IdfTable,
) -> ConceptScore {
    match variant {
        ConceptVariant::Jaccard => jaccard(&a.all_concepts, &b.all_concepts),
        ConceptVariant::Idf => idf_weighted_jaccard(&a.all_concepts, &b.all_concepts, idf),
        ConceptVariant::Tfidf => {
            let weights = |g: &ArgumentConceptGraph| -> BTreeMap<String, f64> {
                g.all_concepts
                    .iter()
                    .map(|c| {
                        let tf = g.pagerank.get(c).copied().unwrap_or(0.0);
                        (c.clone(), tf * idf.idf(c))
                    })
                    .collect()
            };
            generalized_jaccard(&weights(a), &weights(b))
        }
    }
}
