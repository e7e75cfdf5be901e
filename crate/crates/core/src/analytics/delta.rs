use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::subset::ArgumentSubset;
use crate::error::{Error, Result};
use crate::store::GraphStore;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Baseline {
    /// Every argument in the store.
    Global,
    /// Every argument outside the subset.
    Complement,
}

impl std::str::FromStr for Baseline {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "global" => Ok(Baseline::Global),
            "complement" => Ok(Baseline::Complement),
            other => Err(format!("unknown baseline '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptDelta {
    pub concept: String,
    pub subset_count: usize,
    pub baseline_count: usize,
    /// `100 · (subset_count / N_subset − baseline_count / N_baseline)`.
    pub delta_pp: f64,
}

/// Number of arguments in `subset` whose concept graph mentions each concept.
fn mention_counts(store: &GraphStore, subset: &ArgumentSubset) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for arg in subset.arguments(store) {
        if let Some(g) = store.concept_graph(arg.post_id.as_str()) {
            for c in &g.all_concepts {
                *counts.entry(c.clone()).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// Mention-ratio difference of every concept seen in the subset or the
/// baseline, descending by delta with ties broken by concept label.
/// Unlinked arguments count as mentioning nothing.
pub fn concept_delta(
    store: &GraphStore,
    subset: &ArgumentSubset,
    baseline: Baseline,
) -> Result<Vec<ConceptDelta>> {
    let base = match baseline {
        Baseline::Global => ArgumentSubset::from_members("all", store.arguments().map(|a| a.post_id.clone())),
        Baseline::Complement => subset.complement(store),
    };
    concept_delta_against(store, subset, &base)
}

/// Like [`concept_delta`] with an explicit baseline subset, e.g. the con
/// arguments of the same issue.
pub fn concept_delta_against(
    store: &GraphStore,
    subset: &ArgumentSubset,
    base: &ArgumentSubset,
) -> Result<Vec<ConceptDelta>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset(subset.selector.clone()));
    }
    if base.is_empty() {
        return Err(Error::EmptySubset(base.selector.clone()));
    }
    let (sc, bc) = (mention_counts(store, subset), mention_counts(store, base));
    let mut concepts: Vec<&String> = sc.keys().chain(bc.keys()).collect();
    concepts.sort();
    concepts.dedup();
    let mut out: Vec<ConceptDelta> = concepts
        .into_iter()
        .map(|c| {
            let s = sc.get(c).copied().unwrap_or(0);
            let b = bc.get(c).copied().unwrap_or(0);
            ConceptDelta {
                concept: c.clone(),
                subset_count: s,
                baseline_count: b,
                delta_pp: 100.0 * (s as f64 / subset.n as f64 - b as f64 / base.n as f64),
            }
        })
        .collect();
    out.sort_by(|x, y| y.delta_pp.total_cmp(&x.delta_pp).then_with(|| x.concept.cmp(&y.concept)));
    Ok(out)
}
