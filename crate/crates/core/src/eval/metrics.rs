use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationMode {
    /// Union of all annotators' labels.
    OneHit,
    /// Labels chosen by more than half of the annotators.
    Majority,
    /// Intersection of all annotators' labels.
    Full,
}

impl AggregationMode {
    pub const ALL: [AggregationMode; 3] = [AggregationMode::OneHit, AggregationMode::Majority, AggregationMode::Full];

    pub fn as_str(self) -> &'static str {
        match self {
            AggregationMode::OneHit => "one_hit",
            AggregationMode::Majority => "majority",
            AggregationMode::Full => "full",
        }
    }
}

/// Combines per-annotator label sets of one post.
pub fn aggregate<L: Ord + Clone>(votes: &[BTreeSet<L>], mode: AggregationMode) -> BTreeSet<L> {
    let mut counts: BTreeMap<&L, usize> = BTreeMap::new();
    for set in votes {
        for l in set {
            *counts.entry(l).or_insert(0) += 1;
        }
    }
    let n = votes.len();
    counts
        .into_iter()
        .filter(|&(_, c)| match mode {
            AggregationMode::OneHit => c >= 1,
            AggregationMode::Majority => 2 * c > n,
            AggregationMode::Full => c == n,
        })
        .map(|(l, _)| l.clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassScores {
    pub class: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Gold occurrences.
    pub support: usize,
    pub predicted: usize,
    pub true_positives: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Averages {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prf1Report {
    pub per_class: Vec<ClassScores>,
    pub micro: Averages,
    pub macro_avg: Averages,
    pub support: usize,
    pub posts: usize,
}

fn div(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        a / b
    }
}

fn scores(tp: usize, predicted: usize, support: usize) -> Averages {
    let precision = div(tp as f64, predicted as f64);
    let recall = div(tp as f64, support as f64);
    Averages {
        precision,
        recall,
        f1: div(2.0 * precision * recall, precision + recall),
    }
}

/// Multi-label precision, recall and F1 per class plus micro and macro
/// averages. Zero denominators score 0; macro averages include every class.
pub fn prf1<K: Ord + Display, L: Ord + Display>(
    gold: &BTreeMap<K, BTreeSet<L>>,
    pred: &BTreeMap<K, BTreeSet<L>>,
    classes: &[L],
) -> Result<Prf1Report> {
    if !gold.keys().eq(pred.keys()) {
        let missing = gold
            .keys()
            .find(|k| !pred.contains_key(*k))
            .or_else(|| pred.keys().find(|k| !gold.contains_key(*k)));
        return Err(Error::invalid(format!(
            "gold and predictions cover different posts (first difference: {})",
            missing.map(|k| k.to_string()).unwrap_or_default()
        )));
    }
    let index: BTreeMap<&L, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let lookup = |l: &L| {
        index
            .get(l)
            .copied()
            .ok_or_else(|| Error::invalid(format!("class '{l}' outside the enumeration")))
    };
    let (mut tp, mut np, mut ng) = (vec![0usize; classes.len()], vec![0usize; classes.len()], vec![0usize; classes.len()]);
    for (k, g) in gold {
        let p = &pred[k];
        for l in g {
            ng[lookup(l)?] += 1;
        }
        for l in p {
            let i = lookup(l)?;
            np[i] += 1;
            if g.contains(l) {
                tp[i] += 1;
            }
        }
    }
    let per_class: Vec<ClassScores> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = scores(tp[i], np[i], ng[i]);
            ClassScores {
                class: c.to_string(),
                precision: s.precision,
                recall: s.recall,
                f1: s.f1,
                support: ng[i],
                predicted: np[i],
                true_positives: tp[i],
            }
        })
        .collect();
    let m = classes.len() as f64;
    let mean = |f: fn(&ClassScores) -> f64| div(per_class.iter().map(f).sum(), m);
    Ok(Prf1Report {
        micro: scores(tp.iter().sum(), np.iter().sum(), ng.iter().sum()),
        macro_avg: Averages {
            precision: mean(|c| c.precision),
            recall: mean(|c| c.recall),
            f1: mean(|c| c.f1),
        },
        support: ng.iter().sum(),
        posts: gold.len(),
        per_class,
    })
}
