//! Evaluation against human annotations: label aggregation, P/R/F1,
//! Fleiss' kappa, conclusion quality and the relative-similarity sweep.

mod conclusion;
mod gold;
mod kappa;
mod metrics;
mod relative;
pub mod report;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use conclusion::{conclusion_report, plurality, ConclusionReport};
pub use gold::{
    read_gold, read_relative_gold, AnnotationRecord, ConclusionQuality, GoldByPost, RelativeGold, RelativeTask,
};
pub use kappa::{fleiss_kappa, multilabel_kappa, rating_table, Kappa, MultiLabelKappa};
pub use metrics::{aggregate, prf1, AggregationMode, Averages, ClassScores, Prf1Report};
pub use relative::{theta_sweep, ThetaRow, ThetaSweep};

use crate::error::{Error, Result};
use crate::labels::{FrameClass, Label, ValueClass};
use crate::model::{Argument, PostId};
use crate::store::GraphStore;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelTaskReport {
    pub task: String,
    pub by_mode: Vec<(AggregationMode, Prf1Report)>,
    /// Absent when posts have differing annotator counts or a single annotator.
    pub kappa: Option<MultiLabelKappa>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelEvaluation {
    pub posts: usize,
    pub frames: LabelTaskReport,
    pub values: LabelTaskReport,
    pub conclusions: Option<ConclusionReport>,
    pub conclusion_kappa: Option<Kappa>,
    /// Share of (post, annotator) ratings confirming the stance.
    pub stance_confirmed_pct: Option<f64>,
}

fn task_report<L: Label>(
    task: &str,
    gold: &GoldByPost,
    store: &GraphStore,
    votes_of: fn(&AnnotationRecord) -> &BTreeSet<L>,
    pred_of: fn(&Argument) -> &BTreeSet<L>,
) -> Result<LabelTaskReport> {
    let votes: BTreeMap<PostId, Vec<BTreeSet<L>>> = gold
        .iter()
        .map(|(p, recs)| (p.clone(), recs.iter().map(|r| votes_of(r).clone()).collect()))
        .collect();
    let pred: BTreeMap<PostId, BTreeSet<L>> = gold
        .keys()
        .map(|p| {
            store
                .argument(p.as_str())
                .map(|a| (p.clone(), pred_of(a).clone()))
                .ok_or_else(|| Error::NotFound {
                    kind: "argument",
                    id: p.to_string(),
                })
        })
        .collect::<Result<_>>()?;
    let by_mode = AggregationMode::ALL
        .into_iter()
        .map(|mode| {
            let g: BTreeMap<PostId, BTreeSet<L>> =
                votes.iter().map(|(p, v)| (p.clone(), aggregate(v, mode))).collect();
            Ok((mode, prf1(&g, &pred, L::ALL)?))
        })
        .collect::<Result<_>>()?;
    Ok(LabelTaskReport {
        task: task.to_owned(),
        by_mode,
        kappa: multilabel_kappa(&votes, L::ALL).ok(),
    })
}

/// Scores the store's frame and value labels against gold annotations and
/// summarizes the conclusion-quality ratings.
pub fn evaluate_labels(store: &GraphStore, gold: &GoldByPost) -> Result<LabelEvaluation> {
    if gold.is_empty() {
        return Err(Error::EmptySubset("gold file has no usable records".into()));
    }
    let frames = task_report::<FrameClass>("frames", gold, store, |r| &r.frames, |a| &a.frames)?;
    let values = task_report::<ValueClass>("values", gold, store, |r| &r.values, |a| &a.values)?;
    let quality: BTreeMap<PostId, Vec<ConclusionQuality>> = gold
        .iter()
        .map(|(p, recs)| (p.clone(), recs.iter().filter_map(|r| r.conclusion_quality).collect::<Vec<_>>()))
        .filter(|(_, q)| !q.is_empty())
        .collect();
    let (conclusions, conclusion_kappa) = if quality.is_empty() {
        (None, None)
    } else {
        let table = rating_table(&quality, &ConclusionQuality::ALL);
        (Some(conclusion_report(&quality)), fleiss_kappa(&table).ok())
    };
    let confirmations: Vec<bool> = gold.values().flatten().filter_map(|r| r.stance_confirmed).collect();
    let stance_confirmed_pct = (!confirmations.is_empty())
        .then(|| 100.0 * confirmations.iter().filter(|c| **c).count() as f64 / confirmations.len() as f64);
    Ok(LabelEvaluation {
        posts: gold.len(),
        frames,
        values,
        conclusions,
        conclusion_kappa,
        stance_confirmed_pct,
    })
}
