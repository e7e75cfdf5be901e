use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::gold::RelativeGold;
use super::metrics::prf1;
use crate::error::{Error, Result};
use crate::model::PostId;
use crate::similarity::{map_relative, RelativeLabel, SimilarityProvider};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaRow {
    /// `None` stands for an infinite threshold.
    pub theta: Option<f64>,
    pub accuracy: f64,
    pub macro_f1: f64,
    /// F1 for a1, a2 and equal.
    pub class_f1: [f64; 3],
    pub predicted_equal: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaSweep {
    pub triples: usize,
    pub evaluated: usize,
    /// (main, candidate) pairs without a score.
    pub missing_pairs: Vec<(PostId, PostId)>,
    /// Triples skipped for a missing score.
    pub excluded: usize,
    pub gold_equal: usize,
    pub rows: Vec<ThetaRow>,
}

/// Relative-judgment accuracy and 3-class macro-F1 per threshold against the
/// plurality gold label of each triple.
pub fn theta_sweep(gold: &[RelativeGold], scores: &dyn SimilarityProvider, thetas: &[f64]) -> Result<ThetaSweep> {
    if let Some(t) = thetas.iter().find(|t| t.is_nan() || **t < 0.0) {
        return Err(Error::invalid(format!("theta must be nonnegative, got {t}")));
    }
    let mut missing = BTreeSet::new();
    let mut usable = Vec::new();
    for g in gold {
        let s1 = scores.score(&g.main, &g.a1);
        let s2 = scores.score(&g.main, &g.a2);
        if s1.is_none() {
            missing.insert((g.main.clone(), g.a1.clone()));
        }
        if s2.is_none() {
            missing.insert((g.main.clone(), g.a2.clone()));
        }
        if let (Some(s1), Some(s2)) = (s1, s2) {
            usable.push((g.gold_label(), s1, s2));
        }
    }
    if usable.is_empty() {
        return Err(Error::EmptySubset("no triple has both similarity scores".into()));
    }
    let golds: BTreeMap<usize, BTreeSet<RelativeLabel>> =
        usable.iter().enumerate().map(|(i, (g, _, _))| (i, BTreeSet::from([*g]))).collect();
    let rows = thetas
        .iter()
        .map(|&theta| {
            let preds: BTreeMap<usize, BTreeSet<RelativeLabel>> = usable
                .iter()
                .enumerate()
                .map(|(i, (_, s1, s2))| (i, BTreeSet::from([map_relative(*s1, *s2, theta)])))
                .collect();
            let correct = usable
                .iter()
                .zip(preds.values())
                .filter(|((g, _, _), p)| p.contains(g))
                .count();
            let report = prf1(&golds, &preds, &RelativeLabel::ALL)?;
            Ok(ThetaRow {
                theta: theta.is_finite().then_some(theta),
                accuracy: correct as f64 / usable.len() as f64,
                macro_f1: report.macro_avg.f1,
                class_f1: [report.per_class[0].f1, report.per_class[1].f1, report.per_class[2].f1],
                predicted_equal: preds.values().filter(|p| p.contains(&RelativeLabel::Equal)).count(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThetaSweep {
        triples: gold.len(),
        evaluated: usable.len(),
        excluded: gold.len() - usable.len(),
        missing_pairs: missing.into_iter().collect(),
        gold_equal: usable.iter().filter(|(g, _, _)| *g == RelativeLabel::Equal).count(),
        rows,
    })
}
