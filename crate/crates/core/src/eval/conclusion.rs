use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::gold::ConclusionQuality;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConclusionReport {
    pub posts: usize,
    /// Posts per aggregated category, in best-to-worst order.
    pub counts: Vec<(ConclusionQuality, usize)>,
    /// Percentages over posts, same order.
    pub distribution: Vec<(ConclusionQuality, f64)>,
    /// Share of posts not rated inappropriate.
    pub appropriate_pct: f64,
    /// Share rated very good or generic.
    pub good_pct: f64,
}

/// Most frequent category; ties go to the worse category.
pub fn plurality(ratings: &[ConclusionQuality]) -> Option<ConclusionQuality> {
    ConclusionQuality::ALL
        .into_iter()
        .map(|q| (q, ratings.iter().filter(|r| **r == q).count()))
        .filter(|&(_, c)| c > 0)
        .max_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(q, _)| q)
}

/// Quality distribution over posts. Posts without ratings are skipped.
pub fn conclusion_report<K: Ord>(ratings: &BTreeMap<K, Vec<ConclusionQuality>>) -> ConclusionReport {
    let mut counts: BTreeMap<ConclusionQuality, usize> = ConclusionQuality::ALL.into_iter().map(|q| (q, 0)).collect();
    for q in ratings.values().filter_map(|r| plurality(r)) {
        *counts.get_mut(&q).unwrap() += 1;
    }
    let posts: usize = counts.values().sum();
    let pct = |c: usize| if posts == 0 { 0.0 } else { 100.0 * c as f64 / posts as f64 };
    let appropriate = posts - counts[&ConclusionQuality::Inappropriate];
    let good = counts[&ConclusionQuality::VeryGood] + counts[&ConclusionQuality::Generic];
    ConclusionReport {
        posts,
        distribution: counts.iter().map(|(q, c)| (*q, pct(*c))).collect(),
        counts: counts.into_iter().collect(),
        appropriate_pct: pct(appropriate),
        good_pct: pct(good),
    }
}
