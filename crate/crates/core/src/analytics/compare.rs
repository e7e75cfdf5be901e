use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::matrix::{frame_value_matrix, matrix_diff, FrameValueMatrix, MatrixDiff};
use super::subset::ArgumentSubset;
use crate::camps::{CampDimension, UNKNOWN};
use crate::error::{Error, Result};
use crate::model::{Argument, IssueId};
use crate::store::GraphStore;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryParticipation {
    pub category: String,
    /// Share of camp A's in-scope arguments posted under this category.
    pub share_a: f64,
    pub share_b: f64,
    pub delta_pp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampComparison {
    pub dimension: CampDimension,
    pub camp_a: String,
    pub camp_b: String,
    pub authors_a: usize,
    pub authors_b: usize,
    pub matrix_a: FrameValueMatrix,
    pub matrix_b: FrameValueMatrix,
    pub diff: MatrixDiff,
    pub participation: Vec<CategoryParticipation>,
}

fn in_scope(arg: &Argument, scope: Option<&BTreeSet<IssueId>>) -> bool {
    scope.is_none_or(|s| s.contains(&arg.issue_id))
}

/// Frame–value profiles and issue-category participation of two camps.
/// Only arguments by authors with a known camp on `dimension` count;
/// `scope` limits the issues considered.
pub fn camp_comparison(
    store: &GraphStore,
    dimension: CampDimension,
    camp_a: &str,
    camp_b: &str,
    scope: Option<&BTreeSet<IssueId>>,
) -> Result<CampComparison> {
    let mut camps = Vec::new();
    for raw in [camp_a, camp_b] {
        let camp = dimension
            .camp(raw)
            .ok_or_else(|| Error::invalid(format!("unknown {dimension} camp '{raw}'")))?;
        if camp == UNKNOWN {
            return Err(Error::invalid("the unknown camp cannot be compared"));
        }
        camps.push(camp);
    }
    if let Some(scope) = scope {
        for id in scope {
            if store.issue(id.as_str()).is_none() {
                return Err(Error::NotFound {
                    kind: "issue",
                    id: id.to_string(),
                });
            }
        }
    }
    let members = |camp: &str| -> (ArgumentSubset, usize) {
        let mut authors = BTreeSet::new();
        let posts: Vec<_> = store
            .arguments()
            .filter(|a| in_scope(a, scope))
            .filter(|a| {
                let author = a.author_id.as_ref();
                match author.and_then(|id| store.camps(id.as_str())) {
                    Some(c) if c.camp(dimension) == camp => {
                        authors.insert(author.unwrap().clone());
                        true
                    }
                    _ => false,
                }
            })
            .map(|a| a.post_id.clone())
            .collect();
        (ArgumentSubset::from_members(format!("camp.{dimension}:{camp}"), posts), authors.len())
    };
    let (sub_a, authors_a) = members(camps[0]);
    let (sub_b, authors_b) = members(camps[1]);
    for (n, camp) in [(authors_a, camps[0]), (authors_b, camps[1])] {
        if n == 0 {
            return Err(Error::EmptyCamp(format!("{dimension}:{camp}")));
        }
    }
    let matrix_a = frame_value_matrix(store, &sub_a)?;
    let matrix_b = frame_value_matrix(store, &sub_b)?;
    let diff = matrix_diff(&matrix_a, &matrix_b);

    let categories: BTreeSet<String> = store
        .issues()
        .filter(|i| scope.is_none_or(|s| s.contains(&i.issue_id)))
        .map(|i| i.category.clone())
        .collect();
    let shares = |sub: &ArgumentSubset| -> BTreeMap<String, f64> {
        let mut counts: BTreeMap<String, usize> = categories.iter().map(|c| (c.clone(), 0)).collect();
        for arg in sub.arguments(store) {
            let cat = &store.issue(arg.issue_id.as_str()).expect("store integrity").category;
            *counts.get_mut(cat).expect("category in scope") += 1;
        }
        counts
            .into_iter()
            .map(|(c, k)| (c, 100.0 * k as f64 / sub.n as f64))
            .collect()
    };
    let (sa, sb) = (shares(&sub_a), shares(&sub_b));
    let participation = categories
        .iter()
        .map(|c| CategoryParticipation {
            category: c.clone(),
            share_a: sa[c],
            share_b: sb[c],
            delta_pp: sa[c] - sb[c],
        })
        .collect();
    Ok(CampComparison {
        dimension,
        camp_a: camps[0].to_owned(),
        camp_b: camps[1].to_owned(),
        authors_a,
        authors_b,
        matrix_a,
        matrix_b,
        diff,
        participation,
    })
}
