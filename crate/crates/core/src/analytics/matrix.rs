use serde::{Deserialize, Serialize};

use super::subset::{select, ArgumentSubset, Selector};
use crate::error::{Error, Result};
use crate::labels::{FrameClass, Label, ValueClass, FRAME_COUNT, VALUE_COUNT};
use crate::model::IssueId;
use crate::store::GraphStore;

/// Joint label percentages over an argument subset. `cells[f][v]` is the
/// share of arguments carrying both frame `f` and value `v`; arguments
/// without labels still count in `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameValueMatrix {
    pub subset: String,
    pub n: usize,
    pub frames: Vec<String>,
    pub values: Vec<String>,
    pub cells: Vec<Vec<f64>>,
    /// Share of arguments with each frame.
    pub frame_marginals: Vec<f64>,
    /// Share of arguments with each value.
    pub value_marginals: Vec<f64>,
}

/// Entrywise difference in percentage points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDiff {
    pub a: String,
    pub b: String,
    pub frames: Vec<String>,
    pub values: Vec<String>,
    pub cells: Vec<Vec<f64>>,
    pub frame_marginals: Vec<f64>,
    pub value_marginals: Vec<f64>,
}

pub(crate) fn frame_names() -> Vec<String> {
    FrameClass::ALL.iter().map(|f| f.name().to_owned()).collect()
}

pub(crate) fn value_names() -> Vec<String> {
    ValueClass::ALL.iter().map(|v| v.name().to_owned()).collect()
}

fn pct(count: usize, n: usize) -> f64 {
    100.0 * count as f64 / n as f64
}

pub fn frame_value_matrix(store: &GraphStore, subset: &ArgumentSubset) -> Result<FrameValueMatrix> {
    if subset.is_empty() {
        return Err(Error::EmptySubset(subset.selector.clone()));
    }
    let mut joint = [[0usize; VALUE_COUNT]; FRAME_COUNT];
    let mut fm = [0usize; FRAME_COUNT];
    let mut vm = [0usize; VALUE_COUNT];
    for arg in subset.arguments(store) {
        for f in &arg.frames {
            fm[f.index()] += 1;
            for v in &arg.values {
                joint[f.index()][v.index()] += 1;
            }
        }
        for v in &arg.values {
            vm[v.index()] += 1;
        }
    }
    let n = subset.n;
    Ok(FrameValueMatrix {
        subset: subset.selector.clone(),
        n,
        frames: frame_names(),
        values: value_names(),
        cells: joint.iter().map(|row| row.iter().map(|&c| pct(c, n)).collect()).collect(),
        frame_marginals: fm.iter().map(|&c| pct(c, n)).collect(),
        value_marginals: vm.iter().map(|&c| pct(c, n)).collect(),
    })
}

/// Matrix of the arguments matching `selector`.
pub fn matrix_for(store: &GraphStore, selector: &Selector) -> Result<FrameValueMatrix> {
    frame_value_matrix(store, &select(store, selector)?)
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn matrix_diff(a: &FrameValueMatrix, b: &FrameValueMatrix) -> MatrixDiff {
    MatrixDiff {
        a: a.subset.clone(),
        b: b.subset.clone(),
        frames: a.frames.clone(),
        values: a.values.clone(),
        cells: a.cells.iter().zip(&b.cells).map(|(x, y)| sub(x, y)).collect(),
        frame_marginals: sub(&a.frame_marginals, &b.frame_marginals),
        value_marginals: sub(&a.value_marginals, &b.value_marginals),
    }
}

/// `‖A − B‖_F` for equally shaped row-major matrices.
pub fn frobenius_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let mut sum = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        assert_eq!(ra.len(), rb.len(), "column count mismatch");
        for (x, y) in ra.iter().zip(rb) {
            sum += (x - y) * (x - y);
        }
    }
    sum.sqrt()
}

fn issue_matrix(store: &GraphStore, id: &str) -> Result<FrameValueMatrix> {
    if store.issue(id).is_none() {
        return Err(Error::NotFound {
            kind: "issue",
            id: id.to_owned(),
        });
    }
    matrix_for(store, &Selector::issue(id))
}

/// Frobenius distance between two issues' frame–value matrices.
pub fn issue_distance(store: &GraphStore, a: &str, b: &str) -> Result<f64> {
    let (ma, mb) = (issue_matrix(store, a)?, issue_matrix(store, b)?);
    Ok(frobenius_distance(&ma.cells, &mb.cells))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IssueNeighbor {
    pub issue_id: IssueId,
    pub distance: f64,
}

/// The `k` issues closest to `issue`, ascending by distance then id. Issues
/// without arguments are skipped.
pub fn nearest_issues(store: &GraphStore, issue: &str, k: usize) -> Result<Vec<IssueNeighbor>> {
    let target = issue_matrix(store, issue)?;
    let mut out: Vec<IssueNeighbor> = store
        .issues()
        .filter(|i| i.issue_id.as_str() != issue && !i.argument_ids.is_empty())
        .map(|i| {
            let m = issue_matrix(store, i.issue_id.as_str())?;
            Ok(IssueNeighbor {
                issue_id: i.issue_id.clone(),
                distance: frobenius_distance(&target.cells, &m.cells),
            })
        })
        .collect::<Result<_>>()?;
    out.sort_by(|x, y| x.distance.total_cmp(&y.distance).then_with(|| x.issue_id.cmp(&y.issue_id)));
    out.truncate(k);
    Ok(out)
}
