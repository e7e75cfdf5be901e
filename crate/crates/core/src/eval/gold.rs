//! Gold annotation files, one JSON record per line.
//!
//! Label records:
//! `{"post_id": "p1", "annotator_id": "x", "frames": ["morality"], "values": [],
//!   "conclusion_quality": "generic", "stance_confirmed": true}`
//!
//! Relative similarity records:
//! `{"main": "p1", "a1": "p2", "a2": "p3", "task": "similar", "labels": ["a1", "equal", "a1"]}`

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ingest::read_record_lines;
use crate::labels::{FrameClass, ValueClass};
use crate::model::PostId;
use crate::similarity::RelativeLabel;
use crate::store::{GraphStore, Rejection};

/// Conclusion quality categories, from best to worst.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConclusionQuality {
    VeryGood,
    Generic,
    Incomplete,
    Inappropriate,
}

impl ConclusionQuality {
    pub const ALL: [ConclusionQuality; 4] = [
        ConclusionQuality::VeryGood,
        ConclusionQuality::Generic,
        ConclusionQuality::Incomplete,
        ConclusionQuality::Inappropriate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConclusionQuality::VeryGood => "very_good",
            ConclusionQuality::Generic => "generic",
            ConclusionQuality::Incomplete => "incomplete",
            ConclusionQuality::Inappropriate => "inappropriate",
        }
    }
}

impl std::fmt::Display for ConclusionQuality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnotationRecord {
    pub post_id: PostId,
    pub annotator_id: String,
    #[serde(default)]
    pub frames: BTreeSet<FrameClass>,
    #[serde(default)]
    pub values: BTreeSet<ValueClass>,
    #[serde(default)]
    pub conclusion_quality: Option<ConclusionQuality>,
    #[serde(default)]
    pub stance_confirmed: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelativeTask {
    /// Both candidates share the main argument's stance.
    Similar,
    /// Both candidates oppose it.
    Counter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelativeGold {
    pub main: PostId,
    pub a1: PostId,
    pub a2: PostId,
    pub task: RelativeTask,
    /// One label per annotator.
    pub labels: Vec<RelativeLabel>,
}

impl RelativeGold {
    /// Plurality label; ties resolve to `equal`.
    pub fn gold_label(&self) -> RelativeLabel {
        let count = |l: RelativeLabel| self.labels.iter().filter(|x| **x == l).count();
        let (a1, a2, eq) = (count(RelativeLabel::A1), count(RelativeLabel::A2), count(RelativeLabel::Equal));
        if a1 > a2 && a1 > eq {
            RelativeLabel::A1
        } else if a2 > a1 && a2 > eq {
            RelativeLabel::A2
        } else {
            RelativeLabel::Equal
        }
    }

    fn validate(&self, store: Option<&GraphStore>) -> std::result::Result<(), String> {
        if self.a1 == self.a2 || self.a1 == self.main || self.a2 == self.main {
            return Err("main, a1 and a2 must be distinct".into());
        }
        if self.labels.is_empty() {
            return Err("no annotator labels".into());
        }
        let Some(store) = store else { return Ok(()) };
        let get = |p: &PostId| store.argument(p.as_str()).ok_or_else(|| format!("unknown post_id '{p}'"));
        let (m, x, y) = (get(&self.main)?, get(&self.a1)?, get(&self.a2)?);
        let want = match self.task {
            RelativeTask::Similar => m.stance,
            RelativeTask::Counter => m.stance.opposite(),
        };
        if x.stance != want || y.stance != want {
            return Err(format!("candidate stances do not fit the {:?} task", self.task).to_lowercase());
        }
        Ok(())
    }
}

/// Gold label records grouped by post, in file order per post.
pub type GoldByPost = BTreeMap<PostId, Vec<AnnotationRecord>>;

/// Reads label gold. With a store, records about unknown posts are rejected.
/// One annotator labeling the same post twice is rejected.
pub fn read_gold(path: &Path, store: Option<&GraphStore>) -> Result<(GoldByPost, Vec<Rejection>)> {
    let mut out: GoldByPost = BTreeMap::new();
    let mut rejected = Vec::new();
    for (loc, parsed) in read_record_lines::<AnnotationRecord>(path)? {
        let check = parsed.and_then(|r| {
            if store.is_some_and(|s| s.argument(r.post_id.as_str()).is_none()) {
                return Err(format!("unknown post_id '{}'", r.post_id));
            }
            let list = out.entry(r.post_id.clone()).or_default();
            if list.iter().any(|x| x.annotator_id == r.annotator_id) {
                return Err(format!("annotator '{}' labeled '{}' twice", r.annotator_id, r.post_id));
            }
            list.push(r);
            Ok(())
        });
        if let Err(reason) = check {
            rejected.push(Rejection { location: loc, reason });
        }
    }
    Ok((out, rejected))
}

pub fn read_relative_gold(path: &Path, store: Option<&GraphStore>) -> Result<(Vec<RelativeGold>, Vec<Rejection>)> {
    let mut out = Vec::new();
    let mut rejected = Vec::new();
    for (loc, parsed) in read_record_lines::<RelativeGold>(path)? {
        match parsed.and_then(|g| g.validate(store).map(|_| g)) {
            Ok(g) => out.push(g),
            Err(reason) => rejected.push(Rejection { location: loc, reason }),
        }
    }
    Ok((out, rejected))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gold(labels: &[RelativeLabel]) -> RelativeGold {
        RelativeGold {
            main: "m".into(),
            a1: "x".into(),
            a2: "y".into(),
            task: RelativeTask::Similar,
            labels: labels.to_vec(),
        }
    }

    #[test]
    fn plurality_with_ties_to_equal() {
        use RelativeLabel::*;
        assert_eq!(gold(&[A1, A1, A2]).gold_label(), A1);
        assert_eq!(gold(&[A1, A2, Equal]).gold_label(), Equal);
        assert_eq!(gold(&[A1, A2]).gold_label(), Equal);
        assert_eq!(gold(&[A2]).gold_label(), A2);
    }
}
