//! Precomputed annotation files.
//!
//! Record shapes, one JSON object per line:
//!
//! | kind          | record                                               |
//! |---------------|------------------------------------------------------|
//! | `frames`      | `{"post_id": "p1", "frames": ["morality"]}`          |
//! | `values`      | `{"post_id": "p1", "values": ["tradition"]}`         |
//! | `conclusions` | `{"post_id": "p1", "conclusion": "Hunting is ..."}`  |
//! | `similarity`  | `{"a": "p1", "b": "p2", "score": 0.7, "source": ..}` |
//!
//! A `null` label list or conclusion marks the post as explicitly absent: it
//! counts as covered but its labels are left alone. `source` defaults to
//! `embedding_port`.
//!
//! Reading validates every record against the store without touching it;
//! attaching then applies the whole set.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{location, parse_record, read_lines};
use crate::error::{Error, Result};
use crate::labels::{FrameClass, Label, ValueClass};
use crate::model::PostId;
use crate::similarity::SimilaritySource;
use crate::store::{pair_key, GraphStore, Rejection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnnotationKind {
    Frames,
    Values,
    Conclusions,
    Similarity,
}

impl AnnotationKind {
    pub const ALL: [AnnotationKind; 4] = [
        AnnotationKind::Frames,
        AnnotationKind::Values,
        AnnotationKind::Conclusions,
        AnnotationKind::Similarity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AnnotationKind::Frames => "frames",
            AnnotationKind::Values => "values",
            AnnotationKind::Conclusions => "conclusions",
            AnnotationKind::Similarity => "similarity",
        }
    }
}

impl std::fmt::Display for AnnotationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for AnnotationKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        AnnotationKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown annotation kind '{s}'"))
    }
}

/// Validated annotations, ready to attach.
#[derive(Debug, Clone, PartialEq)]
pub enum AnnotationSet {
    Frames(BTreeMap<PostId, Option<BTreeSet<FrameClass>>>),
    Values(BTreeMap<PostId, Option<BTreeSet<ValueClass>>>),
    Conclusions(BTreeMap<PostId, Option<String>>),
    /// Canonical pair key to score, per source.
    Similarity(BTreeMap<(SimilaritySource, PostId, PostId), f64>),
}

impl AnnotationSet {
    pub fn kind(&self) -> AnnotationKind {
        match self {
            AnnotationSet::Frames(_) => AnnotationKind::Frames,
            AnnotationSet::Values(_) => AnnotationKind::Values,
            AnnotationSet::Conclusions(_) => AnnotationKind::Conclusions,
            AnnotationSet::Similarity(_) => AnnotationKind::Similarity,
        }
    }

    /// Posts the set speaks about, including explicit absences.
    pub fn covered(&self) -> BTreeSet<PostId> {
        match self {
            AnnotationSet::Frames(m) => m.keys().cloned().collect(),
            AnnotationSet::Values(m) => m.keys().cloned().collect(),
            AnnotationSet::Conclusions(m) => m.keys().cloned().collect(),
            AnnotationSet::Similarity(m) => m
                .keys()
                .flat_map(|(_, a, b)| [a.clone(), b.clone()])
                .collect(),
        }
    }

    /// Posts marked explicitly absent.
    pub fn absent(&self) -> BTreeSet<PostId> {
        fn nones<V>(m: &BTreeMap<PostId, Option<V>>) -> BTreeSet<PostId> {
            m.iter().filter(|(_, v)| v.is_none()).map(|(k, _)| k.clone()).collect()
        }
        match self {
            AnnotationSet::Frames(m) => nones(m),
            AnnotationSet::Values(m) => nones(m),
            AnnotationSet::Conclusions(m) => nones(m),
            AnnotationSet::Similarity(_) => BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnnotationSet::Frames(m) => m.len(),
            AnnotationSet::Values(m) => m.len(),
            AnnotationSet::Conclusions(m) => m.len(),
            AnnotationSet::Similarity(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationReport {
    pub kind: AnnotationKind,
    /// Non-empty lines read.
    pub records: usize,
    /// Posts updated, or similarity edges inserted.
    pub attached: usize,
    /// Records repeating an earlier record (or an edge already stored).
    pub duplicates: usize,
    pub explicit_absent: usize,
    pub rejected: Vec<Rejection>,
}

impl AnnotationReport {
    fn new(kind: AnnotationKind) -> Self {
        AnnotationReport {
            kind,
            records: 0,
            attached: 0,
            duplicates: 0,
            explicit_absent: 0,
            rejected: Vec::new(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FramesLine {
    post_id: String,
    frames: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ValuesLine {
    post_id: String,
    values: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConclusionLine {
    post_id: String,
    conclusion: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SimilarityLine {
    a: String,
    b: String,
    score: f64,
    #[serde(default)]
    source: Option<SimilaritySource>,
}

fn known_post(store: &GraphStore, id: &str) -> std::result::Result<PostId, String> {
    match store.argument(id) {
        Some(a) => Ok(a.post_id.clone()),
        None => Err(format!("unknown post_id '{id}'")),
    }
}

fn parse_labels<L: Label>(raw: Option<Vec<String>>) -> std::result::Result<Option<BTreeSet<L>>, String> {
    raw.map(|names| names.iter().map(|n| n.parse::<L>()).collect())
        .transpose()
}

/// Inserts a per-post entry; identical repeats are duplicates, differing
/// repeats are rejected.
fn stage<V: PartialEq>(
    map: &mut BTreeMap<PostId, V>,
    post: PostId,
    value: V,
    report: &mut AnnotationReport,
) -> std::result::Result<(), String> {
    match map.get(&post) {
        Some(old) if *old == value => {
            report.duplicates += 1;
            Ok(())
        }
        Some(_) => Err(format!("conflicting duplicate record for '{post}'")),
        None => {
            map.insert(post, value);
            Ok(())
        }
    }
}

/// Parses and validates an annotation file against the store.
pub fn read_annotations(
    store: &GraphStore,
    path: &Path,
    kind: AnnotationKind,
) -> Result<(AnnotationSet, AnnotationReport)> {
    let lines = read_lines(path)?;
    Ok(parse_annotations(store, kind, path, &lines))
}

/// Validates numbered record lines; `origin` prefixes rejection locations.
pub fn parse_annotations(
    store: &GraphStore,
    kind: AnnotationKind,
    origin: &Path,
    lines: &[(usize, String)],
) -> (AnnotationSet, AnnotationReport) {
    let mut report = AnnotationReport::new(kind);
    let mut set = match kind {
        AnnotationKind::Frames => AnnotationSet::Frames(BTreeMap::new()),
        AnnotationKind::Values => AnnotationSet::Values(BTreeMap::new()),
        AnnotationKind::Conclusions => AnnotationSet::Conclusions(BTreeMap::new()),
        AnnotationKind::Similarity => AnnotationSet::Similarity(BTreeMap::new()),
    };
    for (no, line) in lines {
        let (no, line) = (*no, line.as_str());
        report.records += 1;
        let outcome = (|| -> std::result::Result<(), String> {
            match &mut set {
                AnnotationSet::Frames(map) => {
                    let rec: FramesLine = parse_record(line)?;
                    let post = known_post(store, &rec.post_id)?;
                    let labels = parse_labels::<FrameClass>(rec.frames)?;
                    stage(map, post, labels, &mut report)
                }
                AnnotationSet::Values(map) => {
                    let rec: ValuesLine = parse_record(line)?;
                    let post = known_post(store, &rec.post_id)?;
                    let labels = parse_labels::<ValueClass>(rec.values)?;
                    stage(map, post, labels, &mut report)
                }
                AnnotationSet::Conclusions(map) => {
                    let rec: ConclusionLine = parse_record(line)?;
                    let post = known_post(store, &rec.post_id)?;
                    let text = rec.conclusion.map(|c| c.trim().to_owned());
                    if text.as_deref() == Some("") {
                        return Err("empty conclusion".into());
                    }
                    stage(map, post, text, &mut report)
                }
                AnnotationSet::Similarity(map) => {
                    let rec: SimilarityLine = parse_record(line)?;
                    let a = known_post(store, &rec.a)?;
                    let b = known_post(store, &rec.b)?;
                    let source = rec.source.unwrap_or(SimilaritySource::EmbeddingPort);
                    validate_score(source, &a, &b, rec.score)?;
                    let (x, y) = pair_key(&a, &b);
                    if let Some(old) = store.similarity(source, &x, &y) {
                        if old == rec.score {
                            report.duplicates += 1;
                            return Ok(());
                        }
                        return Err(format!(
                            "conflicting duplicate similarity ({old} vs {})",
                            rec.score
                        ));
                    }
                    let key = (source, x, y);
                    match map.get(&key) {
                        Some(&old) if old == rec.score => {
                            report.duplicates += 1;
                            Ok(())
                        }
                        Some(&old) => Err(format!(
                            "conflicting duplicate similarity ({old} vs {})",
                            rec.score
                        )),
                        None => {
                            map.insert(key, rec.score);
                            Ok(())
                        }
                    }
                }
            }
        })();
        if let Err(reason) = outcome {
            report.rejected.push(Rejection {
                location: location(origin, no),
                reason,
            });
        }
    }
    report.explicit_absent = set.absent().len();
    (set, report)
}

fn validate_score(source: SimilaritySource, a: &PostId, b: &PostId, score: f64) -> std::result::Result<(), String> {
    if a == b {
        return Err("self-similarity edge".into());
    }
    if !score.is_finite() || !(-1.0..=1.0).contains(&score) {
        return Err(format!("similarity {score} outside [-1, 1]"));
    }
    if source.is_concept_based() && score < 0.0 {
        return Err(format!("{source} similarity must be in [0, 1]"));
    }
    Ok(())
}

/// Applies a validated set. Returns the number of posts updated or edges
/// inserted. Explicitly absent posts are left unchanged.
pub fn attach_annotations(store: &mut GraphStore, set: &AnnotationSet) -> Result<usize> {
    let missing = |id: &PostId| Error::NotFound {
        kind: "argument",
        id: id.to_string(),
    };
    let mut n = 0;
    match set {
        AnnotationSet::Frames(m) => {
            for (post, labels) in m {
                if let Some(labels) = labels {
                    if !store.set_frames(post.as_str(), labels.clone()) {
                        return Err(missing(post));
                    }
                    n += 1;
                }
            }
        }
        AnnotationSet::Values(m) => {
            for (post, labels) in m {
                if let Some(labels) = labels {
                    if !store.set_values(post.as_str(), labels.clone()) {
                        return Err(missing(post));
                    }
                    n += 1;
                }
            }
        }
        AnnotationSet::Conclusions(m) => {
            for (post, text) in m {
                if let Some(text) = text {
                    if !store.set_conclusion(post.as_str(), text.clone()) {
                        return Err(missing(post));
                    }
                    n += 1;
                }
            }
        }
        AnnotationSet::Similarity(m) => {
            for ((source, a, b), score) in m {
                store
                    .add_similarity(*source, a, b, *score)
                    .map_err(Error::InvalidInput)?;
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Reads, validates and attaches one annotation file.
pub fn ingest_annotations(
    store: &mut GraphStore,
    path: &Path,
    kind: AnnotationKind,
) -> Result<AnnotationReport> {
    let (set, mut report) = read_annotations(store, path, kind)?;
    report.attached = attach_annotations(store, &set)?;
    Ok(report)
}
