use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::lexicon::{lexicon_annotate, Lexicon};
use super::prompt::build_conclusion_prompt;
use crate::error::{Error, Result};
use crate::ingest::{attach_annotations, parse_annotations, read_annotations, AnnotationKind, AnnotationSet};
use crate::model::PostId;
use crate::similarity::{concept_similarity, ConceptVariant, IdfTable, SimilaritySource};
use crate::store::{pair_key, GraphStore, Rejection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PortKind {
    FrameClassifier,
    ValueDetector,
    ConclusionGenerator,
    ArgumentSimilarity,
}

impl PortKind {
    pub fn annotation_kind(self) -> AnnotationKind {
        match self {
            PortKind::FrameClassifier => AnnotationKind::Frames,
            PortKind::ValueDetector => AnnotationKind::Values,
            PortKind::ConclusionGenerator => AnnotationKind::Conclusions,
            PortKind::ArgumentSimilarity => AnnotationKind::Similarity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PortMode {
    PrecomputedFile,
    LexiconBaseline,
    ExternalService,
}

fn default_batch_size() -> usize {
    32
}

fn default_timeout() -> u64 {
    30
}

/// One annotator port as named in the pipeline configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortConfig {
    pub kind: PortKind,
    pub mode: PortMode,
    /// Annotation file (`precomputed_file`) or lexicon file (`lexicon_baseline`
    /// for frames and values).
    #[serde(default)]
    pub path: Option<PathBuf>,
    /// Service URL for `external_service`.
    #[serde(default)]
    pub endpoint: Option<String>,
    #[serde(default = "default_batch_size")]
    pub batch_size: usize,
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
    /// Concept variant used by the similarity baseline.
    #[serde(default)]
    pub variant: Option<ConceptVariant>,
    /// Fail instead of reporting when a precomputed file leaves posts uncovered.
    #[serde(default)]
    pub require_full_coverage: bool,
}

impl PortConfig {
    pub fn new(kind: PortKind, mode: PortMode) -> Self {
        PortConfig {
            kind,
            mode,
            path: None,
            endpoint: None,
            batch_size: default_batch_size(),
            timeout_secs: default_timeout(),
            variant: None,
            require_full_coverage: false,
        }
    }

    pub fn with_path(mut self, path: impl Into<PathBuf>) -> Self {
        self.path = Some(path.into());
        self
    }

    pub fn with_endpoint(mut self, url: impl Into<String>) -> Self {
        self.endpoint = Some(url.into());
        self
    }

    /// Checks that the mode has what it needs.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidInput(format!("{:?} port: {msg}", self.kind)));
        match self.mode {
            PortMode::PrecomputedFile if self.path.is_none() => fail("precomputed_file mode needs a path"),
            PortMode::ExternalService if self.endpoint.is_none() => {
                fail("external_service mode needs an endpoint")
            }
            PortMode::ExternalService if self.batch_size == 0 => fail("batch_size must be positive"),
            PortMode::LexiconBaseline => match self.kind {
                PortKind::ConclusionGenerator => fail("no lexicon baseline for conclusions"),
                PortKind::FrameClassifier | PortKind::ValueDetector if self.path.is_none() => {
                    fail("lexicon_baseline mode needs a lexicon path")
                }
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub kind: PortKind,
    pub mode: PortMode,
    /// Posts in scope.
    pub total: usize,
    /// Posts labeled (or touched by at least one similarity edge).
    pub covered: usize,
    pub explicit_absent: Vec<PostId>,
    pub uncovered: Vec<PostId>,
    /// Posts updated or edges inserted.
    pub attached: usize,
    pub duplicates: usize,
    pub rejected: Vec<Rejection>,
}

/// Runs one port over `posts` (all arguments when `None`) and attaches its
/// output. Nothing is attached when any part of the run fails.
pub fn apply_port(
    store: &mut GraphStore,
    config: &PortConfig,
    posts: Option<&[PostId]>,
) -> Result<CoverageReport> {
    config.validate()?;
    let scope: BTreeSet<PostId> = match posts {
        Some(p) => {
            for id in p {
                if store.argument(id.as_str()).is_none() {
                    return Err(Error::NotFound {
                        kind: "argument",
                        id: id.to_string(),
                    });
                }
            }
            p.iter().cloned().collect()
        }
        None => store.arguments().map(|a| a.post_id.clone()).collect(),
    };
    let kind = config.kind.annotation_kind();
    let (mut set, duplicates, rejected) = match config.mode {
        PortMode::PrecomputedFile => {
            let (set, report) = read_annotations(store, config.path.as_deref().unwrap(), kind)?;
            (set, report.duplicates, report.rejected)
        }
        PortMode::LexiconBaseline => (lexicon_set(store, config, &scope)?, 0, Vec::new()),
        PortMode::ExternalService => {
            let (set, report) = service_set(store, config, &scope)?;
            (set, report.0, report.1)
        }
    };
    restrict(&mut set, &scope);

    let covered_all = set.covered();
    let explicit_absent: Vec<PostId> = set.absent().into_iter().collect();
    let uncovered: Vec<PostId> = scope.iter().filter(|p| !covered_all.contains(*p)).cloned().collect();
    if config.require_full_coverage && !uncovered.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{} of {} posts uncovered (first: {})",
            uncovered.len(),
            scope.len(),
            uncovered[0]
        )));
    }
    let attached = attach_annotations(store, &set)?;
    Ok(CoverageReport {
        kind: config.kind,
        mode: config.mode,
        total: scope.len(),
        covered: scope.len() - uncovered.len(),
        explicit_absent,
        uncovered,
        attached,
        duplicates,
        rejected,
    })
}

/// Drops entries about posts outside the scope. A similarity edge stays when
/// either end is in scope.
fn restrict(set: &mut AnnotationSet, scope: &BTreeSet<PostId>) {
    match set {
        AnnotationSet::Frames(m) => m.retain(|k, _| scope.contains(k)),
        AnnotationSet::Values(m) => m.retain(|k, _| scope.contains(k)),
        AnnotationSet::Conclusions(m) => m.retain(|k, _| scope.contains(k)),
        AnnotationSet::Similarity(m) => m.retain(|(_, a, b), _| scope.contains(a) || scope.contains(b)),
    }
}

/// Unordered same-issue pairs with at least one end in scope.
fn issue_pairs(store: &GraphStore, scope: &BTreeSet<PostId>) -> Vec<(PostId, PostId)> {
    let mut pairs = BTreeSet::new();
    for issue in store.issues() {
        let ids = &issue.argument_ids;
        for (i, a) in ids.iter().enumerate() {
            for b in &ids[i + 1..] {
                if scope.contains(a) || scope.contains(b) {
                    pairs.insert(pair_key(a, b));
                }
            }
        }
    }
    pairs.into_iter().collect()
}

fn lexicon_set(store: &GraphStore, config: &PortConfig, scope: &BTreeSet<PostId>) -> Result<AnnotationSet> {
    let args = scope.iter().map(|p| store.argument(p.as_str()).expect("scope checked"));
    Ok(match config.kind {
        PortKind::FrameClassifier => {
            let lex = Lexicon::load(config.path.as_deref().unwrap())?;
            AnnotationSet::Frames(
                args.map(|a| (a.post_id.clone(), Some(lexicon_annotate(a, &lex.frames))))
                    .collect(),
            )
        }
        PortKind::ValueDetector => {
            let lex = Lexicon::load(config.path.as_deref().unwrap())?;
            AnnotationSet::Values(
                args.map(|a| (a.post_id.clone(), Some(lexicon_annotate(a, &lex.values))))
                    .collect(),
            )
        }
        PortKind::ArgumentSimilarity => {
            let variant = config.variant.unwrap_or(ConceptVariant::Idf);
            let source = match variant {
                ConceptVariant::Jaccard => SimilaritySource::Jaccard,
                ConceptVariant::Idf => SimilaritySource::Idf,
                ConceptVariant::Tfidf => SimilaritySource::Tfidf,
            };
            let concepts = store.concept_store().ok_or(Error::MissingConceptStore)?;
            let idf = IdfTable::from_store(concepts);
            let mut edges = BTreeMap::new();
            for (a, b) in issue_pairs(store, scope) {
                if let (Some(ga), Some(gb)) = (store.concept_graph(a.as_str()), store.concept_graph(b.as_str())) {
                    let s = concept_similarity(ga, gb, variant, &idf);
                    if !s.undefined && store.similarity(source, &a, &b).is_none() {
                        edges.insert((source, a, b), s.score);
                    }
                }
            }
            AnnotationSet::Similarity(edges)
        }
        PortKind::ConclusionGenerator => unreachable!("rejected by validate"),
    })
}


fn service_items(store: &GraphStore, kind: PortKind, scope: &BTreeSet<PostId>) -> Result<Vec<Value>> {
    if kind == PortKind::ArgumentSimilarity {
        return Ok(issue_pairs(store, scope)
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (store.argument(a.as_str()).unwrap(), store.argument(b.as_str()).unwrap());
                json!({ "a": a, "b": b, "text_a": x.premise, "text_b": y.premise })
            })
            .collect());
    }
    scope
        .iter()
        .map(|p| {
            let arg = store.argument(p.as_str()).unwrap();
            let mut item = json!({
                "post_id": arg.post_id,
                "stance": arg.stance,
                "header": arg.header,
                "premise": arg.premise,
            });
            if kind == PortKind::ConclusionGenerator {
                let topic = &store.issue(arg.issue_id.as_str()).unwrap().question;
                let prompt = build_conclusion_prompt(topic, &arg.premise, arg.stance)?;
                item["prompt"] = json!(prompt.rendered_prompt);
                item["max_tokens"] = json!(prompt.max_tokens);
                item["decoding"] = serde_json::to_value(&prompt.metadata).unwrap();
            }
            Ok(item)
        })
        .collect()
}

#[derive(Deserialize)]
struct ServiceResponse {
    results: Vec<Value>,
}

fn call_service(agent: &ureq::Agent, url: &str, body: &Value) -> std::result::Result<Vec<Value>, String> {
    let mut resp = agent.post(url).send_json(body).map_err(|e| e.to_string())?;
    let parsed: ServiceResponse = resp
        .body_mut()
        .read_json()
        .map_err(|e| format!("bad response body: {e}"))?;
    Ok(parsed.results)
}

/// Calls the service batch by batch. Results are validated like file records;
/// any failed batch aborts the run before anything is attached.
fn service_set(
    store: &GraphStore,
    config: &PortConfig,
    scope: &BTreeSet<PostId>,
) -> Result<(AnnotationSet, (usize, Vec<Rejection>))> {
    let url = config.endpoint.as_deref().unwrap();
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs(config.timeout_secs)))
        .build()
        .into();
    let items = service_items(store, config.kind, scope)?;
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (i, batch) in items.chunks(config.batch_size).enumerate() {
        match call_service(&agent, url, &json!({ "kind": config.kind, "items": batch })) {
            Ok(results) => lines.extend(results.iter().map(Value::to_string)),
            Err(e) => failures.push(format!("batch {i}: {e}")),
        }
    }
    if !failures.is_empty() {
        return Err(Error::Service(failures.join("; ")));
    }
    let numbered: Vec<(usize, String)> = lines.into_iter().enumerate().map(|(i, l)| (i + 1, l)).collect();
    let (set, report) = parse_annotations(store, config.kind.annotation_kind(), Path::new(url), &numbered);
    Ok((set, (report.duplicates, report.rejected)))
}
