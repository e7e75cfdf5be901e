//! Read-only HTTP query service over a loaded snapshot.
//!
//! Every handler is a pure function of the snapshot and the query string;
//! the only shared mutable state is a memo of embeddings by dimension.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::future::Future;
use std::sync::{Arc, Mutex};

use argkg_core::analytics::{
    camp_comparison, concept_delta, concept_delta_against, friendship_embedding, matrix_diff, matrix_for,
    nearest_issues, select, Baseline, CampComparison, ConceptDelta, FrameValueMatrix, IssueNeighbor, MatrixDiff,
    Selector, SpectralConfig, SpectralEmbedding,
};
use argkg_core::concepts::ArgumentConceptGraph;
use argkg_core::similarity::{
    provider_for, retrieve, similar_with_value, NeighborIndex, Ranked, RetrieveMode, SimilaritySource,
};
use argkg_core::{Argument, CampAssignment, CampDimension, FrameClass, GraphStore, IssueId, ValueClass};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{CliError, CliResult};

pub const DEFAULT_LIMIT: usize = 100;
pub const MAX_LIMIT: usize = 1000;
pub const DEFAULT_K: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub kind: String,
    pub message: String,
    /// Offending query parameter or selector field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl ApiError {
    fn validation(field: &str, message: impl Into<String>) -> Self {
        ApiError {
            status: 400,
            kind: "validation".into(),
            message: message.into(),
            field: Some(field.to_owned()),
        }
    }

    fn not_found(kind: &str, id: &str) -> Self {
        ApiError {
            status: 404,
            kind: "not_found".into(),
            message: format!("unknown {kind} '{id}'"),
            field: None,
        }
    }
}

impl From<argkg_core::Error> for ApiError {
    fn from(e: argkg_core::Error) -> Self {
        use argkg_core::Error as E;
        let message = e.to_string();
        let (status, kind, field) = match &e {
            E::NotFound { .. } => (404, "not_found", None),
            E::Selector { field, .. } => (400, "validation", Some(format!("selector.{field}"))),
            E::InvalidInput(_) => (400, "validation", None),
            E::EmbeddingTooLarge { .. } => (400, "validation", Some("k".to_owned())),
            E::EmptySubset(_) => (422, "empty_subset", None),
            E::EmptyCamp(_) => (422, "empty_camp", None),
            E::MissingConceptStore => (422, "missing_concept_store", None),
            _ => (500, "internal", None),
        };
        ApiError {
            status,
            kind: kind.into(),
            message,
            field,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(json!({ "error": self }))).into_response()
    }
}

pub type ApiResult<T> = Result<T, ApiError>;

/// Cursor-paginated list. `next_cursor` is the id of the last item on this
/// page, absent on the final page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Page<T> {
    pub items: Vec<T>,
    pub next_cursor: Option<String>,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IssueSummary {
    pub issue_id: IssueId,
    pub question: String,
    pub category: String,
    pub arguments: usize,
    pub pro: usize,
    pub con: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IssueDetail {
    #[serde(flatten)]
    pub summary: IssueSummary,
    pub argument_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArgumentSummary {
    pub post_id: String,
    pub issue_id: String,
    pub stance: String,
    pub header: String,
    pub frames: BTreeSet<FrameClass>,
    pub values: BTreeSet<ValueClass>,
    pub author_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArgumentDetail {
    pub argument: Argument,
    pub camps: Option<CampAssignment>,
    pub concept_graph: Option<ArgumentConceptGraph>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborList {
    pub query: String,
    pub source: SimilaritySource,
    pub results: Vec<Ranked>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearestIssues {
    pub issue_id: String,
    pub neighbors: Vec<IssueNeighbor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptDeltaResponse {
    pub subset: String,
    pub baseline: String,
    pub n_subset: usize,
    pub n_baseline: usize,
    pub rows: Vec<ConceptDelta>,
}

/// Raw query parameters with per-endpoint whitelisting.
pub struct Params<'a> {
    map: &'a HashMap<String, String>,
}

impl<'a> Params<'a> {
    pub fn new(map: &'a HashMap<String, String>, allowed: &[&str]) -> ApiResult<Self> {
        let mut keys: Vec<&String> = map.keys().collect();
        keys.sort();
        if let Some(bad) = keys.into_iter().find(|k| !allowed.contains(&k.as_str())) {
            return Err(ApiError::validation(bad, format!("unknown parameter '{bad}'")));
        }
        Ok(Params { map })
    }

    pub fn get(&self, key: &str) -> Option<&'a str> {
        self.map.get(key).map(String::as_str)
    }

    pub fn parse<T: std::str::FromStr>(&self, key: &str, default: T) -> ApiResult<T>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(default),
            Some(raw) => raw
                .parse()
                .map_err(|e| ApiError::validation(key, format!("bad {key} '{raw}': {e}"))),
        }
    }

    pub fn required(&self, key: &str) -> ApiResult<&'a str> {
        self.get(key)
            .ok_or_else(|| ApiError::validation(key, format!("missing parameter '{key}'")))
    }

    pub fn selector(&self, key: &str) -> ApiResult<Selector> {
        self.get(key).unwrap_or("").parse::<Selector>().map_err(|e| {
            let mut err = ApiError::from(e);
            err.field = err.field.map(|f| f.replacen("selector", key, 1));
            err
        })
    }

    fn limit(&self) -> ApiResult<usize> {
        let limit = self.parse("limit", DEFAULT_LIMIT)?;
        if limit == 0 || limit > MAX_LIMIT {
            return Err(ApiError::validation("limit", format!("limit must be in 1..={MAX_LIMIT}")));
        }
        Ok(limit)
    }
}

fn paginate<T>(items: Vec<(String, T)>, cursor: Option<&str>, limit: usize) -> Page<T> {
    let total = items.len();
    let start = match cursor {
        Some(c) => items.partition_point(|(id, _)| id.as_str() <= c),
        None => 0,
    };
    let rest = items.len() - start;
    let page: Vec<(String, T)> = items.into_iter().skip(start).take(limit).collect();
    let next_cursor = if rest > limit {
        page.last().map(|(id, _)| id.clone())
    } else {
        None
    };
    Page {
        items: page.into_iter().map(|(_, t)| t).collect(),
        next_cursor,
        total,
    }
}

/// Shared query state: the immutable store plus per-source neighbor indexes
/// over stored similarity edges.
pub struct QueryService {
    store: GraphStore,
    indexes: BTreeMap<SimilaritySource, NeighborIndex>,
    embeddings: Mutex<HashMap<usize, Arc<SpectralEmbedding>>>,
}

impl QueryService {
    pub fn new(store: GraphStore) -> Self {
        let indexes = store
            .similarity_sources()
            .collect::<Vec<_>>()
            .into_iter()
            .map(|s| (s, NeighborIndex::build(&store, s)))
            .collect();
        QueryService {
            store,
            indexes,
            embeddings: Mutex::new(HashMap::new()),
        }
    }

    pub fn store(&self) -> &GraphStore {
        &self.store
    }

    /// Stored sources, embedding edges first.
    pub fn default_source(&self) -> Option<SimilaritySource> {
        self.indexes.keys().next().copied()
    }

    fn source(&self, p: &Params) -> ApiResult<SimilaritySource> {
        match p.get("source") {
            Some(raw) => raw.parse().map_err(|e: String| ApiError::validation("source", e)),
            None => self
                .default_source()
                .ok_or_else(|| ApiError::validation("source", "snapshot has no similarity edges; name a source")),
        }
    }

    fn issue_summary(&self, id: &str) -> ApiResult<IssueSummary> {
        let issue = self.store.issue(id).ok_or_else(|| ApiError::not_found("issue", id))?;
        let (mut pro, mut con) = (0, 0);
        for a in self.store.arguments_of(issue) {
            match a.stance {
                argkg_core::Stance::Pro => pro += 1,
                argkg_core::Stance::Con => con += 1,
            }
        }
        Ok(IssueSummary {
            issue_id: issue.issue_id.clone(),
            question: issue.question.clone(),
            category: issue.category.clone(),
            arguments: issue.argument_ids.len(),
            pro,
            con,
        })
    }

    pub fn health(&self) -> serde_json::Value {
        json!({
            "status": "ok",
            "issues": self.store.issue_count(),
            "arguments": self.store.argument_count(),
            "authors": self.store.author_count(),
            "similarity_sources": self.indexes.keys().collect::<Vec<_>>(),
        })
    }

    pub fn issues(&self, p: &Params) -> ApiResult<Page<IssueSummary>> {
        let mut items = Vec::new();
        for issue in self.store.issues() {
            let id = issue.issue_id.as_str();
            items.push((id.to_owned(), self.issue_summary(id)?));
        }
        items.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(paginate(items, p.get("cursor"), p.limit()?))
    }

    pub fn issue(&self, id: &str) -> ApiResult<IssueDetail> {
        let summary = self.issue_summary(id)?;
        let issue = self.store.issue(id).expect("checked");
        Ok(IssueDetail {
            summary,
            argument_ids: issue.argument_ids.iter().map(|p| p.to_string()).collect(),
        })
    }

    pub fn nearest(&self, id: &str, p: &Params) -> ApiResult<NearestIssues> {
        if self.store.issue(id).is_none() {
            return Err(ApiError::not_found("issue", id));
        }
        let k = p.parse("k", 5usize)?;
        Ok(NearestIssues {
            issue_id: id.to_owned(),
            neighbors: nearest_issues(&self.store, id, k)?,
        })
    }

    pub fn arguments(&self, p: &Params) -> ApiResult<Page<ArgumentSummary>> {
        let sel = p.selector("selector")?;
        let subset = select(&self.store, &sel)?;
        let items = subset
            .arguments(&self.store)
            .map(|a| {
                (
                    a.post_id.to_string(),
                    ArgumentSummary {
                        post_id: a.post_id.to_string(),
                        issue_id: a.issue_id.to_string(),
                        stance: a.stance.to_string(),
                        header: a.header.clone(),
                        frames: a.frames.clone(),
                        values: a.values.clone(),
                        author_id: a.author_id.as_ref().map(|x| x.to_string()),
                    },
                )
            })
            .collect();
        Ok(paginate(items, p.get("cursor"), p.limit()?))
    }

    pub fn argument(&self, id: &str) -> ApiResult<ArgumentDetail> {
        let a = self.store.argument(id).ok_or_else(|| ApiError::not_found("argument", id))?;
        let camps = a.author_id.as_ref().and_then(|x| self.store.camps(x.as_str())).cloned();
        Ok(ArgumentDetail {
            argument: a.clone(),
            camps,
            concept_graph: self.store.concept_graph(id).cloned(),
        })
    }

    pub fn retrieve(&self, id: &str, p: &Params) -> ApiResult<NeighborList> {
        if self.store.argument(id).is_none() {
            return Err(ApiError::not_found("argument", id));
        }
        let mode: RetrieveMode = p.parse("mode", RetrieveMode::Support)?;
        let k = p.parse("k", DEFAULT_K)?;
        let widen = p.parse("widen", false)?;
        let source = match p.get("source") {
            Some(_) => self.source(p)?,
            None => self.default_source().unwrap_or(SimilaritySource::Idf),
        };
        let provider = provider_for(&self.store, source);
        Ok(NeighborList {
            query: id.to_owned(),
            source,
            results: retrieve(&self.store, id, mode, k, provider.as_ref(), widen)?,
        })
    }

    pub fn similar_with_value(&self, id: &str, p: &Params) -> ApiResult<NeighborList> {
        if self.store.argument(id).is_none() {
            return Err(ApiError::not_found("argument", id));
        }
        let label = |key: &str| -> ApiResult<ValueClass> {
            p.required(key)?
                .parse()
                .map_err(|e: String| ApiError::validation(key, e))
        };
        let (include, exclude) = (label("include")?, label("exclude")?);
        if include == exclude {
            return Err(ApiError::validation("exclude", "include and exclude values must differ"));
        }
        let k = p.parse("k", DEFAULT_K)?;
        let source = self.source(p)?;
        let empty = NeighborIndex::default();
        let index = self.indexes.get(&source).unwrap_or(&empty);
        Ok(NeighborList {
            query: id.to_owned(),
            source,
            results: similar_with_value(&self.store, index, id, include, exclude, k)?,
        })
    }

    pub fn matrix(&self, p: &Params) -> ApiResult<FrameValueMatrix> {
        Ok(matrix_for(&self.store, &p.selector("selector")?)?)
    }

    pub fn matrix_diff(&self, p: &Params) -> ApiResult<MatrixDiff> {
        let a = matrix_for(&self.store, &p.selector("a")?)?;
        let b = matrix_for(&self.store, &p.selector("b")?)?;
        Ok(matrix_diff(&a, &b))
    }

    pub fn concept_delta(&self, p: &Params) -> ApiResult<ConceptDeltaResponse> {
        let subset = select(&self.store, &p.selector("selector")?)?;
        let baseline: Baseline = p.parse("baseline", Baseline::Complement)?;
        let base = match (p.get("within"), baseline) {
            (Some(_), Baseline::Complement) => select(&self.store, &p.selector("within")?)?.minus(&subset),
            (Some(_), Baseline::Global) => {
                return Err(ApiError::validation("within", "within applies to the complement baseline only"))
            }
            (None, Baseline::Global) => argkg_core::analytics::ArgumentSubset::from_members(
                "all",
                self.store.arguments().map(|a| a.post_id.clone()),
            ),
            (None, Baseline::Complement) => subset.complement(&self.store),
        };
        let mut rows = match p.get("within") {
            Some(_) => concept_delta_against(&self.store, &subset, &base)?,
            None => concept_delta(&self.store, &subset, baseline)?,
        };
        if let Some(limit) = p.get("limit") {
            let limit: usize = limit
                .parse()
                .map_err(|_| ApiError::validation("limit", format!("bad limit '{limit}'")))?;
            rows.truncate(limit);
        }
        Ok(ConceptDeltaResponse {
            subset: subset.selector.clone(),
            baseline: base.selector.clone(),
            n_subset: subset.n,
            n_baseline: base.n,
            rows,
        })
    }

    pub fn camps_compare(&self, p: &Params) -> ApiResult<CampComparison> {
        let dimension: CampDimension = p
            .required("dimension")?
            .parse()
            .map_err(|e: String| ApiError::validation("dimension", e))?;
        let (a, b) = (p.required("a")?, p.required("b")?);
        for (key, camp) in [("a", a), ("b", b)] {
            if dimension.camp(camp).is_none() {
                return Err(ApiError::validation(key, format!("unknown {dimension} camp '{camp}'")));
            }
        }
        let scope: Option<BTreeSet<IssueId>> = p.get("issues").map(|s| {
            s.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(IssueId::new)
                .collect()
        });
        if let Some(scope) = &scope {
            if let Some(missing) = scope.iter().find(|i| self.store.issue(i.as_str()).is_none()) {
                return Err(ApiError::not_found("issue", missing.as_str()));
            }
        }
        Ok(camp_comparison(&self.store, dimension, a, b, scope.as_ref())?)
    }

    pub fn embedding(&self, p: &Params) -> ApiResult<Arc<SpectralEmbedding>> {
        let k = p.parse("k", 2usize)?;
        if let Some(e) = self.embeddings.lock().expect("embedding memo").get(&k) {
            return Ok(e.clone());
        }
        let e = Arc::new(friendship_embedding(&self.store, k, &SpectralConfig::default())?);
        self.embeddings.lock().expect("embedding memo").insert(k, e.clone());
        Ok(e)
    }
}

type Svc = State<Arc<QueryService>>;
type Q = Query<HashMap<String, String>>;

const PAGE: &[&str] = &["cursor", "limit"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    base.iter().chain(extra).copied().collect()
}

async fn health(State(s): Svc) -> Json<serde_json::Value> {
    Json(s.health())
}

async fn issues(State(s): Svc, Query(q): Q) -> ApiResult<Json<Page<IssueSummary>>> {
    Ok(Json(s.issues(&Params::new(&q, PAGE)?)?))
}

async fn issue(State(s): Svc, Path(id): Path<String>, Query(q): Q) -> ApiResult<Json<IssueDetail>> {
    Params::new(&q, &[])?;
    Ok(Json(s.issue(&id)?))
}

async fn nearest(State(s): Svc, Path(id): Path<String>, Query(q): Q) -> ApiResult<Json<NearestIssues>> {
    Ok(Json(s.nearest(&id, &Params::new(&q, &["k"])?)?))
}

async fn arguments(State(s): Svc, Query(q): Q) -> ApiResult<Json<Page<ArgumentSummary>>> {
    Ok(Json(s.arguments(&Params::new(&q, &with(PAGE, &["selector"]))?)?))
}

async fn argument(State(s): Svc, Path(id): Path<String>, Query(q): Q) -> ApiResult<Json<ArgumentDetail>> {
    Params::new(&q, &[])?;
    Ok(Json(s.argument(&id)?))
}

async fn retrieve_h(State(s): Svc, Path(id): Path<String>, Query(q): Q) -> ApiResult<Json<NeighborList>> {
    Ok(Json(s.retrieve(&id, &Params::new(&q, &["mode", "k", "source", "widen"])?)?))
}

async fn swap(State(s): Svc, Path(id): Path<String>, Query(q): Q) -> ApiResult<Json<NeighborList>> {
    let p = Params::new(&q, &["include", "exclude", "k", "source"])?;
    Ok(Json(s.similar_with_value(&id, &p)?))
}

async fn matrix(State(s): Svc, Query(q): Q) -> ApiResult<Json<FrameValueMatrix>> {
    Ok(Json(s.matrix(&Params::new(&q, &["selector"])?)?))
}

async fn diff(State(s): Svc, Query(q): Q) -> ApiResult<Json<MatrixDiff>> {
    Ok(Json(s.matrix_diff(&Params::new(&q, &["a", "b"])?)?))
}

async fn delta(State(s): Svc, Query(q): Q) -> ApiResult<Json<ConceptDeltaResponse>> {
    let p = Params::new(&q, &["selector", "baseline", "within", "limit"])?;
    Ok(Json(s.concept_delta(&p)?))
}

async fn camps(State(s): Svc, Query(q): Q) -> ApiResult<Json<CampComparison>> {
    Ok(Json(s.camps_compare(&Params::new(&q, &["dimension", "a", "b", "issues"])?)?))
}

async fn embedding(State(s): Svc, Query(q): Q) -> ApiResult<Json<SpectralEmbedding>> {
    Ok(Json((*s.embedding(&Params::new(&q, &["k"])?)?).clone()))
}

async fn fallback() -> ApiError {
    ApiError {
        status: 404,
        kind: "not_found".into(),
        message: "no such endpoint".into(),
        field: None,
    }
}

pub fn router(service: Arc<QueryService>) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/issues", get(issues))
        .route("/issues/{id}", get(issue))
        .route("/issues/{id}/nearest", get(nearest))
        .route("/arguments", get(arguments))
        .route("/arguments/{id}", get(argument))
        .route("/arguments/{id}/retrieve", get(retrieve_h))
        .route("/arguments/{id}/similar_with_value", get(swap))
        .route("/matrix", get(matrix))
        .route("/matrix/diff", get(diff))
        .route("/concepts/delta", get(delta))
        .route("/camps/compare", get(camps))
        .route("/embedding", get(embedding))
        .fallback(fallback)
        .with_state(service)
}

/// Binds `addr`, prints one `{"listening": ...}` line and serves until
/// `shutdown` resolves.
pub async fn serve(
    service: Arc<QueryService>,
    addr: &str,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> CliResult<()> {
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|e| CliError::Server(format!("cannot bind {addr}: {e}")))?;
    let local = listener.local_addr().map_err(|e| CliError::Server(e.to_string()))?;
    println!("{}", json!({ "listening": local.to_string() }));
    axum::serve(listener, router(service))
        .with_graceful_shutdown(shutdown)
        .await
        .map_err(|e| CliError::Server(e.to_string()))
}
