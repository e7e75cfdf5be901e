//! In-memory graph store.
//!
//! The store is built by a single writer (ingest, linking, annotation) and
//! then shared read-only. Every id reference it holds resolves: arguments
//! point at existing issues and authors, similarity edges and concept graphs
//! at existing arguments, friend lists at existing authors.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::camps::{assign_camps, CampAssignment};
use crate::concepts::{ArgumentConceptGraph, ConceptStore};
use crate::labels::{FrameClass, Label, ValueClass};
use crate::model::{Argument, AuthorId, AuthorProfile, Issue, IssueId, PostId, Stance};
use crate::similarity::SimilaritySource;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IssueRecord {
    pub issue_id: String,
    pub question: String,
    #[serde(default)]
    pub category: String,
}

/// Unvalidated argument as read from input files.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ArgumentRecord {
    pub post_id: String,
    pub issue_id: String,
    pub stance: String,
    #[serde(default)]
    pub header: String,
    pub premise: String,
    #[serde(default)]
    pub conclusion: Option<String>,
    #[serde(default)]
    pub frames: Vec<String>,
    #[serde(default)]
    pub values: Vec<String>,
    #[serde(default)]
    pub author_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Entity {
    Issue(IssueRecord),
    Argument(ArgumentRecord),
    Author(AuthorProfile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    /// Record id, or `file:line` for file ingest.
    pub location: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub issues: usize,
    pub arguments: usize,
    pub authors: usize,
    pub rejected: Vec<Rejection>,
}

impl IngestReport {
    pub fn reject(&mut self, location: impl Into<String>, reason: impl Into<String>) {
        self.rejected.push(Rejection {
            location: location.into(),
            reason: reason.into(),
        });
    }

    pub fn merge(&mut self, other: IngestReport) {
        self.issues += other.issues;
        self.arguments += other.arguments;
        self.authors += other.authors;
        self.rejected.extend(other.rejected);
    }
}

/// Outcome of inserting one similarity record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeInsert {
    Inserted,
    /// Same pair with the same score already present.
    Duplicate,
}

/// Canonical key of an unordered post pair.
pub fn pair_key(a: &PostId, b: &PostId) -> (PostId, PostId) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

#[derive(Debug, Clone, Default)]
pub struct GraphStore {
    pub(crate) issues: BTreeMap<IssueId, Issue>,
    pub(crate) arguments: BTreeMap<PostId, Argument>,
    pub(crate) authors: BTreeMap<AuthorId, AuthorProfile>,
    pub(crate) camps: BTreeMap<AuthorId, CampAssignment>,
    pub(crate) concept_graphs: BTreeMap<PostId, ArgumentConceptGraph>,
    pub(crate) similarity: BTreeMap<SimilaritySource, BTreeMap<(PostId, PostId), f64>>,
    pub(crate) concept_store: Option<ConceptStore>,
    /// Friend references to authors not yet inserted.
    pending_friends: BTreeMap<AuthorId, BTreeSet<AuthorId>>,
}

/// Structural equality of the persisted state; unresolved friend references
/// are not part of it.
impl PartialEq for GraphStore {
    fn eq(&self, other: &Self) -> bool {
        self.issues == other.issues
            && self.arguments == other.arguments
            && self.authors == other.authors
            && self.camps == other.camps
            && self.concept_graphs == other.concept_graphs
            && self.similarity == other.similarity
            && self.concept_store == other.concept_store
    }
}

fn parse_labels<L: Label>(raw: &[String]) -> Result<BTreeSet<L>, String> {
    raw.iter().map(|r| r.parse::<L>()).collect()
}

impl GraphStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a batch in order. Each record is validated in full before it
    /// touches the store; invalid records are reported and skipped.
    pub fn add_entities(&mut self, batch: impl IntoIterator<Item = Entity>) -> IngestReport {
        let mut report = IngestReport::default();
        for entity in batch {
            match entity {
                Entity::Issue(rec) => match self.add_issue(rec.clone()) {
                    Ok(()) => report.issues += 1,
                    Err(reason) => report.reject(rec.issue_id, reason),
                },
                Entity::Argument(rec) => {
                    let id = rec.post_id.clone();
                    match self.add_argument(rec) {
                        Ok(()) => report.arguments += 1,
                        Err(reason) => report.reject(id, reason),
                    }
                }
                Entity::Author(profile) => {
                    let id = profile.author_id.to_string();
                    match self.add_author(profile) {
                        Ok(()) => report.authors += 1,
                        Err(reason) => report.reject(id, reason),
                    }
                }
            }
        }
        report
    }

    pub fn add_issue(&mut self, rec: IssueRecord) -> Result<(), String> {
        let id = IssueId::new(rec.issue_id);
        if id.as_str().is_empty() {
            return Err("missing issue_id".into());
        }
        if rec.question.trim().is_empty() {
            return Err("empty question".into());
        }
        if self.issues.contains_key(&id) {
            return Err("duplicate id".into());
        }
        self.issues.insert(
            id.clone(),
            Issue {
                issue_id: id,
                question: rec.question,
                category: rec.category,
                argument_ids: Vec::new(),
            },
        );
        Ok(())
    }

    pub(crate) fn remove_empty_issue(&mut self, id: &str) {
        if self.issues.get(id).is_some_and(|i| i.argument_ids.is_empty()) {
            self.issues.remove(id);
        }
    }

    /// An `author_id` without a profile is accepted and stored as absent.
    pub fn add_argument(&mut self, rec: ArgumentRecord) -> Result<(), String> {
        let post_id = PostId::new(rec.post_id);
        if post_id.as_str().is_empty() {
            return Err("missing post_id".into());
        }
        if self.arguments.contains_key(&post_id) {
            return Err("duplicate id".into());
        }
        let issue_id = IssueId::new(rec.issue_id);
        if !self.issues.contains_key(&issue_id) {
            return Err(format!("dangling issue_id '{issue_id}'"));
        }
        let stance: Stance = rec.stance.parse()?;
        if rec.premise.trim().is_empty() {
            return Err("empty premise".into());
        }
        let frames: BTreeSet<FrameClass> = parse_labels(&rec.frames)?;
        let values: BTreeSet<ValueClass> = parse_labels(&rec.values)?;
        let author_id = rec
            .author_id
            .map(AuthorId::new)
            .filter(|a| self.authors.contains_key(a));
        let conclusion = rec.conclusion.filter(|c| !c.trim().is_empty());

        self.issues
            .get_mut(&issue_id)
            .expect("checked above")
            .argument_ids
            .push(post_id.clone());
        self.arguments.insert(
            post_id.clone(),
            Argument {
                post_id,
                issue_id,
                stance,
                header: rec.header,
                premise: rec.premise,
                conclusion,
                frames,
                values,
                author_id,
                concept_graph_id: None,
            },
        );
        Ok(())
    }

    /// Friendships are undirected: listing a friend links both profiles once
    /// both exist. Self-references are dropped.
    pub fn add_author(&mut self, mut profile: AuthorProfile) -> Result<(), String> {
        let id = profile.author_id.clone();
        if id.as_str().is_empty() {
            return Err("missing author_id".into());
        }
        if self.authors.contains_key(&id) {
            return Err("duplicate id".into());
        }
        let requested = std::mem::take(&mut profile.friends);
        self.camps.insert(id.clone(), assign_camps(&profile));
        self.authors.insert(id.clone(), profile);

        for friend in requested {
            if friend == id {
                continue;
            }
            if self.authors.contains_key(&friend) {
                self.link_friends(&id, &friend);
            } else {
                self.pending_friends
                    .entry(friend)
                    .or_default()
                    .insert(id.clone());
            }
        }
        if let Some(waiting) = self.pending_friends.remove(&id) {
            for other in waiting {
                self.link_friends(&id, &other);
            }
        }
        Ok(())
    }

    fn link_friends(&mut self, a: &AuthorId, b: &AuthorId) {
        if let Some(p) = self.authors.get_mut(a) {
            p.friends.insert(b.clone());
        }
        if let Some(p) = self.authors.get_mut(b) {
            p.friends.insert(a.clone());
        }
    }

    pub fn issues(&self) -> impl Iterator<Item = &Issue> {
        self.issues.values()
    }

    pub fn issue(&self, id: &str) -> Option<&Issue> {
        self.issues.get(id)
    }

    pub fn arguments(&self) -> impl Iterator<Item = &Argument> {
        self.arguments.values()
    }

    pub fn argument(&self, id: &str) -> Option<&Argument> {
        self.arguments.get(id)
    }

    pub fn arguments_of<'a>(&'a self, issue: &'a Issue) -> impl Iterator<Item = &'a Argument> + 'a {
        issue.argument_ids.iter().map(|p| &self.arguments[p])
    }

    pub fn authors(&self) -> impl Iterator<Item = &AuthorProfile> {
        self.authors.values()
    }

    pub fn author(&self, id: &str) -> Option<&AuthorProfile> {
        self.authors.get(id)
    }

    pub fn camps(&self, author: &str) -> Option<&CampAssignment> {
        self.camps.get(author)
    }

    pub fn issue_count(&self) -> usize {
        self.issues.len()
    }

    pub fn argument_count(&self) -> usize {
        self.arguments.len()
    }

    pub fn author_count(&self) -> usize {
        self.authors.len()
    }

    /// Undirected friendship edges `(a, b)` with `a < b`.
    pub fn friend_edges(&self) -> Vec<(AuthorId, AuthorId)> {
        self.authors
            .values()
            .flat_map(|p| {
                p.friends
                    .iter()
                    .filter(move |f| p.author_id < **f)
                    .map(move |f| (p.author_id.clone(), f.clone()))
            })
            .collect()
    }

    pub fn set_frames(&mut self, post: &str, frames: BTreeSet<FrameClass>) -> bool {
        self.arguments
            .get_mut(post)
            .map(|a| a.frames = frames)
            .is_some()
    }

    pub fn set_values(&mut self, post: &str, values: BTreeSet<ValueClass>) -> bool {
        self.arguments
            .get_mut(post)
            .map(|a| a.values = values)
            .is_some()
    }

    pub fn set_conclusion(&mut self, post: &str, conclusion: String) -> bool {
        self.arguments
            .get_mut(post)
            .map(|a| a.conclusion = Some(conclusion))
            .is_some()
    }

    pub fn concept_store(&self) -> Option<&ConceptStore> {
        self.concept_store.as_ref()
    }

    pub fn concept_store_mut(&mut self) -> Option<&mut ConceptStore> {
        self.concept_store.as_mut()
    }

    pub fn set_concept_store(&mut self, store: ConceptStore) {
        self.concept_store = Some(store);
    }

    pub fn concept_graph(&self, post: &str) -> Option<&ArgumentConceptGraph> {
        self.concept_graphs.get(post)
    }

    pub fn concept_graphs(&self) -> impl Iterator<Item = &ArgumentConceptGraph> {
        self.concept_graphs.values()
    }

    pub fn set_concept_graph(&mut self, graph: ArgumentConceptGraph) -> Result<(), String> {
        let arg = self
            .arguments
            .get_mut(&graph.post_id)
            .ok_or_else(|| format!("unknown post_id '{}'", graph.post_id))?;
        arg.concept_graph_id = Some(graph.post_id.clone());
        self.concept_graphs.insert(graph.post_id.clone(), graph);
        Ok(())
    }

    /// Adds an undirected similarity edge. Re-adding a pair with the same
    /// score is a no-op; a different score is rejected.
    pub fn add_similarity(
        &mut self,
        source: SimilaritySource,
        a: &PostId,
        b: &PostId,
        score: f64,
    ) -> Result<EdgeInsert, String> {
        if a == b {
            return Err("self-similarity edge".into());
        }
        for p in [a, b] {
            if !self.arguments.contains_key(p) {
                return Err(format!("unknown post_id '{p}'"));
            }
        }
        if !score.is_finite() || !(-1.0..=1.0).contains(&score) {
            return Err(format!("similarity {score} outside [-1, 1]"));
        }
        if source.is_concept_based() && score < 0.0 {
            return Err(format!("{source} similarity must be in [0, 1]"));
        }
        let edges = self.similarity.entry(source).or_default();
        match edges.get(&pair_key(a, b)) {
            Some(&old) if old == score => Ok(EdgeInsert::Duplicate),
            Some(&old) => Err(format!("conflicting duplicate similarity ({old} vs {score})")),
            None => {
                edges.insert(pair_key(a, b), score);
                Ok(EdgeInsert::Inserted)
            }
        }
    }

    pub fn similarity_edges(
        &self,
        source: SimilaritySource,
    ) -> impl Iterator<Item = (&PostId, &PostId, f64)> {
        self.similarity
            .get(&source)
            .into_iter()
            .flat_map(|m| m.iter().map(|((a, b), s)| (a, b, *s)))
    }

    pub fn similarity(&self, source: SimilaritySource, a: &PostId, b: &PostId) -> Option<f64> {
        self.similarity.get(&source)?.get(&pair_key(a, b)).copied()
    }

    pub fn similarity_sources(&self) -> impl Iterator<Item = SimilaritySource> + '_ {
        self.similarity.keys().copied()
    }

    /// Verifies every cross reference. Used after loading a snapshot.
    pub fn check_integrity(&self) -> Result<(), String> {
        for (id, issue) in &self.issues {
            if issue.question.trim().is_empty() {
                return Err(format!("issue '{id}' has an empty question"));
            }
            let unique: BTreeSet<&PostId> = issue.argument_ids.iter().collect();
            if unique.len() != issue.argument_ids.len() {
                return Err(format!("issue '{id}' lists an argument twice"));
            }
            for p in &issue.argument_ids {
                match self.arguments.get(p) {
                    Some(a) if a.issue_id == *id => {}
                    _ => return Err(format!("issue '{id}' references bad argument '{p}'")),
                }
            }
        }
        for (id, arg) in &self.arguments {
            let issue = self
                .issues
                .get(&arg.issue_id)
                .ok_or_else(|| format!("argument '{id}' has dangling issue"))?;
            if !issue.argument_ids.contains(id) {
                return Err(format!("argument '{id}' missing from its issue"));
            }
            if arg.premise.trim().is_empty() {
                return Err(format!("argument '{id}' has an empty premise"));
            }
            if let Some(a) = &arg.author_id {
                if !self.authors.contains_key(a) {
                    return Err(format!("argument '{id}' has dangling author '{a}'"));
                }
            }
            if let Some(g) = &arg.concept_graph_id {
                if !self.concept_graphs.contains_key(g) {
                    return Err(format!("argument '{id}' has dangling concept graph"));
                }
            }
        }
        for (id, p) in &self.authors {
            if p.friends.contains(id) {
                return Err(format!("author '{id}' lists itself as friend"));
            }
            for f in &p.friends {
                let back = self.authors.get(f).map(|o| o.friends.contains(id));
                if back != Some(true) {
                    return Err(format!("friendship '{id}'-'{f}' is not symmetric"));
                }
            }
            if !self.camps.contains_key(id) {
                return Err(format!("author '{id}' has no camp assignment"));
            }
        }
        if self.camps.len() != self.authors.len() {
            return Err("camp assignment for unknown author".into());
        }
        for (id, g) in &self.concept_graphs {
            if self.arguments.get(id).and_then(|a| a.concept_graph_id.as_ref()) != Some(id) {
                return Err(format!("concept graph '{id}' not attached to its argument"));
            }
            if let Some(store) = &self.concept_store {
                for e in &g.path_edges {
                    let ok = match (store.id(&e.a), store.id(&e.b)) {
                        (Some(x), Some(y)) => store.edge_between(x, y).is_some(),
                        _ => false,
                    };
                    if !ok {
                        return Err(format!("concept graph '{id}' uses unknown edge"));
                    }
                }
            }
        }
        for edges in self.similarity.values() {
            for (a, b) in edges.keys() {
                if a >= b || !self.arguments.contains_key(a) || !self.arguments.contains_key(b) {
                    return Err(format!("bad similarity edge '{a}'-'{b}'"));
                }
            }
        }
        if let Some(store) = &self.concept_store {
            store.validate()?;
        }
        Ok(())
    }
}
