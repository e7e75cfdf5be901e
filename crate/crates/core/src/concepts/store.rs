use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

/// Dense concept handle, valid for one [`ConceptStore`]. Handles follow the
/// lexicographic order of the labels, so comparing handles compares labels.
pub type ConceptId = u32;

/// Normalizes a concept label or ConceptNet URI to its human-readable form.
///
/// `/c/en/killing_animal/n/wn/act` and `Killing animal` both become
/// `killing animal`.
pub fn normalize_concept(raw: &str) -> String {
    let raw = raw.trim();
    let term = match raw.strip_prefix("/c/") {
        Some(rest) => rest.split('/').nth(1).unwrap_or(""),
        None => raw,
    };
    term.replace('_', " ")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Language tag of a ConceptNet concept URI (`/c/en/...` → `en`).
pub fn concept_language(uri: &str) -> Option<&str> {
    uri.trim().strip_prefix("/c/")?.split('/').next()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConceptEdge {
    /// Smaller endpoint.
    pub a: ConceptId,
    pub b: ConceptId,
    pub relation: u16,
    pub weight: f64,
}

impl ConceptEdge {
    pub fn other(&self, from: ConceptId) -> ConceptId {
        if from == self.a {
            self.b
        } else {
            self.a
        }
    }

    /// Traversal cost: stronger assertions are cheaper.
    pub fn cost(&self) -> f64 {
        1.0 / self.weight
    }
}

/// The filtered commonsense graph. Immutable once built.
///
/// Edges are undirected and unique per concept pair; the store keeps the
/// strongest assertion seen for a pair together with its relation name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "ConceptStoreData", into = "ConceptStoreData")]
pub struct ConceptStore {
    labels: Vec<String>,
    relations: Vec<String>,
    edges: Vec<ConceptEdge>,
    index: HashMap<String, ConceptId>,
    /// Per concept: (neighbor, edge index), neighbors ascending.
    adjacency: Vec<Vec<(ConceptId, u32)>>,
    /// Number of linked arguments mentioning each concept.
    df: BTreeMap<String, usize>,
    n_args: usize,
}

impl ConceptStore {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn id(&self, label: &str) -> Option<ConceptId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: ConceptId) -> &str {
        &self.labels[id as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[ConceptEdge] {
        &self.edges
    }

    pub fn edge(&self, idx: u32) -> &ConceptEdge {
        &self.edges[idx as usize]
    }

    pub fn relation_name(&self, rel: u16) -> &str {
        &self.relations[rel as usize]
    }

    pub fn degree(&self, id: ConceptId) -> usize {
        self.adjacency[id as usize].len()
    }

    pub fn neighbors(&self, id: ConceptId) -> &[(ConceptId, u32)] {
        &self.adjacency[id as usize]
    }

    /// Edge between two concepts, if any.
    pub fn edge_between(&self, x: ConceptId, y: ConceptId) -> Option<&ConceptEdge> {
        let adj = &self.adjacency[x as usize];
        adj.binary_search_by_key(&y, |&(n, _)| n)
            .ok()
            .map(|pos| self.edge(adj[pos].1))
    }

    pub fn df(&self, label: &str) -> usize {
        self.df.get(label).copied().unwrap_or(0)
    }

    pub fn document_frequencies(&self) -> &BTreeMap<String, usize> {
        &self.df
    }

    pub fn n_args(&self) -> usize {
        self.n_args
    }

    /// Replaces the per-argument mention statistics.
    pub fn set_document_frequencies(&mut self, df: BTreeMap<String, usize>, n_args: usize) {
        debug_assert!(df.values().all(|&d| d <= n_args));
        self.df = df;
        self.n_args = n_args;
    }

    fn from_parts(labels: Vec<String>, relations: Vec<String>, edges: Vec<ConceptEdge>) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as ConceptId))
            .collect();
        let mut adjacency: Vec<Vec<(ConceptId, u32)>> = vec![Vec::new(); labels.len()];
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.a as usize].push((e.b, i as u32));
            adjacency[e.b as usize].push((e.a, i as u32));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        ConceptStore {
            labels,
            relations,
            edges,
            index,
            adjacency,
            df: BTreeMap::new(),
            n_args: 0,
        }
    }
}

/// Accumulates assertions; merges parallel edges keeping the maximum weight.
#[derive(Debug, Default)]
pub struct ConceptStoreBuilder {
    pairs: HashMap<(String, String), (f64, String)>,
    isolated: Vec<String>,
}

impl ConceptStoreBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one undirected assertion. Returns `false` for self-loops and
    /// non-positive weights, which are not stored.
    pub fn add(&mut self, start: &str, end: &str, relation: &str, weight: f64) -> bool {
        let (x, y) = (normalize_concept(start), normalize_concept(end));
        if x.is_empty() || y.is_empty() || x == y || !(weight > 0.0) || !weight.is_finite() {
            return false;
        }
        let key = if x < y { (x, y) } else { (y, x) };
        match self.pairs.get_mut(&key) {
            Some(slot) => {
                // ties keep the lexicographically smaller relation name
                if weight > slot.0 || (weight == slot.0 && relation < slot.1.as_str()) {
                    *slot = (weight, relation.to_owned());
                }
            }
            None => {
                self.pairs.insert(key, (weight, relation.to_owned()));
            }
        }
        true
    }

    /// Registers a concept with no edges.
    pub fn add_concept(&mut self, label: &str) {
        let label = normalize_concept(label);
        if !label.is_empty() {
            self.isolated.push(label);
        }
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn build(self) -> ConceptStore {
        let mut labels: Vec<String> = self
            .pairs
            .keys()
            .flat_map(|(x, y)| [x.clone(), y.clone()])
            .chain(self.isolated)
            .collect();
        labels.sort();
        labels.dedup();
        let mut relations: Vec<String> = self.pairs.values().map(|(_, r)| r.clone()).collect();
        relations.sort();
        relations.dedup();
        let id_of = |l: &str| labels.binary_search_by(|x| x.as_str().cmp(l)).unwrap() as ConceptId;
        let rel_of = |r: &str| relations.binary_search_by(|x| x.as_str().cmp(r)).unwrap() as u16;
        let mut edges: Vec<ConceptEdge> = self
            .pairs
            .iter()
            .map(|((x, y), (w, r))| ConceptEdge {
                a: id_of(x),
                b: id_of(y),
                relation: rel_of(r),
                weight: *w,
            })
            .collect();
        edges.sort_by_key(|e| (e.a, e.b));
        ConceptStore::from_parts(labels, relations, edges)
    }
}

/// On-disk form: labels, relation names and compact edge tuples.
#[derive(Serialize, Deserialize)]
struct ConceptStoreData {
    concepts: Vec<String>,
    relations: Vec<String>,
    edges: Vec<(ConceptId, ConceptId, u16, f64)>,
    df: BTreeMap<String, usize>,
    n_args: usize,
}

impl From<ConceptStore> for ConceptStoreData {
    fn from(s: ConceptStore) -> Self {
        ConceptStoreData {
            edges: s
                .edges
                .iter()
                .map(|e| (e.a, e.b, e.relation, e.weight))
                .collect(),
            concepts: s.labels,
            relations: s.relations,
            df: s.df,
            n_args: s.n_args,
        }
    }
}

impl From<ConceptStoreData> for ConceptStore {
    fn from(d: ConceptStoreData) -> Self {
        let edges = d
            .edges
            .into_iter()
            .map(|(a, b, relation, weight)| ConceptEdge {
                a,
                b,
                relation,
                weight,
            })
            .collect();
        let mut store = ConceptStore::from_parts(d.concepts, d.relations, edges);
        store.df = d.df;
        store.n_args = d.n_args;
        store
    }
}

impl ConceptStore {
    /// Checks internal consistency of a deserialized store.
    pub fn validate(&self) -> Result<(), String> {
        if !self.labels.windows(2).all(|w| w[0] < w[1]) {
            return Err("concept labels not strictly sorted".into());
        }
        let n = self.labels.len() as ConceptId;
        for e in &self.edges {
            if e.a >= e.b || e.b >= n {
                return Err(format!("bad edge endpoints ({}, {})", e.a, e.b));
            }
            if !(e.weight > 0.0) {
                return Err("non-positive edge weight".into());
            }
            if e.relation as usize >= self.relations.len() {
                return Err("edge relation out of range".into());
            }
        }
        if self.df.values().any(|&d| d > self.n_args) {
            return Err("document frequency exceeds argument count".into());
        }
        Ok(())
    }
}
