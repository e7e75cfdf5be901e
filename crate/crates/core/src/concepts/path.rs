//! Weighted shortest paths over the concept store.
//!
//! Edges are traversed in both directions at cost `1 / weight`. Among
//! equal-cost paths the lexicographically smallest node sequence wins; since
//! concept handles follow label order this is the smallest label sequence.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use super::store::{ConceptId, ConceptStore};

#[derive(Debug, Clone, PartialEq)]
pub struct ConceptPath {
    /// Source first, target last.
    pub nodes: Vec<ConceptId>,
    /// Indices into [`ConceptStore::edges`], in traversal order.
    pub edges: Vec<u32>,
    pub cost: f64,
}

#[derive(Clone, Copy, PartialEq)]
struct Frontier(f64, ConceptId);

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Label {
    cost: f64,
    /// (predecessor, edge index); `None` at the source.
    pred: Option<(ConceptId, u32)>,
    done: bool,
}

struct Search<'a> {
    store: &'a ConceptStore,
    labels: HashMap<ConceptId, Label>,
}

impl<'a> Search<'a> {
    fn node_sequence(&self, mut at: ConceptId) -> Vec<ConceptId> {
        let mut seq = vec![at];
        while let Some((p, _)) = self.labels[&at].pred {
            seq.push(p);
            at = p;
        }
        seq.reverse();
        seq
    }

    fn path_to(&self, target: ConceptId) -> ConceptPath {
        let mut edges = Vec::new();
        let mut at = target;
        while let Some((p, e)) = self.labels[&at].pred {
            edges.push(e);
            at = p;
        }
        edges.reverse();
        ConceptPath {
            nodes: self.node_sequence(target),
            edges,
            cost: self.labels[&target].cost,
        }
    }

    /// Dijkstra from `source`, stopping once every target is settled.
    fn run(store: &'a ConceptStore, source: ConceptId, targets: &BTreeSet<ConceptId>) -> Self {
        let mut search = Search {
            store,
            labels: HashMap::new(),
        };
        search.labels.insert(
            source,
            Label {
                cost: 0.0,
                pred: None,
                done: false,
            },
        );
        let mut remaining = targets.len();
        let mut heap = BinaryHeap::new();
        heap.push(Reverse(Frontier(0.0, source)));
        while let Some(Reverse(Frontier(cost, u))) = heap.pop() {
            let label = search.labels.get_mut(&u).expect("pushed nodes are labelled");
            if label.done || cost > label.cost {
                continue;
            }
            label.done = true;
            if targets.contains(&u) {
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
            }
            for &(v, e) in search.store.neighbors(u) {
                let next = cost + search.store.edge(e).cost();
                let better = match search.labels.get(&v) {
                    None => true,
                    Some(l) if l.done => false,
                    Some(l) if next < l.cost => true,
                    Some(l) if next == l.cost => {
                        let (old, _) = l.pred.expect("only the source lacks a predecessor");
                        let mut via_new = search.node_sequence(u);
                        via_new.push(v);
                        let mut via_old = search.node_sequence(old);
                        via_old.push(v);
                        via_new < via_old
                    }
                    Some(_) => false,
                };
                if better {
                    search.labels.insert(
                        v,
                        Label {
                            cost: next,
                            pred: Some((u, e)),
                            done: false,
                        },
                    );
                    heap.push(Reverse(Frontier(next, v)));
                }
            }
        }
        search
    }

    fn settled(&self, node: ConceptId) -> bool {
        self.labels.get(&node).is_some_and(|l| l.done)
    }
}

/// Minimum-cost path between two concepts; `None` when disconnected.
pub fn shortest_path(
    store: &ConceptStore,
    source: ConceptId,
    target: ConceptId,
) -> Option<ConceptPath> {
    if source == target {
        return Some(ConceptPath {
            nodes: vec![source],
            edges: Vec::new(),
            cost: 0.0,
        });
    }
    let search = Search::run(store, source, &BTreeSet::from([target]));
    search.settled(target).then(|| search.path_to(target))
}

/// Shortest paths from one source to several targets in a single search.
/// Unreachable targets are absent from the result.
pub fn shortest_paths_from(
    store: &ConceptStore,
    source: ConceptId,
    targets: &BTreeSet<ConceptId>,
) -> BTreeMap<ConceptId, ConceptPath> {
    let search = Search::run(store, source, targets);
    targets
        .iter()
        .filter(|t| search.settled(**t))
        .map(|&t| (t, search.path_to(t)))
        .collect()
}
