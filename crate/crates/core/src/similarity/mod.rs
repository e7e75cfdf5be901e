//! Argument similarity: concept-overlap scores, retrieval of supporting and
//! counter arguments, and the mapping of absolute scores to relative
//! judgments.

mod concept;
mod retrieve;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use concept::{
    concept_similarity, generalized_jaccard, idf_weighted_jaccard, jaccard, ConceptScore,
    ConceptVariant, IdfTable,
};
pub use retrieve::{
    provider_for, retrieve, similar_with_value, ComputedConcepts, NeighborIndex, Ranked,
    RetrieveMode, SimilarityProvider, StoredEdges,
};

/// Where a similarity score comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilaritySource {
    /// Precomputed by an external embedding model.
    EmbeddingPort,
    Jaccard,
    Idf,
    Tfidf,
}

impl SimilaritySource {
    pub const ALL: [SimilaritySource; 4] = [
        SimilaritySource::EmbeddingPort,
        SimilaritySource::Jaccard,
        SimilaritySource::Idf,
        SimilaritySource::Tfidf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SimilaritySource::EmbeddingPort => "embedding_port",
            SimilaritySource::Jaccard => "jaccard",
            SimilaritySource::Idf => "idf",
            SimilaritySource::Tfidf => "tfidf",
        }
    }

    pub fn is_concept_based(self) -> bool {
        self.concept_variant().is_some()
    }

    pub fn concept_variant(self) -> Option<ConceptVariant> {
        match self {
            SimilaritySource::EmbeddingPort => None,
            SimilaritySource::Jaccard => Some(ConceptVariant::Jaccard),
            SimilaritySource::Idf => Some(ConceptVariant::Idf),
            SimilaritySource::Tfidf => Some(ConceptVariant::Tfidf),
        }
    }
}

impl fmt::Display for SimilaritySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SimilaritySource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        SimilaritySource::ALL
            .into_iter()
            .find(|src| src.as_str() == s || (s == "embedding" && *src == SimilaritySource::EmbeddingPort))
            .ok_or_else(|| format!("unknown similarity source '{s}'"))
    }
}

/// Three-way relative judgment between two candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelativeLabel {
    A1,
    A2,
    Equal,
}

impl RelativeLabel {
    pub const ALL: [RelativeLabel; 3] = [RelativeLabel::A1, RelativeLabel::A2, RelativeLabel::Equal];
}

impl fmt::Display for RelativeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelativeLabel::A1 => "a1",
            RelativeLabel::A2 => "a2",
            RelativeLabel::Equal => "equal",
        })
    }
}

impl FromStr for RelativeLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a1" => Ok(RelativeLabel::A1),
            "a2" => Ok(RelativeLabel::A2),
            "equal" => Ok(RelativeLabel::Equal),
            other => Err(format!("unknown relative label '{other}'")),
        }
    }
}

/// `a1` when the first candidate wins by more than `theta`, `a2` when the
/// second does, `equal` otherwise.
pub fn map_relative(sim1: f64, sim2: f64, theta: f64) -> RelativeLabel {
    debug_assert!(theta >= 0.0);
    if sim1 - sim2 > theta {
        RelativeLabel::A1
    } else if sim2 - sim1 > theta {
        RelativeLabel::A2
    } else {
        RelativeLabel::Equal
    }
}
