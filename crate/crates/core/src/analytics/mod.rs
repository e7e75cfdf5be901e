//! Subset analytics: frame–value matrices and their differences, issue
//! distances, concept deltas, camp comparisons and the friendship-network
//! embedding. Everything here reads the store and never mutates it.

mod compare;
mod delta;
pub mod export;
mod matrix;
mod spectral;
mod subset;

pub use compare::{camp_comparison, CampComparison, CategoryParticipation};
pub use delta::{concept_delta, concept_delta_against, Baseline, ConceptDelta};
pub use matrix::{
    frame_value_matrix, frobenius_distance, issue_distance, matrix_diff, matrix_for, nearest_issues,
    FrameValueMatrix, IssueNeighbor, MatrixDiff,
};
pub use spectral::{friendship_embedding, spectral_embed, SpectralConfig, SpectralEmbedding};
pub use subset::{select, ArgumentSubset, Selector};
