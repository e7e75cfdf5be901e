//! Perspective-aware argumentation knowledge graph: debate arguments linked
//! to their issues, authors and stakeholder camps, to frame and value labels,
//! and to commonsense concept subgraphs, with the analytics and evaluation
//! built on top.

pub mod analytics;
pub mod annotate;
pub mod camps;
pub mod concepts;
pub mod error;
pub mod eval;
pub mod ingest;
pub mod labels;
pub mod model;
pub mod similarity;
pub mod snapshot;
pub mod store;

pub use camps::{assign_camps, CampAssignment, CampDimension};
pub use error::{Error, Result};
pub use labels::{FrameClass, Label, ValueClass};
pub use model::{Argument, AuthorId, AuthorProfile, Issue, IssueId, PostId, Stance};
pub use snapshot::GraphSnapshot;
pub use store::GraphStore;
