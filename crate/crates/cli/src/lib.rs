//! Pipeline driver and read-only query service for argkg snapshots.

pub mod commands;
pub mod config;
pub mod error;
pub mod export;
pub mod service;

pub use config::PipelineConfig;
pub use error::{CliError, CliResult};
pub use service::{router, QueryService};
