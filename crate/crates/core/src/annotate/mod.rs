//! Annotator ports for the steps that need trained models, with local
//! baselines: the conclusion prompt builder and a trigger-term lexicon.
//!
//! External services receive `{"kind": ..., "items": [...]}` and answer
//! `{"results": [...]}`, each result shaped like one line of the matching
//! annotation file.

mod lexicon;
mod port;
mod prompt;

pub use lexicon::{lexicon_annotate, lexicon_labels, Lexicon};
pub use port::{apply_port, CoverageReport, PortConfig, PortKind, PortMode};
pub use prompt::{
    build_conclusion_prompt, whitespace_tokens, ConclusionPrompt, DecodingMetadata, MODEL,
    TEMPERATURE, TOKEN_SLACK, TOP_P,
};
