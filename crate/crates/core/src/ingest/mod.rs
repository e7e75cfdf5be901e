//! Readers for the corpus, author, annotation and concept-dump files.
//!
//! All record files are line-delimited JSON. Bad lines never abort a run:
//! they are skipped and listed in the report as `file:line` with a reason.

mod annotations;
mod conceptnet;
mod corpus;
mod seeds;

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

pub use annotations::{
    attach_annotations, ingest_annotations, parse_annotations, read_annotations, AnnotationKind, AnnotationReport,
    AnnotationSet,
};
pub use conceptnet::{ingest_concept_dump, parse_assertion, ConceptAssertion, ConceptDumpSummary};
pub use corpus::{ingest_authors, ingest_corpus, ingest_debates, CorpusRecord};
pub use seeds::read_seed_file;

use crate::error::{Error, Result};

/// Non-empty lines of a file with their 1-based line numbers.
pub(crate) fn read_lines(path: &Path) -> Result<Vec<(usize, String)>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if !line.trim().is_empty() {
            out.push((i + 1, line));
        }
    }
    Ok(out)
}

pub(crate) fn location(path: &Path, line: usize) -> String {
    format!("{}:{}", path.display(), line)
}

/// Parses one JSON record, separating syntax errors from schema errors.
pub(crate) fn parse_record<T: serde::de::DeserializeOwned>(line: &str) -> std::result::Result<T, String> {
    let value: serde_json::Value =
        serde_json::from_str(line).map_err(|e| format!("malformed line: {e}"))?;
    serde_json::from_value(value).map_err(|e| format!("invalid record: {e}"))
}

/// Parses every line of a record file, pairing each outcome with its
/// `file:line` location.
pub(crate) fn read_record_lines<T: serde::de::DeserializeOwned>(
    path: &Path,
) -> Result<Vec<(String, std::result::Result<T, String>)>> {
    Ok(read_lines(path)?
        .into_iter()
        .map(|(no, line)| (location(path, no), parse_record(&line)))
        .collect())
}
