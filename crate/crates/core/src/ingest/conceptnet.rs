//! ConceptNet assertion dump reader.
//!
//! Rows are tab-separated with five columns. The public dump layout is
//! `assertion-uri, relation, start, end, metadata-json`, where the language
//! comes from the concept URIs (`/c/en/...`). Rows whose first column is not
//! an assertion URI are read as `relation, start, end, metadata-json,
//! language`.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::concepts::{concept_language, ConceptStore, ConceptStoreBuilder};
use crate::error::{Error, Result};

const RELATED_TO: &str = "RelatedTo";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptAssertion {
    /// Relation name without the `/r/` prefix.
    pub relation: String,
    pub start_concept: String,
    pub end_concept: String,
    pub weight: f64,
    /// Language tag shared by both ends; `None` when the ends disagree.
    pub language: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptDumpSummary {
    pub rows: usize,
    pub concepts: usize,
    pub edges: usize,
    pub dropped_relation: usize,
    pub other_language: usize,
    pub skipped_rows: usize,
    /// Line numbers of the first skipped rows.
    pub skipped_lines: Vec<usize>,
}

#[derive(Deserialize)]
struct Metadata {
    weight: Option<f64>,
}

/// Parses one dump row. Returns a reason string for unusable rows.
pub fn parse_assertion(line: &str) -> std::result::Result<ConceptAssertion, String> {
    let cols: Vec<&str> = line.trim_end_matches(['\r', '\n']).split('\t').collect();
    if cols.len() != 5 {
        return Err(format!("expected 5 columns, found {}", cols.len()));
    }
    let (relation, start, end, meta, language) = if cols[0].starts_with("/a/") {
        let (ls, le) = (concept_language(cols[2]), concept_language(cols[3]));
        let lang = match (ls, le) {
            (Some(a), Some(b)) if a == b => Some(a.to_owned()),
            _ => None,
        };
        (cols[1], cols[2], cols[3], cols[4], lang)
    } else {
        let lang = Some(cols[4].trim().to_owned()).filter(|l| !l.is_empty());
        (cols[0], cols[1], cols[2], cols[3], lang)
    };
    let meta: Metadata =
        serde_json::from_str(meta).map_err(|e| format!("bad metadata json: {e}"))?;
    let weight = meta.weight.ok_or("metadata has no weight")?;
    if !(weight > 0.0) || !weight.is_finite() {
        return Err(format!("non-positive weight {weight}"));
    }
    let relation = relation.trim();
    let relation = relation.strip_prefix("/r/").unwrap_or(relation);
    if relation.is_empty() || start.trim().is_empty() || end.trim().is_empty() {
        return Err("empty relation or concept".into());
    }
    Ok(ConceptAssertion {
        relation: relation.to_owned(),
        start_concept: start.trim().to_owned(),
        end_concept: end.trim().to_owned(),
        weight,
        language,
    })
}

/// Builds the filtered concept store from a dump file.
///
/// Keeps rows in `language` (all rows when `None`), drops every `RelatedTo`
/// assertion and merges parallel edges by maximum weight.
pub fn ingest_concept_dump(
    path: &Path,
    language: Option<&str>,
) -> Result<(ConceptStore, ConceptDumpSummary)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut summary = ConceptDumpSummary::default();
    let mut builder = ConceptStoreBuilder::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        summary.rows += 1;
        let assertion = match parse_assertion(&line) {
            Ok(a) => a,
            Err(_) => {
                summary.skipped_rows += 1;
                if summary.skipped_lines.len() < 100 {
                    summary.skipped_lines.push(i + 1);
                }
                continue;
            }
        };
        if let Some(want) = language {
            if assertion.language.as_deref() != Some(want) {
                summary.other_language += 1;
                continue;
            }
        }
        if assertion.relation == RELATED_TO {
            summary.dropped_relation += 1;
            continue;
        }
        if !builder.add(
            &assertion.start_concept,
            &assertion.end_concept,
            &assertion.relation,
            assertion.weight,
        ) {
            // self-loop after label normalization
            summary.skipped_rows += 1;
        }
    }
    if builder.edge_count() == 0 {
        return Err(Error::EmptyConceptStore {
            path: path.to_owned(),
        });
    }
    let store = builder.build();
    summary.concepts = store.len();
    summary.edges = store.edge_count();
    Ok((store, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn public_dump_row() {
        let row = "/a/[/r/IsA/,/c/en/dog/n/,/c/en/animal/]\t/r/IsA\t/c/en/dog/n\t/c/en/animal\t{\"dataset\": \"/d/wordnet/3.1\", \"weight\": 2.0}";
        let a = parse_assertion(row).unwrap();
        assert_eq!(a.relation, "IsA");
        assert_eq!(a.weight, 2.0);
        assert_eq!(a.language.as_deref(), Some("en"));
    }

    #[test]
    fn mixed_languages_have_no_tag() {
        let row = "/a/x\t/r/Synonym\t/c/en/dog\t/c/de/hund\t{\"weight\": 1.0}";
        assert_eq!(parse_assertion(row).unwrap().language, None);
    }

    #[test]
    fn explicit_language_column() {
        let a = parse_assertion("/r/UsedFor\thunting\tfood\t{\"weight\": 0.5}\ten").unwrap();
        assert_eq!((a.relation.as_str(), a.language.as_deref()), ("UsedFor", Some("en")));
    }

    #[test]
    fn bad_rows() {
        assert!(parse_assertion("a\tb\tc").is_err());
        assert!(parse_assertion("/r/IsA\ta\tb\tnot json\ten").is_err());
        assert!(parse_assertion("/r/IsA\ta\tb\t{\"weight\": 0}\ten").is_err());
        assert!(parse_assertion("/r/IsA\ta\tb\t{}\ten").is_err());
    }
}
