use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{location, parse_record, read_lines};
use crate::error::Result;
use crate::model::AuthorProfile;
use crate::store::{ArgumentRecord, GraphStore, IngestReport, IssueRecord};

/// One line of the debates file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub issue_id: String,
    pub question: String,
    #[serde(default)]
    pub category: String,
    pub stance: String,
    #[serde(default)]
    pub header: String,
    pub statement: String,
    #[serde(default)]
    pub author_id: Option<String>,
    pub post_id: String,
}

/// Authors first, so that argument author links can be resolved.
pub fn ingest_corpus(
    store: &mut GraphStore,
    debates: &Path,
    authors: Option<&Path>,
) -> Result<IngestReport> {
    let mut report = IngestReport::default();
    if let Some(authors) = authors {
        report.merge(ingest_authors(store, authors)?);
    }
    report.merge(ingest_debates(store, debates)?);
    Ok(report)
}

pub fn ingest_authors(store: &mut GraphStore, path: &Path) -> Result<IngestReport> {
    let mut report = IngestReport::default();
    for (line_no, line) in read_lines(path)? {
        let at = location(path, line_no);
        match parse_record::<AuthorProfile>(&line) {
            Ok(profile) => match store.add_author(profile) {
                Ok(()) => report.authors += 1,
                Err(reason) => report.reject(at, reason),
            },
            Err(reason) => report.reject(at, reason),
        }
    }
    Ok(report)
}

/// The first record of an issue defines its question and category.
pub fn ingest_debates(store: &mut GraphStore, path: &Path) -> Result<IngestReport> {
    let mut report = IngestReport::default();
    for (line_no, line) in read_lines(path)? {
        let at = location(path, line_no);
        let rec = match parse_record::<CorpusRecord>(&line) {
            Ok(rec) => rec,
            Err(reason) => {
                report.reject(at, reason);
                continue;
            }
        };
        let new_issue = store.issue(&rec.issue_id).is_none();
        if new_issue {
            let issue = IssueRecord {
                issue_id: rec.issue_id.clone(),
                question: rec.question.clone(),
                category: rec.category.clone(),
            };
            if let Err(reason) = store.add_issue(issue) {
                report.reject(at, reason);
                continue;
            }
            report.issues += 1;
        }
        let issue_id = rec.issue_id.clone();
        let arg = ArgumentRecord {
            post_id: rec.post_id,
            issue_id: rec.issue_id,
            stance: rec.stance,
            header: rec.header,
            premise: rec.statement,
            conclusion: None,
            frames: Vec::new(),
            values: Vec::new(),
            author_id: rec.author_id,
        };
        match store.add_argument(arg) {
            Ok(()) => report.arguments += 1,
            Err(reason) => {
                if new_issue {
                    store.remove_empty_issue(&issue_id);
                    report.issues -= 1;
                }
                report.reject(at, reason)
            }
        }
    }
    Ok(report)
}
