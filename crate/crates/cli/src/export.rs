//! Flat graph export: CSV node and edge lists plus one TSV per stored
//! similarity source.

use std::path::Path;

use argkg_core::analytics::export::fmt_fixed;
use argkg_core::GraphStore;

use crate::commands::write_file;
use crate::error::{CliError, CliResult};

fn csv_string(rows: Vec<[String; 4]>, header: [&str; 4]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Server(format!("csv: {e}"));
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Server(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8 input"))
}

/// Node kinds: `issue`, `argument`, `author`, `concept`. Edge kinds:
/// `has_argument`, `authored`, `friend`, `mentions`, `similar_<source>`.
pub fn export_graph(store: &GraphStore, dir: &Path) -> CliResult<Vec<String>> {
    let s = |x: &str| x.to_owned();
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for issue in store.issues() {
        nodes.push([s(issue.issue_id.as_str()), s("issue"), issue.question.clone(), issue.category.clone()]);
        for p in &issue.argument_ids {
            edges.push([s(issue.issue_id.as_str()), s(p.as_str()), s("has_argument"), String::new()]);
        }
    }
    for arg in store.arguments() {
        nodes.push([s(arg.post_id.as_str()), s("argument"), arg.header.clone(), s(arg.stance.as_str())]);
        if let Some(a) = &arg.author_id {
            edges.push([s(a.as_str()), s(arg.post_id.as_str()), s("authored"), String::new()]);
        }
    }
    for author in store.authors() {
        nodes.push([s(author.author_id.as_str()), s("author"), String::new(), String::new()]);
    }
    for (a, b) in store.friend_edges() {
        edges.push([s(a.as_str()), s(b.as_str()), s("friend"), String::new()]);
    }
    let mut concepts = std::collections::BTreeSet::new();
    for g in store.concept_graphs() {
        for c in &g.all_concepts {
            concepts.insert(c.clone());
            let weight = g.pagerank.get(c).map(|w| fmt_fixed(*w, 6)).unwrap_or_default();
            edges.push([s(g.post_id.as_str()), c.clone(), s("mentions"), weight]);
        }
    }
    for c in concepts {
        nodes.push([format!("concept:{c}"), s("concept"), c, String::new()]);
    }
    for e in edges.iter_mut().filter(|e| e[2] == "mentions") {
        e[1] = format!("concept:{}", e[1]);
    }

    let mut files = Vec::new();
    let sources: Vec<_> = store.similarity_sources().collect();
    for source in sources {
        let name = format!("similarity_{source}.tsv");
        let mut out = String::from("post_a\tpost_b\tscore\n");
        for (a, b, score) in store.similarity_edges(source) {
            out.push_str(&format!("{a}\t{b}\t{}\n", fmt_fixed(score, 6)));
            edges.push([s(a.as_str()), s(b.as_str()), format!("similar_{source}"), fmt_fixed(score, 6)]);
        }
        write_file(&dir.join(&name), &out)?;
        files.push(name);
    }
    write_file(&dir.join("nodes.csv"), &csv_string(nodes, ["id", "kind", "label", "detail"])?)?;
    write_file(&dir.join("edges.csv"), &csv_string(edges, ["source", "target", "kind", "weight"])?)?;
    files.insert(0, "edges.csv".into());
    files.insert(0, "nodes.csv".into());
    Ok(files)
}
