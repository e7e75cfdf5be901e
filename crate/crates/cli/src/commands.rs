//! Batch pipeline steps. Mutating steps load, change and atomically re-save
//! the snapshot; reporting steps only read it.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use argkg_core::analytics::{
    camp_comparison, concept_delta, concept_delta_against, export as tsv, friendship_embedding, issue_distance,
    matrix_diff, matrix_for, nearest_issues, select, Baseline, Selector, SpectralConfig,
};
use argkg_core::annotate::apply_port;
use argkg_core::concepts::{link_store, SeedMap};
use argkg_core::eval::{self, evaluate_labels, read_gold, read_relative_gold, theta_sweep};
use argkg_core::ingest::{ingest_concept_dump, ingest_corpus, read_seed_file};
use argkg_core::similarity::provider_for;
use argkg_core::{GraphStore, IssueId, Stance};
use serde_json::{json, Value};

use crate::config::PipelineConfig;
use crate::error::{CliError, CliResult};
use crate::export::export_graph;

pub const REPORTS_DIR: &str = "reports";
pub const EXPORT_DIR: &str = "export";

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn write_json(path: &Path, value: &Value) -> CliResult<()> {
    write_file(path, &(serde_json::to_string_pretty(value).expect("json") + "\n"))
}

pub fn load_store(snapshot: &Path) -> CliResult<GraphStore> {
    if !snapshot.is_file() {
        return Err(CliError::SnapshotMissing(snapshot.to_owned()));
    }
    Ok(GraphStore::load_snapshot(snapshot)?)
}

fn save_store(store: &GraphStore, snapshot: &Path) -> CliResult<usize> {
    if let Some(dir) = snapshot.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    Ok(store.save_snapshot(snapshot)?)
}

/// File-name-safe rendering of an opaque id.
pub fn file_token(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

/// Builds a fresh store from the corpus, author and concept-dump inputs.
pub fn ingest(cfg: &PipelineConfig, snapshot: &Path) -> CliResult<Value> {
    let mut store = GraphStore::new();
    let report = ingest_corpus(&mut store, &cfg.inputs.debates, cfg.inputs.authors.as_deref())?;
    let concepts = match &cfg.inputs.concept_dump {
        Some(dump) => {
            let (concepts, summary) = ingest_concept_dump(dump, cfg.concept_language())?;
            store.set_concept_store(concepts);
            Some(summary)
        }
        None => None,
    };
    let bytes = save_store(&store, snapshot)?;
    let out = json!({
        "command": "ingest",
        "snapshot": snapshot,
        "snapshot_bytes": bytes,
        "corpus": report,
        "concept_dump": concepts,
    });
    write_json(&cfg.output_dir.join("ingest_report.json"), &out)?;
    Ok(out)
}

pub fn link(cfg: &PipelineConfig, snapshot: &Path) -> CliResult<Value> {
    let mut store = load_store(snapshot)?;
    let (seeds, rejected) = match &cfg.inputs.seeds {
        Some(p) => read_seed_file(p, &store)?,
        None => (SeedMap::new(), Vec::new()),
    };
    let summary = link_store(&mut store, &seeds, &cfg.link.to_link_config())?;
    let bytes = save_store(&store, snapshot)?;
    let out = json!({
        "command": "link",
        "snapshot_bytes": bytes,
        "summary": summary,
        "seed_rejections": rejected,
    });
    write_json(&cfg.output_dir.join("link_report.json"), &out)?;
    Ok(out)
}

/// Applies every configured port in order. A failing port aborts the run
/// before the snapshot is rewritten.
pub fn annotate(cfg: &PipelineConfig, snapshot: &Path) -> CliResult<Value> {
    let mut store = load_store(snapshot)?;
    let mut reports = Vec::new();
    for port in &cfg.annotators {
        reports.push(apply_port(&mut store, port, None)?);
    }
    let bytes = save_store(&store, snapshot)?;
    let out = json!({ "command": "annotate", "snapshot_bytes": bytes, "ports": reports });
    write_json(&cfg.output_dir.join("annotate_report.json"), &out)?;
    Ok(out)
}

struct Reports {
    dir: PathBuf,
    files: Vec<String>,
    skipped: Vec<Value>,
}

impl Reports {
    fn new(dir: PathBuf) -> Self {
        Reports {
            dir,
            files: Vec::new(),
            skipped: Vec::new(),
        }
    }

    fn write(&mut self, name: &str, contents: &str) -> CliResult<()> {
        write_file(&self.dir.join(name), contents)?;
        self.files.push(name.to_owned());
        Ok(())
    }

    /// Records a report that could not be produced from this snapshot.
    fn skip(&mut self, name: &str, err: argkg_core::Error) {
        self.skipped.push(json!({ "report": name, "reason": err.to_string() }));
    }
}

fn selector(s: &str) -> CliResult<Selector> {
    s.parse::<Selector>().map_err(|e| CliError::Config(e.to_string()))
}

pub fn analyze(cfg: &PipelineConfig, snapshot: &Path) -> CliResult<Value> {
    let store = load_store(snapshot)?;
    let params = &cfg.analyze;
    let mut r = Reports::new(cfg.output_dir.join(REPORTS_DIR));

    match matrix_for(&store, &Selector::all()) {
        Ok(m) => r.write("matrix_all.tsv", &tsv::matrix_tsv(&m))?,
        Err(e) => r.skip("matrix_all.tsv", e),
    }
    let issues: Vec<&IssueId> = store
        .issues()
        .filter(|i| !i.argument_ids.is_empty())
        .map(|i| &i.issue_id)
        .collect();
    for id in &issues {
        let m = matrix_for(&store, &Selector::issue(id.as_str()))?;
        r.write(&format!("matrix_issue_{}.tsv", file_token(id.as_str())), &tsv::matrix_tsv(&m))?;
    }
    for c in &params.comparisons {
        let name = format!("diff_{}.tsv", file_token(&c.name));
        match (matrix_for(&store, &selector(&c.a)?), matrix_for(&store, &selector(&c.b)?)) {
            (Ok(a), Ok(b)) => r.write(&name, &tsv::diff_tsv(&matrix_diff(&a, &b)))?,
            (Err(e), _) | (_, Err(e)) => r.skip(&name, e),
        }
    }

    let mut distances = String::from("issue_a\tissue_b\tdistance\n");
    for (i, a) in issues.iter().enumerate() {
        for b in &issues[i + 1..] {
            let d = issue_distance(&store, a.as_str(), b.as_str())?;
            distances.push_str(&format!("{a}\t{b}\t{}\n", tsv::fmt_fixed(d, 4)));
        }
    }
    r.write("issue_distances.tsv", &distances)?;
    let mut nearest = String::from("issue\trank\tneighbor\tdistance\n");
    for id in &issues {
        for (rank, n) in nearest_issues(&store, id.as_str(), params.nearest_k)?.iter().enumerate() {
            nearest.push_str(&format!("{id}\t{}\t{}\t{}\n", rank + 1, n.issue_id, tsv::fmt_fixed(n.distance, 4)));
        }
    }
    r.write("nearest_issues.tsv", &nearest)?;

    if store.concept_graphs().next().is_some() {
        let specs: Vec<(String, Selector, Baseline, Option<Selector>)> = if params.concept_deltas.is_empty() {
            issues
                .iter()
                .map(|id| {
                    (
                        format!("issue_{}_pro_vs_con", file_token(id.as_str())),
                        Selector::issue(id.as_str()).with_stance(Stance::Pro),
                        Baseline::Complement,
                        Some(Selector::issue(id.as_str())),
                    )
                })
                .collect()
        } else {
            params
                .concept_deltas
                .iter()
                .map(|d| {
                    Ok((
                        file_token(&d.name),
                        selector(&d.selector)?,
                        d.baseline,
                        d.within.as_deref().map(selector).transpose()?,
                    ))
                })
                .collect::<CliResult<_>>()?
        };
        for (name, sel, baseline, within) in specs {
            let file = format!("concept_delta_{name}.tsv");
            let subset = select(&store, &sel)?;
            let rows = match (&within, baseline) {
                (Some(w), Baseline::Complement) => {
                    let universe = select(&store, w)?;
                    concept_delta_against(&store, &subset, &universe.minus(&subset))
                }
                _ => concept_delta(&store, &subset, baseline),
            };
            match rows {
                Ok(rows) => r.write(&file, &tsv::concept_delta_tsv(&rows))?,
                Err(e) => r.skip(&file, e),
            }
        }
    }

    for c in &params.camp_comparisons {
        let scope: Option<BTreeSet<IssueId>> =
            c.issues.as_ref().map(|v| v.iter().map(|s| IssueId::new(s.as_str())).collect());
        let name = format!("camp_{}_{}_vs_{}", c.dimension, file_token(&c.a), file_token(&c.b));
        match camp_comparison(&store, c.dimension, &c.a, &c.b, scope.as_ref()) {
            Ok(cmp) => {
                r.write(&format!("{name}.tsv"), &tsv::participation_tsv(&cmp))?;
                r.write(&format!("{name}_diff.tsv"), &tsv::diff_tsv(&cmp.diff))?;
            }
            Err(e) => r.skip(&format!("{name}.tsv"), e),
        }
    }

    match friendship_embedding(&store, params.embedding_dim, &SpectralConfig::default()) {
        Ok(e) => r.write("embedding.tsv", &tsv::embedding_tsv(&e))?,
        Err(e) => r.skip("embedding.tsv", e),
    }

    let out = json!({ "command": "analyze", "reports": r.files, "skipped": r.skipped });
    write_json(&cfg.output_dir.join("analyze_report.json"), &out)?;
    Ok(out)
}

pub fn evaluate(cfg: &PipelineConfig, snapshot: &Path) -> CliResult<Value> {
    let (gold_path, rel_path) = (&cfg.inputs.gold, &cfg.inputs.relative_gold);
    if gold_path.is_none() && rel_path.is_none() {
        return Err(CliError::Config("eval needs inputs.gold or inputs.relative_gold".into()));
    }
    let store = load_store(snapshot)?;
    let mut r = Reports::new(cfg.output_dir.join(REPORTS_DIR));
    let mut out = json!({ "command": "eval" });
    if let Some(p) = gold_path {
        let (gold, rejected) = read_gold(p, Some(&store))?;
        let e = evaluate_labels(&store, &gold)?;
        r.write("eval_frames.tsv", &eval::report::label_task_tsv(&e.frames))?;
        r.write("eval_values.tsv", &eval::report::label_task_tsv(&e.values))?;
        r.write("eval_kappa.tsv", &eval::report::kappa_tsv(&e))?;
        if let Some(c) = &e.conclusions {
            r.write("eval_conclusions.tsv", &eval::report::conclusions_tsv(c))?;
        }
        out["labels"] = json!(e);
        out["gold_rejections"] = json!(rejected);
    }
    if let Some(p) = rel_path {
        let (gold, rejected) = read_relative_gold(p, Some(&store))?;
        let mut sweeps = BTreeMap::new();
        for source in &cfg.eval.similarity_sources {
            let provider = provider_for(&store, *source);
            let name = format!("eval_similarity_{source}.tsv");
            match theta_sweep(&gold, provider.as_ref(), &cfg.eval.thetas) {
                Ok(s) => {
                    r.write(&name, &eval::report::theta_sweep_tsv(&s))?;
                    sweeps.insert(source.as_str(), json!(s));
                }
                Err(e) => r.skip(&name, e),
            }
        }
        out["similarity"] = json!(sweeps);
        out["relative_gold_rejections"] = json!(rejected);
    }
    out["reports"] = json!(r.files);
    out["skipped"] = json!(r.skipped);
    write_json(&cfg.output_dir.join("eval.json"), &out)?;
    Ok(out)
}

pub fn export(cfg: &PipelineConfig, snapshot: &Path) -> CliResult<Value> {
    let store = load_store(snapshot)?;
    let dir = cfg.output_dir.join(EXPORT_DIR);
    let files = export_graph(&store, &dir)?;
    Ok(json!({ "command": "export", "dir": dir, "files": files }))
}

/// Every step in order; eval runs only when a gold file is configured.
pub fn run_all(cfg: &PipelineConfig, snapshot: &Path) -> CliResult<Value> {
    let mut steps = vec![ingest(cfg, snapshot)?, link(cfg, snapshot)?, annotate(cfg, snapshot)?, analyze(cfg, snapshot)?];
    if cfg.inputs.gold.is_some() || cfg.inputs.relative_gold.is_some() {
        steps.push(evaluate(cfg, snapshot)?);
    }
    steps.push(export(cfg, snapshot)?);
    Ok(json!({ "command": "run", "steps": steps }))
}
