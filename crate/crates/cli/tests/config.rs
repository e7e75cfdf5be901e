use std::fs;
use std::path::Path;

use argkg_cli::{CliError, PipelineConfig};
use argkg_core::analytics::Baseline;

fn dir_with_debates() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("debates.jsonl"), "").unwrap();
    dir
}

fn parse(dir: &Path, text: &str) -> Result<PipelineConfig, CliError> {
    PipelineConfig::parse(text, dir)
}

#[test]
fn defaults_fill_in() {
    let dir = dir_with_debates();
    let cfg = parse(dir.path(), "[inputs]\ndebates = \"debates.jsonl\"\n").unwrap();
    assert_eq!(cfg.output_dir, dir.path().join("out"));
    assert_eq!(cfg.snapshot_path(), dir.path().join("out/graph.snap"));
    assert_eq!(cfg.link.damping, 0.85);
    assert_eq!(cfg.eval.thetas, [0.0, 0.1, 0.33]);
    assert_eq!(cfg.concept_language(), Some("en"));
    assert_eq!(cfg.serve.addr, "127.0.0.1:8080");
}

#[test]
fn paths_resolve_against_the_config_directory() {
    let dir = dir_with_debates();
    fs::write(dir.path().join("frames.jsonl"), "").unwrap();
    let cfg = parse(
        dir.path(),
        "snapshot = \"/tmp/abs.snap\"\n[inputs]\ndebates = \"debates.jsonl\"\nconcept_language = \"*\"\n[[annotators]]\nkind = \"frame_classifier\"\nmode = \"precomputed_file\"\npath = \"frames.jsonl\"\n",
    )
    .unwrap();
    assert_eq!(cfg.annotators[0].path.as_deref(), Some(dir.path().join("frames.jsonl").as_path()));
    assert_eq!(cfg.snapshot_path(), Path::new("/tmp/abs.snap"));
    assert_eq!(cfg.concept_language(), None);
}

#[test]
fn deltas_default_to_complement() {
    let dir = dir_with_debates();
    let cfg = parse(
        dir.path(),
        "[inputs]\ndebates = \"debates.jsonl\"\n[[analyze.concept_deltas]]\nname = \"d\"\nselector = \"stance:pro\"\n",
    )
    .unwrap();
    assert_eq!(cfg.analyze.concept_deltas[0].baseline, Baseline::Complement);
}

#[test]
fn invalid_configs_are_rejected() {
    let dir = dir_with_debates();
    let base = "[inputs]\ndebates = \"debates.jsonl\"\n";
    for extra in [
        "[link]\ndamping = 1.5\n",
        "[link]\nseeds_per_sentence = 0\n",
        "[eval]\nthetas = [-0.1]\n",
        "[analyze]\nembedding_dim = 0\n",
        "[[analyze.camp_comparisons]]\ndimension = \"ideology\"\na = \"left\"\nb = \"centrist\"\n",
        "[[annotators]]\nkind = \"frame_classifier\"\nmode = \"precomputed_file\"\n",
        "[[annotators]]\nkind = \"frame_classifier\"\nmode = \"precomputed_file\"\npath = \"missing.jsonl\"\n",
        "surprise = true\n",
    ] {
        let text = if extra.starts_with('[') { format!("{base}{extra}") } else { format!("{extra}{base}") };
        match parse(dir.path(), &text) {
            Err(e @ CliError::Config(_)) => assert_eq!(e.exit_code(), 2),
            other => panic!("{extra:?}: {other:?}"),
        }
    }
    assert!(parse(dir.path(), "[inputs]\ndebates = \"nothere.jsonl\"\n").is_err());
}
