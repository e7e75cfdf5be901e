#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use argkg_cli::{commands, PipelineConfig};

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/pipeline")
}

/// Copies the pipeline fixture's input files into a fresh directory.
pub fn fixture_copy() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(fixture_dir()).unwrap() {
        let entry = entry.unwrap();
        if entry.file_type().unwrap().is_file() {
            fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
        }
    }
    dir
}

/// Runs the whole pipeline on a fixture copy; returns the directory and the
/// snapshot path.
pub fn built_snapshot() -> (tempfile::TempDir, PathBuf) {
    let dir = fixture_copy();
    let cfg = PipelineConfig::load(&dir.path().join("argkg.toml")).unwrap();
    let snapshot = cfg.snapshot_path();
    commands::run_all(&cfg, &snapshot).unwrap();
    (dir, snapshot)
}
