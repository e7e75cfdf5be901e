mod common;

use argkg_core::{Error, GraphStore};
use common::linked_store;

#[test]
fn round_trip_is_lossless_and_byte_stable() {
    let store = linked_store();
    let bytes = store.to_snapshot_bytes();
    let back = GraphStore::from_snapshot_bytes(&bytes).unwrap();
    assert_eq!(back.to_snapshot(), store.to_snapshot());
    assert_eq!(back.to_snapshot_bytes(), bytes);
    assert_eq!(linked_store().to_snapshot_bytes(), bytes);
}

#[test]
fn save_and_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.snap");
    let store = linked_store();
    let written = store.save_snapshot(&path).unwrap();
    assert_eq!(written as u64, std::fs::metadata(&path).unwrap().len());
    assert!(!dir.path().join("graph.tmp").exists());
    let back = GraphStore::load_snapshot(&path).unwrap();
    assert_eq!(back.argument_count(), 6);
    assert!(back.concept_store().is_some());
}

#[test]
fn damaged_snapshots_are_rejected() {
    let bytes = linked_store().to_snapshot_bytes();
    assert!(matches!(GraphStore::from_snapshot_bytes(&bytes[..10]), Err(Error::CorruptSnapshot(_))));
    let mut flipped = bytes.clone();
    flipped[40] ^= 1;
    assert!(matches!(GraphStore::from_snapshot_bytes(&flipped), Err(Error::CorruptSnapshot(_))));
    let mut magic = bytes.clone();
    magic[0] = b'X';
    assert!(matches!(GraphStore::from_snapshot_bytes(&magic), Err(Error::CorruptSnapshot(_))));
    let mut version = bytes.clone();
    version[8] = 99;
    assert!(matches!(GraphStore::from_snapshot_bytes(&version), Err(Error::IncompatibleSnapshot { found: 99, .. })));
    let mut extra = bytes;
    extra.push(0);
    assert!(matches!(GraphStore::from_snapshot_bytes(&extra), Err(Error::CorruptSnapshot(_))));
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(GraphStore::load_snapshot(&dir.path().join("none.snap")), Err(Error::Io { .. })));
}
