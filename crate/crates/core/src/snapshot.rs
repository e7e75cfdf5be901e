//! Versioned on-disk snapshot container.
//!
//! Layout (all integers little-endian):
//!
//! | offset | size | content                                  |
//! |--------|------|------------------------------------------|
//! | 0      | 8    | magic `ARGKGSNP`                         |
//! | 8      | 4    | format version (`u32`)                   |
//! | 12     | 8    | payload length in bytes (`u64`)          |
//! | 20     | n    | payload: UTF-8 JSON of [`GraphSnapshot`] |
//! | 20 + n | 32   | SHA-256 of the payload                   |
//!
//! The payload is produced from ordered maps only, so equal stores produce
//! byte-identical files.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::camps::CampAssignment;
use crate::concepts::{ArgumentConceptGraph, ConceptStore};
use crate::error::{Error, Result};
use crate::model::{Argument, AuthorProfile, Issue, PostId};
use crate::similarity::SimilaritySource;
use crate::store::GraphStore;

pub const MAGIC: &[u8; 8] = b"ARGKGSNP";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_LEN: usize = 20;
const DIGEST_LEN: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityRecord {
    pub source: SimilaritySource,
    pub a: PostId,
    pub b: PostId,
    pub score: f64,
}

/// Serializable image of a [`GraphStore`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSnapshot {
    pub format_version: u32,
    pub issues: Vec<Issue>,
    pub arguments: Vec<Argument>,
    pub authors: Vec<AuthorProfile>,
    pub camps: Vec<CampAssignment>,
    pub concept_graphs: Vec<ArgumentConceptGraph>,
    pub similarity: Vec<SimilarityRecord>,
    pub concept_store: Option<ConceptStore>,
}

impl GraphStore {
    pub fn to_snapshot(&self) -> GraphSnapshot {
        GraphSnapshot {
            format_version: FORMAT_VERSION,
            issues: self.issues.values().cloned().collect(),
            arguments: self.arguments.values().cloned().collect(),
            authors: self.authors.values().cloned().collect(),
            camps: self.camps.values().cloned().collect(),
            concept_graphs: self.concept_graphs.values().cloned().collect(),
            similarity: self
                .similarity
                .iter()
                .flat_map(|(source, edges)| {
                    edges.iter().map(|((a, b), score)| SimilarityRecord {
                        source: *source,
                        a: a.clone(),
                        b: b.clone(),
                        score: *score,
                    })
                })
                .collect(),
            concept_store: self.concept_store.clone(),
        }
    }

    pub fn from_snapshot(snap: GraphSnapshot) -> Result<GraphStore> {
        if snap.format_version != FORMAT_VERSION {
            return Err(Error::IncompatibleSnapshot {
                found: snap.format_version,
                expected: FORMAT_VERSION,
            });
        }
        let mut store = GraphStore::new();
        let n = (
            snap.issues.len(),
            snap.arguments.len(),
            snap.authors.len(),
            snap.camps.len(),
            snap.concept_graphs.len(),
        );
        store.issues = snap.issues.into_iter().map(|i| (i.issue_id.clone(), i)).collect();
        store.arguments = snap.arguments.into_iter().map(|a| (a.post_id.clone(), a)).collect();
        store.authors = snap.authors.into_iter().map(|a| (a.author_id.clone(), a)).collect();
        store.camps = snap.camps.into_iter().map(|c| (c.author_id.clone(), c)).collect();
        store.concept_graphs = snap
            .concept_graphs
            .into_iter()
            .map(|g| (g.post_id.clone(), g))
            .collect();
        let distinct = (
            store.issues.len(),
            store.arguments.len(),
            store.authors.len(),
            store.camps.len(),
            store.concept_graphs.len(),
        );
        if n != distinct {
            return Err(Error::InvalidSnapshot("duplicate ids".into()));
        }
        for rec in snap.similarity {
            let edges = store.similarity.entry(rec.source).or_default();
            if edges.insert((rec.a, rec.b), rec.score).is_some() {
                return Err(Error::InvalidSnapshot("duplicate similarity edge".into()));
            }
        }
        store.concept_store = snap.concept_store;
        store.check_integrity().map_err(Error::InvalidSnapshot)?;
        Ok(store)
    }

    /// Encodes the store as a snapshot container.
    pub fn to_snapshot_bytes(&self) -> Vec<u8> {
        let payload = serde_json::to_vec(&self.to_snapshot()).expect("snapshot serializes");
        let mut out = Vec::with_capacity(HEADER_LEN + payload.len() + DIGEST_LEN);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
        out.extend_from_slice(&payload);
        out.extend_from_slice(&Sha256::digest(&payload));
        out
    }

    pub fn from_snapshot_bytes(bytes: &[u8]) -> Result<GraphStore> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::CorruptSnapshot("truncated header".into()));
        }
        if &bytes[..8] != MAGIC {
            return Err(Error::CorruptSnapshot("bad magic".into()));
        }
        let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
        if version != FORMAT_VERSION {
            return Err(Error::IncompatibleSnapshot {
                found: version,
                expected: FORMAT_VERSION,
            });
        }
        let len = u64::from_le_bytes(bytes[12..20].try_into().unwrap()) as usize;
        let expected = HEADER_LEN.checked_add(len).and_then(|n| n.checked_add(DIGEST_LEN));
        if expected != Some(bytes.len()) {
            return Err(Error::CorruptSnapshot(format!(
                "expected {} bytes, found {}",
                expected.map_or("too many".to_owned(), |n| n.to_string()),
                bytes.len()
            )));
        }
        let payload = &bytes[HEADER_LEN..HEADER_LEN + len];
        if Sha256::digest(payload).as_slice() != &bytes[HEADER_LEN + len..] {
            return Err(Error::CorruptSnapshot("checksum mismatch".into()));
        }
        let snap: GraphSnapshot = serde_json::from_slice(payload)
            .map_err(|e| Error::CorruptSnapshot(format!("payload: {e}")))?;
        GraphStore::from_snapshot(snap)
    }

    /// Writes to a sibling temp file and renames it into place, so a failed
    /// save never leaves a partial snapshot at `path`.
    pub fn save_snapshot(&self, path: &Path) -> Result<usize> {
        let bytes = self.to_snapshot_bytes();
        let tmp = path.with_extension("tmp");
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&bytes)?;
            f.sync_all()?;
            fs::rename(&tmp, path)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            Error::io(path, e)
        })?;
        Ok(bytes.len())
    }

    pub fn load_snapshot(path: &Path) -> Result<GraphStore> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        GraphStore::from_snapshot_bytes(&bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_round_trip() {
        let store = GraphStore::new();
        let bytes = store.to_snapshot_bytes();
        let back = GraphStore::from_snapshot_bytes(&bytes).unwrap();
        assert_eq!(back, store);
        assert_eq!(back.to_snapshot_bytes(), bytes);
    }

    #[test]
    fn flipped_version_byte() {
        let mut bytes = GraphStore::new().to_snapshot_bytes();
        bytes[8] ^= 0xff;
        assert!(matches!(
            GraphStore::from_snapshot_bytes(&bytes),
            Err(Error::IncompatibleSnapshot { .. })
        ));
    }

    #[test]
    fn truncation_and_bit_rot() {
        let bytes = GraphStore::new().to_snapshot_bytes();
        for cut in [0, 5, HEADER_LEN, bytes.len() - 1] {
            assert!(matches!(
                GraphStore::from_snapshot_bytes(&bytes[..cut]),
                Err(Error::CorruptSnapshot(_))
            ));
        }
        let mut rotten = bytes.clone();
        rotten[HEADER_LEN + 2] ^= 0x01;
        assert!(matches!(
            GraphStore::from_snapshot_bytes(&rotten),
            Err(Error::CorruptSnapshot(_))
        ));
    }
}
