use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use super::read_record_lines;
use crate::concepts::SeedMap;
use crate::error::Result;
use crate::model::PostId;
use crate::store::{GraphStore, Rejection};

/// `{"post_id": "p1", "seeds": [[0, "hunting"], [0, "sport"]]}`
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedLine {
    post_id: PostId,
    seeds: Vec<(usize, String)>,
}

/// Precomputed seed concepts per post. Unknown posts and repeated posts are
/// rejected.
pub fn read_seed_file(path: &Path, store: &GraphStore) -> Result<(SeedMap, Vec<Rejection>)> {
    let mut seeds: SeedMap = HashMap::new();
    let mut rejected = Vec::new();
    for (location, parsed) in read_record_lines::<SeedLine>(path)? {
        let outcome = parsed.and_then(|rec| {
            if store.argument(rec.post_id.as_str()).is_none() {
                return Err(format!("unknown post_id '{}'", rec.post_id));
            }
            if seeds.contains_key(&rec.post_id) {
                return Err(format!("duplicate seeds for '{}'", rec.post_id));
            }
            seeds.insert(rec.post_id, rec.seeds);
            Ok(())
        });
        if let Err(reason) = outcome {
            rejected.push(Rejection { location, reason });
        }
    }
    Ok((seeds, rejected))
}
