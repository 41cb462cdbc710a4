//! On-disk document cache. Keys are derived from the engine version, the
//! subcommand, the strand count, the freely reduced braid word, and every
//! option that changes the emitted document; words differing only by
//! cancelling pairs therefore share an entry. Only final documents are
//! stored, wrapped with enough metadata to detect corruption.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use kch::braid::BraidWord;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Deterministic, filesystem-safe cache key.
pub fn cache_key(
    version: &str,
    subcommand: &str,
    word: &BraidWord,
    format: &str,
    extras: &[String],
) -> String {
    let reduced = word.free_reduce();
    let letters = if reduced.is_empty() {
        "e".to_string()
    } else {
        reduced
            .letters()
            .iter()
            .map(|k| {
                if *k < 0 {
                    format!("m{}", -k)
                } else {
                    k.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    };
    let mut key = format!(
        "v{}_{}_n{}_w{}_{}",
        version,
        subcommand,
        word.strands(),
        letters,
        format
    );
    for extra in extras {
        key.push('_');
        key.push_str(extra);
    }
    key
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    engine_version: String,
    key: String,
    payload: String,
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Return the cached payload if present and intact. Corrupt entries are
/// reported to the caller as `None` after a warning; the caller recomputes
/// and overwrites.
pub fn lookup(dir: &Path, key: &str) -> Option<String> {
    let path = entry_path(dir, key);
    let bytes = fs::read(&path).ok()?;
    match serde_json::from_slice::<CacheEntry>(&bytes) {
        Ok(entry) if entry.engine_version == ENGINE_VERSION && entry.key == key => {
            Some(entry.payload)
        }
        _ => {
            eprintln!(
                "warning: corrupt cache entry {}, recomputing",
                path.display()
            );
            None
        }
    }
}

pub fn store(dir: &Path, key: &str, payload: &str) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let entry = CacheEntry {
        engine_version: ENGINE_VERSION.to_string(),
        key: key.to_string(),
        payload: payload.to_string(),
    };
    let bytes = serde_json::to_vec(&entry).expect("cache entry serializes");
    fs::write(entry_path(dir, key), bytes)
}
