//! On-disk cache for Bruhat intervals and their Cauchon entries.
//!
//! One JSON file per `(Cartan type, word)` pair, named by the SHA-256 of the
//! canonical key. Entries carry a format version; anything that fails to
//! read, parse or match the requested key and version is a miss. Stores go
//! through a temporary file and a rename so readers never see partial data.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hstrata::schubert::{CauchonEntry, SchubertData};
use hstrata::{Diagram, WeylElement};

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedCauchonEntry {
    pub matrix: Vec<i64>,
    pub diagram: Diagram,
    pub stratum_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub key: String,
    pub cartan_type: String,
    pub word: Vec<usize>,
    pub entries: Vec<CachedCauchonEntry>,
}

impl CacheEntry {
    pub fn from_entries(data: &SchubertData, entries: &[CauchonEntry]) -> Self {
        let cartan_type = data.spec().cartan_type().to_string();
        let word = data.word().0.clone();
        CacheEntry {
            version: CACHE_VERSION,
            key: cache_key(&cartan_type, &word),
            cartan_type,
            word,
            entries: entries
                .iter()
                .map(|e| CachedCauchonEntry {
                    matrix: e.element.matrix().to_vec(),
                    diagram: e.diagram.clone(),
                    stratum_dim: e.stratum_dim,
                })
                .collect(),
        }
    }

    /// Rebuilds the entries; `None` if the payload does not fit `data`.
    pub fn to_entries(&self, data: &SchubertData) -> Option<Vec<CauchonEntry>> {
        let rs = data.root_system();
        self.entries
            .iter()
            .map(|c| {
                if c.diagram.max_member().is_some_and(|m| m > data.n()) {
                    return None;
                }
                let element = WeylElement::from_matrix(rs, c.matrix.clone()).ok()?;
                Some(CauchonEntry::new(element, c.diagram.clone(), c.stratum_dim))
            })
            .collect()
    }
}

/// Hex SHA-256 of `"<type>:<w1>,<w2>,…"`.
pub fn cache_key(cartan_type: &str, word: &[usize]) -> String {
    let canonical = format!(
        "{cartan_type}:{}",
        word.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    );
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn lookup(&self, key: &str) -> Option<CacheEntry> {
        self.lookup_versioned(key, CACHE_VERSION)
    }

    pub(crate) fn lookup_versioned(&self, key: &str, version: u32) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path_for(key)?).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.version == version && entry.key == key).then_some(entry)
    }

    /// Writes `entry` atomically. A disabled cache silently accepts the store.
    pub fn store(&self, entry: &CacheEntry) -> std::io::Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path_for(&entry.key)) else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{}.{}.tmp", entry.key, std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(entry).map_err(std::io::Error::other)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hstrata::schubert::{build_schubert, cauchon_entries, SchubertSpec};

    fn g2() -> SchubertData {
        build_schubert(&SchubertSpec::from_json(r#"{"type":"G","rank":2,"word":[1,2,1,2,1,2]}"#).unwrap())
            .unwrap()
    }

    #[test]
    fn miss_store_hit() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let data = g2();
        let entries = cauchon_entries(&data).unwrap();
        let entry = CacheEntry::from_entries(&data, &entries);
        assert!(cache.lookup(&entry.key).is_none());
        cache.store(&entry).unwrap();
        let hit = cache.lookup(&entry.key).unwrap();
        assert_eq!(hit, entry);
        assert_eq!(hit.to_entries(&data).unwrap(), entries);
    }

    #[test]
    fn version_bump_invalidates() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let data = g2();
        let entry = CacheEntry::from_entries(&data, &cauchon_entries(&data).unwrap());
        cache.store(&entry).unwrap();
        assert!(cache.lookup_versioned(&entry.key, CACHE_VERSION + 1).is_none());
    }

    #[test]
    fn garbage_and_absent_dirs_are_misses() {
        let dir = tempfile::tempdir().unwrap();
        let key = cache_key("A2", &[1, 2, 1]);
        fs::write(dir.path().join(format!("{key}.json")), "{not json").unwrap();
        assert!(Cache::new(Some(dir.path().to_path_buf())).lookup(&key).is_none());
        assert!(Cache::new(Some(dir.path().join("nope"))).lookup(&key).is_none());
        assert!(Cache::disabled().lookup(&key).is_none());
        assert!(Cache::disabled().store(&CacheEntry {
            version: CACHE_VERSION,
            key,
            cartan_type: "A2".into(),
            word: vec![],
            entries: vec![],
        })
        .is_ok());
    }

    #[test]
    fn keys_are_distinct() {
        assert_ne!(cache_key("A2", &[1, 2, 1]), cache_key("A2", &[2, 1, 2]));
        assert_ne!(cache_key("A3", &[1, 2]), cache_key("A2", &[1, 2]));
        assert_eq!(cache_key("A2", &[1, 2, 1]).len(), 64);
    }
}
