//! A small content-addressed result cache.
//!
//! Heavy artifacts (rank tables, kernel dimensions) are keyed by a sha-256
//! digest of a canonical description of the computation. Records carry a
//! format version; stale versions are ignored rather than migrated.

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

use crate::error::QError;

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, serde::Deserialize)]
struct Record<T> {
    version: u32,
    key: String,
    value: T,
}

/// Directory-backed cache; one JSON file per record.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self, QError> {
        std::fs::create_dir_all(dir.as_ref())?;
        Ok(Cache { dir: dir.as_ref().to_path_buf() })
    }

    fn path_for(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{:x}.json", digest))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = std::fs::read_to_string(self.path_for(key)).ok()?;
        let rec: Record<T> = serde_json::from_str(&text).ok()?;
        // A digest collision across keys is implausible, but the key is
        // stored and checked anyway; version mismatches read as misses.
        (rec.version == CACHE_VERSION && rec.key == key).then_some(rec.value)
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> Result<(), QError> {
        let rec = Record { version: CACHE_VERSION, key: key.to_string(), value };
        let text = serde_json::to_string(&rec).expect("serializable record");
        std::fs::write(self.path_for(key), text)?;
        Ok(())
    }

    /// Compute on miss, store, and return.
    pub fn get_or<T, G>(&self, key: &str, compute: G) -> Result<T, QError>
    where
        T: Serialize + DeserializeOwned,
        G: FnOnce() -> Result<T, QError>,
    {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute()?;
        self.put(key, &v)?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        assert_eq!(cache.get::<u32>("a"), None);
        cache.put("a", &42u32).unwrap();
        assert_eq!(cache.get::<u32>("a"), Some(42));
        let mut calls = 0;
        let v: u32 = cache
            .get_or("a", || {
                calls += 1;
                Ok(7)
            })
            .unwrap();
        assert_eq!((v, calls), (42, 0));
    }
}
