//! Content-addressed JSON cache and run manifests.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Serialize, Deserialize)]
struct Blob<K, V> {
    version: String,
    kind: String,
    key: K,
    value: V,
}

/// Directory of blobs named by the digest of `(version, kind, key)`.
#[derive(Clone, Debug)]
pub struct ContentStore {
    dir: PathBuf,
}

impl ContentStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ContentStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for<K: Serialize>(&self, kind: &str, key: &K) -> Result<PathBuf> {
        let address = serde_json::to_vec(&(TOOL_VERSION, kind, key))?;
        Ok(self.dir.join(format!("{}.json", sha256_hex(&address))))
    }

    /// A blob is reused only if it parses, carries this tool version and
    /// kind, and records the same key. Anything else is a miss.
    pub fn lookup<K, V>(&self, kind: &str, key: &K) -> Option<V>
    where
        K: Serialize + DeserializeOwned + PartialEq,
        V: DeserializeOwned,
    {
        let path = self.path_for(kind, key).ok()?;
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Blob<K, V>>(&text) {
            Ok(b) if b.version == TOOL_VERSION && b.kind == kind && b.key == *key => Some(b.value),
            Ok(_) => {
                log::warn!("cache entry {} is stale; recomputing", path.display());
                None
            }
            Err(e) => {
                log::warn!("cache entry {} is corrupt ({e}); recomputing", path.display());
                None
            }
        }
    }

    /// Atomic: the blob is written to a temporary file in the same directory
    /// and renamed into place.
    pub fn store<K: Serialize, V: Serialize>(&self, kind: &str, key: &K, value: &V) -> Result<PathBuf> {
        let path = self.path_for(kind, key)?;
        let blob = Blob { version: TOOL_VERSION.to_string(), kind: kind.to_string(), key, value };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &blob)?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }
}

/// Everything that determines an output, plus the wall time, which is
/// excluded from the digest.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: serde_json::Value,
    pub input_digests: BTreeMap<String, String>,
    pub tool_version: String,
    pub wall_time_seconds: f64,
    pub output_digest: String,
}

impl RunManifest {
    pub fn new(subcommand: &str, parameters: serde_json::Value) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            parameters,
            input_digests: BTreeMap::new(),
            tool_version: TOOL_VERSION.to_string(),
            wall_time_seconds: 0.0,
            output_digest: String::new(),
        }
    }

    pub fn add_input(&mut self, name: &str, bytes: &[u8]) {
        self.input_digests.insert(name.to_string(), sha256_hex(bytes));
    }

    /// Digest of the configuration alone: subcommand, parameters, inputs and
    /// version.
    pub fn config_digest(&self) -> String {
        let config = serde_json::json!({
            "subcommand": self.subcommand,
            "parameters": self.parameters,
            "input_digests": self.input_digests,
            "tool_version": self.tool_version,
        });
        sha256_hex(config.to_string().as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let s = ContentStore::open(dir.path()).unwrap();
        s.store("census", &("saw", 2u32), &vec![4u32, 12]).unwrap();
        let back: Option<Vec<u32>> = s.lookup("census", &("saw".to_string(), 2u32));
        assert_eq!(back, Some(vec![4, 12]));
        let other: Option<Vec<u32>> = s.lookup("census", &("saw".to_string(), 3u32));
        assert_eq!(other, None);
    }

    #[test]
    fn corrupt_and_stale_blobs_miss() {
        let dir = tempfile::tempdir().unwrap();
        let s = ContentStore::open(dir.path()).unwrap();
        let path = s.store("k", &1u32, &"v").unwrap();
        fs::write(&path, "{not json").unwrap();
        assert_eq!(s.lookup::<u32, String>("k", &1), None);
        fs::write(&path, r#"{"version":"0.0.0-old","kind":"k","key":1,"value":"v"}"#).unwrap();
        assert_eq!(s.lookup::<u32, String>("k", &1), None);
        fs::write(&path, format!(r#"{{"version":"{TOOL_VERSION}","kind":"k","key":1,"value":7}}"#)).unwrap();
        assert_eq!(s.lookup::<u32, String>("k", &1), None);
    }

    #[test]
    fn manifest_digest_ignores_wall_time() {
        let mut a = RunManifest::new("enumerate", serde_json::json!({"d": 2}));
        let mut b = a.clone();
        a.wall_time_seconds = 1.0;
        b.wall_time_seconds = 9.0;
        assert_eq!(a.config_digest(), b.config_digest());
        b.add_input("table", b"{}");
        assert_ne!(a.config_digest(), b.config_digest());
    }
}
