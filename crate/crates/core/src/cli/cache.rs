//! On-disk result cache. Files are named by the SHA-256 of the key and hold
//! the key, the payload and the payload's hash; a read is accepted only if
//! both match. Writes go to a temporary file that is renamed into place.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: Value,
    payload_sha256: String,
    payload: Value,
}

fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(
        serde_json::to_vec(v).expect("json values serialize"),
    ))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &Value) -> PathBuf {
        self.dir.join(format!("{}.json", digest(key)))
    }

    /// The cached payload for `key`, if present and intact.
    pub fn get(&self, key: &Value) -> Option<Value> {
        let bytes = fs::read(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_slice(&bytes).ok()?;
        (entry.key == *key && entry.payload_sha256 == digest(&entry.payload))
            .then_some(entry.payload)
    }

    pub fn put(&self, key: &Value, payload: &Value) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            key: key.clone(),
            payload_sha256: digest(payload),
            payload: payload.clone(),
        };
        let target = self.path(key);
        let tmp = target.with_extension(format!("tmp.{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &target)
    }
}
