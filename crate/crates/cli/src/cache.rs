//! Content-addressed cache of job results.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored fragment, if present and intact. Anything malformed or
    /// failing its digest is treated as absent.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Value = serde_json::from_str(&text).ok()?;
        let fragment = entry.get("fragment")?;
        let ok = entry.get("key")?.as_str()? == key
            && entry.get("digest")?.as_str()? == sha256_hex(fragment.to_string().as_bytes());
        ok.then(|| fragment.clone())
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn put(&self, key: &str, fragment: &Value) -> std::io::Result<()> {
        let entry = json!({
            "key": key,
            "digest": sha256_hex(fragment.to_string().as_bytes()),
            "fragment": fragment,
        });
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(entry.to_string().as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path()).unwrap();
        let v = json!({"dims": [1, 2]});
        assert_eq!(c.get("k"), None);
        c.put("k", &v).unwrap();
        assert_eq!(c.get("k"), Some(v));
        let p = c.path("k");
        let bad = fs::read_to_string(&p).unwrap().replace("[1,2]", "[1,3]");
        fs::write(&p, bad).unwrap();
        assert_eq!(c.get("k"), None);
        fs::write(&p, "not json").unwrap();
        assert_eq!(c.get("k"), None);
    }
}
