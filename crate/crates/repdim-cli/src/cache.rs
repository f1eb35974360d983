//! Content-addressed cache of computed character tables, keyed by the
//! SHA-256 of the canonical group spec. Entries carry the tool version and
//! a payload checksum; writes are atomic (temp file + rename) so concurrent
//! invocations stay safe.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheMode {
    Off,
    ReadWrite,
    ReadOnly,
}

impl std::str::FromStr for CacheMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "off" => Ok(CacheMode::Off),
            "rw" => Ok(CacheMode::ReadWrite),
            "ro" => Ok(CacheMode::ReadOnly),
            other => Err(format!("unknown cache mode {other:?} (expected off|rw|ro)")),
        }
    }
}

#[derive(Debug)]
pub enum CacheError {
    /// Stored payload does not match its recorded checksum.
    ChecksumMismatch { path: PathBuf },
    Io(io::Error),
    Malformed { path: PathBuf, reason: String },
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::ChecksumMismatch { path } => {
                write!(f, "cache checksum mismatch in {}", path.display())
            }
            CacheError::Io(e) => write!(f, "cache I/O error: {e}"),
            CacheError::Malformed { path, reason } => {
                write!(f, "malformed cache entry {}: {reason}", path.display())
            }
        }
    }
}

impl From<io::Error> for CacheError {
    fn from(e: io::Error) -> Self {
        CacheError::Io(e)
    }
}

#[derive(Debug, Clone)]
pub struct TableCache {
    pub mode: CacheMode,
    pub dir: PathBuf,
}

fn sha256_hex(data: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(data.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// `REPDIM_CACHE`, else the user cache dir, else a temp-dir fallback.
pub fn default_cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var("REPDIM_CACHE") {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    if let Ok(xdg) = std::env::var("XDG_CACHE_HOME") {
        if !xdg.is_empty() {
            return Path::new(&xdg).join("repdim");
        }
    }
    if let Ok(home) = std::env::var("HOME") {
        if !home.is_empty() {
            return Path::new(&home).join(".cache").join("repdim");
        }
    }
    std::env::temp_dir().join("repdim-cache")
}

impl TableCache {
    pub fn new(mode: CacheMode, dir: PathBuf) -> Self {
        TableCache { mode, dir }
    }

    fn entry_path(&self, spec: &str) -> PathBuf {
        self.dir.join(format!("{}.json", sha256_hex(spec)))
    }

    /// Returns the cached payload for the spec, verified against its
    /// checksum. A version mismatch reads as a miss; corruption is an error.
    pub fn load(&self, spec: &str) -> Result<Option<String>, CacheError> {
        if self.mode == CacheMode::Off {
            return Ok(None);
        }
        let path = self.entry_path(spec);
        let raw = match fs::read_to_string(&path) {
            Ok(raw) => raw,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry: serde_json::Value =
            serde_json::from_str(&raw).map_err(|e| CacheError::Malformed {
                path: path.clone(),
                reason: e.to_string(),
            })?;
        let field = |name: &str| -> Result<String, CacheError> {
            entry
                .get(name)
                .and_then(|v| v.as_str())
                .map(str::to_owned)
                .ok_or_else(|| CacheError::Malformed {
                    path: path.clone(),
                    reason: format!("missing field {name:?}"),
                })
        };
        if field("tool_version")? != TOOL_VERSION {
            return Ok(None);
        }
        let payload = field("table")?;
        if field("sha256")? != sha256_hex(&payload) {
            return Err(CacheError::ChecksumMismatch { path });
        }
        Ok(Some(payload))
    }

    /// Stores the payload atomically; a no-op unless the mode is `rw`.
    pub fn store(&self, spec: &str, payload: &str) -> Result<(), CacheError> {
        if self.mode != CacheMode::ReadWrite {
            return Ok(());
        }
        fs::create_dir_all(&self.dir)?;
        let entry = serde_json::json!({
            "tool_version": TOOL_VERSION,
            "spec": spec,
            "sha256": sha256_hex(payload),
            "table": payload,
        });
        let path = self.entry_path(spec);
        let tmp = path.with_extension(format!(
            "tmp.{}.{}",
            std::process::id(),
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_nanos())
                .unwrap_or(0)
        ));
        fs::write(&tmp, serde_json::to_string(&entry).expect("cache entry serializes"))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_load_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(CacheMode::ReadWrite, dir.path().to_path_buf());
        assert_eq!(cache.load("cyclic(3)").unwrap(), None);
        cache.store("cyclic(3)", "{\"payload\":1}").unwrap();
        assert_eq!(cache.load("cyclic(3)").unwrap().as_deref(), Some("{\"payload\":1}"));
    }

    #[test]
    fn poisoned_payload_is_a_checksum_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(CacheMode::ReadWrite, dir.path().to_path_buf());
        cache.store("cyclic(3)", "{\"payload\":1}").unwrap();
        // Tamper with the stored payload but keep the recorded checksum.
        let path = cache.entry_path("cyclic(3)");
        let tampered = fs::read_to_string(&path)
            .unwrap()
            .replace("{\\\"payload\\\":1}", "{\\\"payload\\\":2}");
        fs::write(&path, tampered).unwrap();
        assert!(matches!(
            cache.load("cyclic(3)"),
            Err(CacheError::ChecksumMismatch { .. })
        ));
    }

    #[test]
    fn read_only_mode_never_writes() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(CacheMode::ReadOnly, dir.path().to_path_buf());
        cache.store("cyclic(3)", "payload").unwrap();
        assert_eq!(cache.load("cyclic(3)").unwrap(), None);
        assert!(!cache.entry_path("cyclic(3)").exists());
    }

    #[test]
    fn off_mode_neither_reads_nor_writes() {
        let dir = tempfile::tempdir().unwrap();
        let rw = TableCache::new(CacheMode::ReadWrite, dir.path().to_path_buf());
        rw.store("cyclic(3)", "payload").unwrap();
        let off = TableCache::new(CacheMode::Off, dir.path().to_path_buf());
        assert_eq!(off.load("cyclic(3)").unwrap(), None);
    }
}
