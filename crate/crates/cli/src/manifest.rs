//! Content hashes of the shipped data files.
//!
//! `data/MANIFEST.json` maps every file below the data directory (relative,
//! `/`-separated paths) to its SHA-256 digest.  A model is *checked* when its
//! bytes hash to a digest listed in the manifest, wherever the file lives;
//! anything else is refused unless the caller opts out with `--unchecked`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// File name of the manifest inside the data directory.
pub const MANIFEST_FILE: &str = "MANIFEST.json";

/// The manifest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    /// Format version.
    pub version: u32,
    /// Hash algorithm (always `sha256`).
    pub algorithm: String,
    /// Relative path → hex digest.
    pub files: BTreeMap<String, String>,
}

/// A model file as recorded in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRef {
    /// Identifier: the manifest path for shipped files, otherwise the path given.
    pub id: String,
    /// SHA-256 of the file contents.
    pub sha256: String,
    /// Whether the digest is listed in the manifest.
    pub checked: bool,
}

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

impl Manifest {
    /// Hashes every file below `dir` except the manifest itself.
    pub fn scan(dir: &Path) -> Result<Manifest, CliError> {
        let mut files = BTreeMap::new();
        for entry in walkdir::WalkDir::new(dir).sort_by_file_name() {
            let entry = entry.map_err(|e| CliError::Input(e.to_string()))?;
            if !entry.file_type().is_file() {
                continue;
            }
            let rel = entry.path().strip_prefix(dir).expect("below the root");
            let key = rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/");
            if key == MANIFEST_FILE {
                continue;
            }
            files.insert(key, sha256_hex(&read(entry.path())?));
        }
        Ok(Manifest { version: 1, algorithm: "sha256".into(), files })
    }

    /// Reads `dir/MANIFEST.json`.
    pub fn load(dir: &Path) -> Result<Manifest, CliError> {
        let path = dir.join(MANIFEST_FILE);
        let bytes = read(&path)?;
        serde_json::from_slice(&bytes).map_err(|e| CliError::Input(format!("malformed {}: {e}", path.display())))
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Manifest key of a digest, if listed.
    pub fn key_of(&self, digest: &str) -> Option<&str> {
        self.files.iter().find(|(_, d)| d.as_str() == digest).map(|(k, _)| k.as_str())
    }

    /// Hashes `path` and checks it against the manifest; unlisted content is
    /// an input error unless `unchecked` is set.
    pub fn verify(&self, path: &Path, unchecked: bool) -> Result<ModelRef, CliError> {
        let digest = sha256_hex(&read(path)?);
        match self.key_of(&digest) {
            Some(key) => Ok(ModelRef { id: key.to_string(), sha256: digest, checked: true }),
            None if unchecked => Ok(ModelRef { id: path.display().to_string(), sha256: digest, checked: false }),
            None => Err(CliError::Input(format!(
                "{} is not a hashed model file (content {digest} is not in the manifest); pass --unchecked to use it anyway",
                path.display()
            ))),
        }
    }
}

/// Resolves a model argument: a bare name refers to `data/<subdir>/<name>.toml`,
/// anything containing a path separator or ending in `.toml` is a path.
pub fn resolve(data_dir: &Path, subdir: &str, arg: &str) -> PathBuf {
    if arg.contains(['/', '\\']) || arg.ends_with(".toml") {
        PathBuf::from(arg)
    } else {
        data_dir.join(subdir).join(format!("{arg}.toml"))
    }
}
