//! Append-only result cache: one JSON object per line, version 1.
//!
//! Records are keyed by (family, k, n) with k = 0 standing in for the plane
//! family's absent color count. Unknown fields in a record are ignored so
//! newer writers stay readable; two records for one key must agree, and a
//! disagreement is reported as corruption.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub version: u32,
    pub family: String,
    pub k: u64,
    pub n: u64,
    pub value: String,
}

#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    /// Line number (1-based) and what was wrong with it.
    Malformed(usize, String),
    /// Two records for one key disagree.
    Corrupt(String),
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache i/o error: {e}"),
            CacheError::Malformed(line, why) => {
                write!(f, "malformed cache line {line}: {why}")
            }
            CacheError::Corrupt(why) => write!(f, "cache corruption: {why}"),
        }
    }
}

impl std::error::Error for CacheError {}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: HashMap<(String, u64, u64), String>,
}

impl Cache {
    /// Load every record from `path`; a missing file is an empty cache.
    pub fn load(path: &Path) -> Result<Cache, CacheError> {
        let mut entries = HashMap::new();
        match File::open(path) {
            Ok(file) => {
                for (idx, line) in BufReader::new(file).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let record: CacheRecord = serde_json::from_str(&line)
                        .map_err(|e| CacheError::Malformed(idx + 1, e.to_string()))?;
                    if record.version != CACHE_VERSION {
                        return Err(CacheError::Malformed(
                            idx + 1,
                            format!("unsupported cache version {}", record.version),
                        ));
                    }
                    let key = (record.family.clone(), record.k, record.n);
                    if let Some(existing) = entries.get(&key) {
                        if existing != &record.value {
                            return Err(CacheError::Corrupt(format!(
                                "key ({}, k={}, n={}) has values {existing} and {}",
                                record.family, record.k, record.n, record.value
                            )));
                        }
                    } else {
                        entries.insert(key, record.value);
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(Cache {
            path: path.to_path_buf(),
            entries,
        })
    }

    #[allow(dead_code)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[allow(dead_code)]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, family: &str, k: u64, n: u64) -> Option<&str> {
        self.entries
            .get(&(family.to_string(), k, n))
            .map(String::as_str)
    }

    /// Append one record to the file and the in-memory map. An equal value
    /// already present is a no-op; an unequal one is corruption.
    pub fn store(&mut self, family: &str, k: u64, n: u64, value: &str) -> Result<(), CacheError> {
        let key = (family.to_string(), k, n);
        if let Some(existing) = self.entries.get(&key) {
            if existing == value {
                return Ok(());
            }
            return Err(CacheError::Corrupt(format!(
                "key ({family}, k={k}, n={n}) already holds {existing}, refusing to store {value}"
            )));
        }
        let record = CacheRecord {
            version: CACHE_VERSION,
            family: family.to_string(),
            k,
            n,
            value: value.to_string(),
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let line = serde_json::to_string(&record).expect("record serializes");
        writeln!(file, "{line}")?;
        self.entries.insert(key, record.value);
        Ok(())
    }
}
