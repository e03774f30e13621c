//! Best-known-solution cache and reproducible run records.
//!
//! The cache is an append-only JSON-lines file keyed by instance and
//! objective. A new record is appended only on strict improvement, so the
//! last matching line is always the best known. Corrupt lines are skipped
//! with a warning, never a crash. Concurrent writers serialize through an
//! exclusive advisory lock on the cache file.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::graphs::Graph;
use crate::lambda::{lambda_from_string, Lambda};

/// Objective direction of a cached result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Min,
    Max,
}

/// Instance identity for cache lookup: either a multipartite drawing problem
/// or a named graph (by content hash).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceKey {
    Multipartite {
        dim: u32,
        half_width: u32,
        class_sizes: Vec<usize>,
    },
    Graph {
        hash: String,
    },
}

impl InstanceKey {
    pub fn for_graph(g: &Graph) -> Self {
        // content hash of the canonical edge-list text, stable across runs
        let mut hasher = Sha256::new();
        hasher.update(g.to_edge_list_text().as_bytes());
        let hash = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>();
        InstanceKey::Graph { hash }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub instance: InstanceKey,
    pub objective: Objective,
}

/// A reproducible record of one solver run. Re-evaluating the witness must
/// reproduce `lambda` exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub config: serde_json::Value,
    pub instance: String,
    /// Exact lambda as a `p/q` string.
    pub lambda: String,
    pub witness: serde_json::Value,
    pub wall_time_ms: u64,
    pub version: String,
    #[serde(default)]
    pub unix_time: u64,
}

impl RunRecord {
    pub fn new(
        command: impl Into<String>,
        config: serde_json::Value,
        instance: impl Into<String>,
        lambda: &Lambda,
        witness: serde_json::Value,
        wall_time_ms: u64,
    ) -> Self {
        RunRecord {
            command: command.into(),
            config,
            instance: instance.into(),
            lambda: crate::lambda::lambda_string(lambda),
            witness,
            wall_time_ms,
            version: env!("CARGO_PKG_VERSION").to_string(),
            unix_time: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn lambda_value(&self) -> Option<Lambda> {
        lambda_from_string(&self.lambda)
    }
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    key: CacheKey,
    record: RunRecord,
}

fn better(candidate: &Lambda, incumbent: &Lambda, objective: Objective) -> bool {
    match objective {
        Objective::Min => candidate < incumbent,
        Objective::Max => candidate > incumbent,
    }
}

/// Looks up the best record for `key`, inserting `candidate` if it is a
/// strict improvement (or the first entry). Returns the best record after the
/// update. Ties keep the incumbent.
pub fn cache_lookup_update(
    path: &Path,
    key: &CacheKey,
    candidate: Option<&RunRecord>,
) -> std::io::Result<Option<RunRecord>> {
    let mut file = OpenOptions::new()
        .read(true)
        .append(true)
        .create(true)
        .open(path)?;
    lock_exclusive(&file)?;
    let result = (|| {
        let mut best: Option<RunRecord> = None;
        let mut reader = BufReader::new(&file);
        reader.seek(SeekFrom::Start(0))?;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: CacheLine = match serde_json::from_str(&line) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!(
                        "warning: skipping corrupt cache line {} in {}: {e}",
                        lineno + 1,
                        path.display()
                    );
                    continue;
                }
            };
            if &parsed.key != key {
                continue;
            }
            let lambda = match parsed.record.lambda_value() {
                Some(l) => l,
                None => {
                    eprintln!(
                        "warning: skipping cache line {} with bad lambda {:?}",
                        lineno + 1,
                        parsed.record.lambda
                    );
                    continue;
                }
            };
            let replace = match &best {
                None => true,
                Some(b) => better(&lambda, &b.lambda_value().unwrap(), key.objective),
            };
            if replace {
                best = Some(parsed.record);
            }
        }
        if let Some(candidate) = candidate {
            let candidate_lambda = candidate.lambda_value();
            let improves = match (&best, &candidate_lambda) {
                (_, None) => false,
                (None, Some(_)) => true,
                (Some(b), Some(c)) => better(c, &b.lambda_value().unwrap(), key.objective),
            };
            if improves {
                let line = CacheLine {
                    key: key.clone(),
                    record: candidate.clone(),
                };
                file.seek(SeekFrom::End(0))?;
                serde_json::to_writer(&mut file, &line)?;
                file.write_all(b"\n")?;
                file.flush()?;
                best = Some(candidate.clone());
            }
        }
        Ok(best)
    })();
    unlock(&file);
    result
}

#[cfg(unix)]
fn lock_exclusive(file: &std::fs::File) -> std::io::Result<()> {
    use std::os::unix::io::AsRawFd;
    let rc = unsafe { libc::flock(file.as_raw_fd(), libc::LOCK_EX) };
    if rc != 0 {
        return Err(std::io::Error::last_os_error());
    }
    Ok(())
}

#[cfg(unix)]
fn unlock(file: &std::fs::File) {
    use std::os::unix::io::AsRawFd;
    unsafe { libc::flock(file.as_raw_fd(), libc::LOCK_UN) };
}

#[cfg(not(unix))]
fn lock_exclusive(_file: &std::fs::File) -> std::io::Result<()> {
    Ok(())
}

#[cfg(not(unix))]
fn unlock(_file: &std::fs::File) {}
