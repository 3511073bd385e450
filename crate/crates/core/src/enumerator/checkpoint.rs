//! Resumable search: an append-only NDJSON log of finished shards plus one
//! result file per shard, all keyed by the configuration hash.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{SearchConfig, SearchResult};
use crate::error::Result;

pub const LOG_FILE: &str = "checkpoint.ndjson";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointRecord {
    pub config_hash: String,
    pub shard_id: usize,
    pub status: String,
}

pub struct CheckpointLog {
    dir: PathBuf,
    hash: String,
    done: HashSet<usize>,
}

impl CheckpointLog {
    /// Opens (creating if needed) the log in `dir`. Unreadable lines and
    /// records for other configurations are ignored.
    pub fn open(dir: &Path, config: &SearchConfig) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let hash = config.hash();
        let mut done = HashSet::new();
        if let Ok(text) = fs::read_to_string(dir.join(LOG_FILE)) {
            for line in text.lines() {
                if let Ok(r) = serde_json::from_str::<CheckpointRecord>(line) {
                    if r.config_hash == hash && r.status == "done" {
                        done.insert(r.shard_id);
                    }
                }
            }
        }
        Ok(CheckpointLog {
            dir: dir.to_path_buf(),
            hash,
            done,
        })
    }

    fn shard_path(&self, shard: usize) -> PathBuf {
        self.dir.join(format!("shard-{}-{shard}.json", &self.hash[..16]))
    }

    pub fn is_done(&self, shard: usize) -> bool {
        self.done.contains(&shard)
    }

    /// The stored result of a finished shard, if it can be read back.
    pub fn load(&self, shard: usize) -> Option<SearchResult> {
        if !self.is_done(shard) {
            return None;
        }
        let text = fs::read_to_string(self.shard_path(shard)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn record(&self, shard: usize, result: &SearchResult) -> Result<()> {
        let path = self.shard_path(shard);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(result)?)?;
        fs::rename(&tmp, &path)?;
        let record = CheckpointRecord {
            config_hash: self.hash.clone(),
            shard_id: shard,
            status: "done".into(),
        };
        let mut log = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.dir.join(LOG_FILE))?;
        writeln!(log, "{}", serde_json::to_string(&record)?)?;
        Ok(())
    }
}
