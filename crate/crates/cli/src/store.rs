//! Append-only JSON-lines store of search records.
//!
//! Every line is one `RecordJson` object with `"v": 1`. Reading re-verifies
//! each witness through the sumset code, so a hand-edited line with a wrong
//! `best_size` is reported as corrupt rather than trusted.

use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use sumset_core::search::SearchRecord;

use crate::error::{CliError, Result};
use crate::json::RecordJson;

pub struct RecordStore {
    path: PathBuf,
}

impl RecordStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        RecordStore { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io(&self, source: std::io::Error) -> CliError {
        CliError::Io { path: self.path.clone(), source }
    }

    /// Appends `record`, stamping the current time if it has none. Returns the
    /// record as written.
    pub fn append(&self, record: &SearchRecord) -> Result<SearchRecord> {
        let mut record = record.clone();
        if record.timestamp.is_none() {
            let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            record.timestamp = Some(now);
        }
        let mut line = serde_json::to_string(&RecordJson::from(&record)).expect("record serializes");
        line.push('\n');
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io(e))?;
        file.write_all(line.as_bytes()).map_err(|e| self.io(e))?;
        Ok(record)
    }

    /// All records in file order. A missing file is an empty store; blank
    /// lines are skipped.
    pub fn read_all(&self) -> Result<Vec<SearchRecord>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(text) => text,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(self.io(e)),
        };
        let corrupt = |line: usize, message: String| CliError::RecordCorrupt {
            path: self.path.clone(),
            line,
            message,
        };
        let mut records = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let parsed: RecordJson =
                serde_json::from_str(raw).map_err(|e| corrupt(line, e.to_string()))?;
            let record = SearchRecord::try_from(parsed).map_err(|m| corrupt(line, m))?;
            if !record.verify() {
                return Err(corrupt(line, "witness does not reproduce best_size".into()));
            }
            records.push(record);
        }
        Ok(records)
    }

    /// Smallest `best_size` recorded for `n`; complete records win ties, then
    /// the earliest line.
    pub fn best(&self, n: usize) -> Result<Option<SearchRecord>> {
        Ok(self
            .read_all()?
            .into_iter()
            .filter(|r| r.n == n)
            .min_by_key(|r| (r.best_size, !r.complete)))
    }
}
