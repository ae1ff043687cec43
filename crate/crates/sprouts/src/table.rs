//! Thread-safe memo table and its on-disk cache format.
//!
//! The cache is plain text: a version header followed by one line per
//! canonical position, sorted by key:
//!
//! ```text
//! sprouts-grundy-cache v1
//! <key as 32 hex digits> <nimber> <min play length> <max play length>
//! ```

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use dashmap::DashMap;
use sprouts_core::table::Evaluation;
use sprouts_core::{Nimber, NimberTable, StateKey};
use thiserror::Error;

pub const CACHE_HEADER: &str = "sprouts-grundy-cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("not a grundy cache or unsupported version (header {0:?})")]
    Header(String),
    #[error("cache line {line}: {message}")]
    Line { line: usize, message: String },
}

/// Memo table shared between threads. Inserts are idempotent: a key always
/// maps to the same evaluation, so racing writers agree.
#[derive(Debug, Default)]
pub struct SharedTable {
    entries: DashMap<StateKey, Evaluation>,
}

impl SharedTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load(path: &Path) -> Result<Self, CacheError> {
        let table = SharedTable::new();
        table.merge_file(path)?;
        Ok(table)
    }

    /// Loads `path` if it exists, otherwise starts empty.
    pub fn load_or_new(path: &Path) -> Result<Self, CacheError> {
        if path.exists() {
            Self::load(path)
        } else {
            Ok(Self::new())
        }
    }

    pub fn merge_file(&self, path: &Path) -> Result<usize, CacheError> {
        let reader = BufReader::new(fs::File::open(path)?);
        let mut lines = reader.lines();
        let header = lines.next().transpose()?.unwrap_or_default();
        if header.trim_end() != CACHE_HEADER {
            return Err(CacheError::Header(header));
        }
        let mut count = 0;
        for (idx, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let (key, eval) = parse_line(&line).map_err(|message| CacheError::Line { line: idx + 2, message })?;
            self.entries.insert(key, eval);
            count += 1;
        }
        Ok(count)
    }

    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        let mut rows: Vec<(StateKey, Evaluation)> = self.entries.iter().map(|e| (*e.key(), *e.value())).collect();
        rows.sort_unstable_by_key(|(k, _)| *k);
        let tmp = path.with_extension("tmp");
        {
            let mut out = BufWriter::new(fs::File::create(&tmp)?);
            writeln!(out, "{CACHE_HEADER}")?;
            for (key, eval) in rows {
                writeln!(out, "{:032x} {} {} {}", key.0, eval.nimber.0, eval.min_len, eval.max_len)?;
            }
            out.flush()?;
        }
        fs::rename(tmp, path)?;
        Ok(())
    }
}

fn parse_line(line: &str) -> Result<(StateKey, Evaluation), String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [key, nimber, min_len, max_len] = fields[..] else {
        return Err(format!("expected 4 fields, found {}", fields.len()));
    };
    let raw = u128::from_str_radix(key, 16).map_err(|e| format!("bad key {key:?}: {e}"))?;
    let key = StateKey::from_raw(raw).ok_or_else(|| format!("key {raw:032x} is not a canonical position"))?;
    let num = |s: &str| s.parse::<u64>().map_err(|e| format!("bad number {s:?}: {e}"));
    let eval = Evaluation {
        nimber: Nimber(num(nimber)?),
        min_len: num(min_len)? as u32,
        max_len: num(max_len)? as u32,
    };
    if eval.min_len > eval.max_len {
        return Err("min play length exceeds max".into());
    }
    Ok((key, eval))
}

impl NimberTable for SharedTable {
    fn get(&self, key: StateKey) -> Option<Evaluation> {
        self.entries.get(&key).map(|e| *e)
    }

    fn insert(&self, key: StateKey, value: Evaluation) {
        self.entries.insert(key, value);
    }

    fn len(&self) -> usize {
        self.entries.len()
    }
}
