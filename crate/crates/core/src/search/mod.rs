//! Exhaustive search over `q < 59p`: for each `p`, every coprime `q`, every
//! candidate `t` in the exact range is tested, in parallel over `q`, with a
//! checkpoint after each `p`.

pub mod bounds;
pub mod checkpoint;
pub mod divisors;
pub mod run;
pub mod scan;
pub mod sieve;

use std::fmt;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cuboid_eqs::EqError;

pub use bounds::t_bounds;
pub use checkpoint::SearchCheckpoint;
pub use run::{run_search, ProgressEvent, RunControl, SearchReport};
pub use scan::{scan_pair, scan_range, PairCounters, PairOutcome, ScanOptions};
pub use sieve::{modular_sieve, Sieve};

pub const DEFAULT_SIEVE_MODULI: [u64; 6] = [64, 81, 25, 7, 11, 13];

/// How candidate `t` values are generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    /// Every `t` in the range.
    Scan,
    /// Only divisors of the constant term `p¹⁰q¹⁰`.
    Divisor,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Scan => "SCAN",
            Mode::Divisor => "DIVISOR",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "SCAN" => Ok(Mode::Scan),
            "DIVISOR" => Ok(Mode::Divisor),
            _ => Err(format!("unknown mode {s:?} (expected scan or divisor)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub mode: Mode,
    pub sieve_moduli: Vec<u64>,
    pub worker_count: usize,
    pub checkpoint_path: Option<PathBuf>,
    pub output_path: PathBuf,
    /// Visit every `q < 59p` even after the ranges are provably empty.
    pub faithful: bool,
}

impl SearchConfig {
    pub fn new(p_min: u64, p_max: u64, output_path: impl Into<PathBuf>) -> Self {
        SearchConfig {
            p_min,
            p_max,
            mode: Mode::Scan,
            sieve_moduli: DEFAULT_SIEVE_MODULI.to_vec(),
            worker_count: 1,
            checkpoint_path: None,
            output_path: output_path.into(),
            faithful: false,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let invalid = |m: String| Err(SearchError::InvalidConfig(m));
        if self.p_min == 0 {
            return invalid("p_min must be positive".into());
        }
        if self.p_min > self.p_max {
            return invalid(format!("p_min={} exceeds p_max={}", self.p_min, self.p_max));
        }
        if let Some(m) = self.sieve_moduli.iter().find(|&&m| m < 2) {
            return invalid(format!("sieve modulus {m} must exceed 1"));
        }
        if self.worker_count == 0 {
            return invalid("worker count must be positive".into());
        }
        // 61p² must fit comfortably in u64 arithmetic downstream
        if self.p_max > 1 << 24 {
            return invalid(format!("p_max={} is out of range", self.p_max));
        }
        Ok(())
    }

    /// SHA-256 over the settings that determine the output. Worker count and
    /// file paths are excluded: they do not change results.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let moduli: Vec<String> = self.sieve_moduli.iter().map(u64::to_string).collect();
        let canonical = format!(
            "p_min={};p_max={};mode={};sieve_moduli={};faithful={}",
            self.p_min,
            self.p_max,
            self.mode,
            moduli.join(","),
            self.faithful
        );
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("checkpoint was written for config {found}, current config is {expected}")]
    ResumeMismatch { expected: String, found: String },
    #[error("checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Eq(#[from] EqError),
    #[error("cannot start worker pool: {0}")]
    ThreadPool(String),
}

impl SearchError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        SearchError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
