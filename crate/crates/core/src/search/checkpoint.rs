//! Line-based `key=value` checkpoint written after every completed `p`.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::SearchError;

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchCheckpoint {
    pub version: u32,
    pub config_digest: String,
    pub last_completed_p: u64,
    pub candidates_found: u64,
    pub elapsed_seconds: f64,
}

impl SearchCheckpoint {
    pub fn render(&self) -> String {
        format!(
            "version={}\nconfig_digest={}\nlast_completed_p={}\ncandidates_found={}\nelapsed_seconds={:.3}\n",
            self.version,
            self.config_digest,
            self.last_completed_p,
            self.candidates_found,
            self.elapsed_seconds
        )
    }

    /// Parses the format written by [`render`](Self::render). Every key
    /// must appear exactly once; unknown keys are rejected.
    pub fn parse(text: &str) -> Result<Self, String> {
        const KEYS: [&str; 5] = [
            "version",
            "config_digest",
            "last_completed_p",
            "candidates_found",
            "elapsed_seconds",
        ];
        let mut entries: HashMap<&str, &str> = HashMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("malformed line {line:?}"))?;
            if !KEYS.contains(&key) {
                return Err(format!("unknown key {key:?}"));
            }
            if entries.insert(key, value).is_some() {
                return Err(format!("duplicate key {key:?}"));
            }
        }
        fn field<T: FromStr>(entries: &HashMap<&str, &str>, key: &str) -> Result<T, String>
        where
            T::Err: std::fmt::Display,
        {
            let raw = entries
                .get(key)
                .ok_or_else(|| format!("missing key {key:?}"))?;
            raw.parse().map_err(|e| format!("bad value for {key}: {e}"))
        }
        Ok(SearchCheckpoint {
            version: field(&entries, "version")?,
            config_digest: field(&entries, "config_digest")?,
            last_completed_p: field(&entries, "last_completed_p")?,
            candidates_found: field(&entries, "candidates_found")?,
            elapsed_seconds: field(&entries, "elapsed_seconds")?,
        })
    }

    pub fn load(path: &Path) -> Result<Option<Self>, SearchError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(SearchError::io(path, e)),
        };
        Self::parse(&text)
            .map(Some)
            .map_err(|reason| SearchError::CorruptCheckpoint {
                path: path.to_path_buf(),
                reason,
            })
    }

    /// Writes to a sibling temporary file and renames it into place, so a
    /// reader never sees a partial checkpoint.
    pub fn store(&self, path: &Path) -> Result<(), SearchError> {
        let tmp = temp_path(path);
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.render().as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, path)
        };
        write().map_err(|e| SearchError::io(path, e))
    }
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SearchCheckpoint {
        SearchCheckpoint {
            version: CHECKPOINT_VERSION,
            config_digest: "ab12".into(),
            last_completed_p: 7,
            candidates_found: 0,
            elapsed_seconds: 1.5,
        }
    }

    #[test]
    fn round_trip() {
        let c = sample();
        assert_eq!(SearchCheckpoint::parse(&c.render()).unwrap(), c);
        assert!(c.render().starts_with("version=1\nconfig_digest=ab12\n"));
    }

    #[test]
    fn rejects_bad_input() {
        let text = sample().render();
        assert!(SearchCheckpoint::parse(&text.replace("version=1\n", "")).is_err());
        assert!(SearchCheckpoint::parse(&format!("{text}version=1\n")).is_err());
        assert!(SearchCheckpoint::parse(&format!("{text}extra=1\n")).is_err());
        assert!(SearchCheckpoint::parse("last_completed_p=x").is_err());
    }

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ckpt");
        assert_eq!(SearchCheckpoint::load(&path).unwrap(), None);
        sample().store(&path).unwrap();
        assert_eq!(SearchCheckpoint::load(&path).unwrap(), Some(sample()));
        assert!(!temp_path(&path).exists());
    }
}
