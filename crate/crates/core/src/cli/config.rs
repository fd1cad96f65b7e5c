use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::statesum::DEFAULT_BUDGET;

/// Settings from a `key = value` file; command-line flags and `SKTORUS_*` variables take precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub budget: u64,
    pub root: Option<u64>,
    pub fixture_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            root: None,
            fixture_dir: None,
        }
    }
}

impl Config {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Self::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Malformed(format!("config line {}: expected key = value", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let num = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| Error::Malformed(format!("config line {}: `{v}` is not a number", no + 1)))
            };
            match k {
                "budget" => c.budget = num(v)?,
                "root" => c.root = Some(num(v)?),
                "fixture_dir" => c.fixture_dir = Some(PathBuf::from(v)),
                _ => return Err(Error::Malformed(format!("config line {}: unknown key `{k}`", no + 1))),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
