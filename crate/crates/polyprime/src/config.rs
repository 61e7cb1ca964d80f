//! Runtime configuration: built-in defaults, an optional key=value config
//! file named by the `POLYPRIME_CONFIG` environment variable, and
//! command-line flags that override both.

use crate::error::{Error, Result};
use crate::report::OutputFormat;
use crate::sieve::{DEFAULT_SEGMENT_BITS, MAX_SIEVE_LIMIT};
use std::path::{Path, PathBuf};

/// Environment variable naming the config file to load before flags apply.
pub const CONFIG_ENV: &str = "POLYPRIME_CONFIG";

/// Settings shared by every subcommand. Flags override config-file values,
/// which override these defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Directory holding the prime sieve cache; no caching when unset.
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for sieving and enumeration.
    pub workers: usize,
    /// Hard ceiling on any requested limit; exceeding it is a resource error.
    pub max_limit: u64,
    pub format: OutputFormat,
    /// Sieve segment size in bits; small enough segments stay cache-resident.
    pub segment_bits: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        RunConfig {
            cache_dir: None,
            workers,
            max_limit: MAX_SIEVE_LIMIT,
            format: OutputFormat::Text,
            segment_bits: DEFAULT_SEGMENT_BITS,
        }
    }
}

impl RunConfig {
    /// Defaults, then the config file named by `POLYPRIME_CONFIG` if set.
    pub fn from_env() -> Result<RunConfig> {
        match std::env::var_os(CONFIG_ENV) {
            None => Ok(RunConfig::default()),
            Some(path) => RunConfig::from_file(Path::new(&path)),
        }
    }

    pub fn from_file(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)?;
        let mut config = RunConfig::default();
        config.apply_text(&text)?;
        Ok(config)
    }

    /// Applies `key = value` lines on top of the current settings.
    /// Blank lines and `#` comments are skipped; an unknown key is an error
    /// rather than a silent no-op.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad_line(index, "expected key=value"))?;
            self.apply(key.trim(), value.trim())
                .map_err(|why| bad_line(index, &why))?;
        }
        Ok(())
    }

    fn apply(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "cache_dir" => {
                if value.is_empty() {
                    return Err("cache_dir needs a path".into());
                }
                self.cache_dir = Some(PathBuf::from(value));
            }
            "workers" => {
                let workers: usize = parse(key, value)?;
                if workers == 0 {
                    return Err("workers must be at least 1".into());
                }
                self.workers = workers;
            }
            "max_limit" => {
                let max_limit: u64 = parse(key, value)?;
                if !(2..=MAX_SIEVE_LIMIT).contains(&max_limit) {
                    return Err(format!("max_limit must be in 2..={MAX_SIEVE_LIMIT}"));
                }
                self.max_limit = max_limit;
            }
            "format" => {
                self.format = match value {
                    "text" => OutputFormat::Text,
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    other => return Err(format!("unknown format {other:?} (text, json, csv)")),
                };
            }
            "segment_bits" => {
                let bits: u64 = parse(key, value)?;
                if bits < 64 {
                    return Err("segment_bits must be at least 64".into());
                }
                self.segment_bits = bits;
            }
            other => return Err(format!("unknown config key {other:?}")),
        }
        Ok(())
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("{key} got unparseable value {value:?}"))
}

fn bad_line(index: usize, why: &str) -> Error {
    Error::invalid(format!("config line {}: {}", index + 1, why))
}
