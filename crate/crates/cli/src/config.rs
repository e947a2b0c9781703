//! Run configuration: a plain `key = value` file merged with command-line
//! overrides, validated before anything is computed.

use crate::error::{CliError, CliResult};
use crate::schema::{Param, Params};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const OUT_ENV: &str = "NIPOLY_OUT";
const DEFAULT_OUT: &str = "nipoly-out";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Keys that configure the run rather than the computation.
pub const SETTING_KEYS: [&str; 6] = ["command", "seed", "replicas", "out", "format", "threads"];

/// Raw `key = value` pairs; `#` starts a comment.
pub fn parse_config_text(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Schema(format!("config line {}: expected key = value", lineno + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(CliError::Schema(format!("config line {}: empty key", lineno + 1)));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(CliError::Schema(format!("config line {}: duplicate key {k:?}", lineno + 1)));
        }
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Space-separated subcommand path, e.g. `polymer count`.
    pub command: String,
    pub params: Params,
    pub seed: u64,
    /// `None` for commands without replicas.
    pub replicas: Option<usize>,
    pub out: PathBuf,
    pub format: Format,
    pub threads: Option<usize>,
}

impl RunConfig {
    /// Merges `file` (lower priority) with `flags` and validates the result.
    pub fn build(
        command: &str,
        schema: &[Param],
        replicas_default: Option<usize>,
        file: BTreeMap<String, String>,
        flags: BTreeMap<String, String>,
    ) -> CliResult<RunConfig> {
        let mut merged = file;
        if let Some(c) = merged.remove("command") {
            if c != command {
                return Err(CliError::Schema(format!(
                    "config is for command {c:?} but {command:?} was invoked"
                )));
            }
        }
        merged.extend(flags);
        let mut take = |k: &str| merged.remove(k);
        let seed = match take("seed") {
            Some(s) => s.parse().map_err(|_| CliError::Schema(format!("seed: expected a non-negative integer, got {s:?}")))?,
            None => 0,
        };
        let replicas = match (take("replicas"), replicas_default) {
            (Some(_), None) => return Err(CliError::Schema(format!("{command} does not take replicas"))),
            (Some(s), Some(_)) => match s.parse::<usize>() {
                Ok(r) if r >= 1 => Some(r),
                _ => return Err(CliError::Schema(format!("replicas: expected a positive integer, got {s:?}"))),
            },
            (None, d) => d,
        };
        let out = take("out")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
        let format = match take("format").as_deref() {
            None | Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(other) => return Err(CliError::Schema(format!("format: expected csv or json, got {other:?}"))),
        };
        let threads = match take("threads") {
            None => None,
            Some(s) => match s.parse::<usize>() {
                Ok(t) if t >= 1 => Some(t),
                _ => return Err(CliError::Schema(format!("threads: expected a positive integer, got {s:?}"))),
            },
        };
        let params = Params::validate(schema, &merged)?;
        Ok(RunConfig {
            command: command.to_string(),
            params,
            seed,
            replicas,
            out,
            format,
            threads,
        })
    }

    /// Everything that determines the numbers: command, parameters, seed
    /// and replica count. Thread count and output location are excluded.
    pub fn canonical(&self) -> serde_json::Value {
        serde_json::json!({
            "command": self.command,
            "params": self.params.to_json(),
            "seed": self.seed,
            "replicas": self.replicas,
        })
    }

    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.canonical().to_string().as_bytes());
        hex(&digest)
    }

    /// File-name stem, e.g. `polymer-count`.
    pub fn stem(&self) -> String {
        self.command.replace(' ', "-")
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::{int, positive};

    #[test]
    fn config_text() {
        let c = parse_config_text("# run\nmu = 2\n\nn=16 # size\n").unwrap();
        assert_eq!(c["mu"], "2");
        assert_eq!(c["n"], "16");
        assert!(parse_config_text("mu 2").is_err());
        assert!(parse_config_text("a=1\na=2").is_err());
    }

    #[test]
    fn flags_override_file() {
        let schema = [positive("mu", 100.0, None, ""), int("n", 1, 100, Some("4"), "")];
        let file = parse_config_text("command = free-energy\nmu = 2\nseed = 3").unwrap();
        let flags = BTreeMap::from([("mu".to_string(), "5".to_string())]);
        let c = RunConfig::build("free-energy", &schema, Some(10), file, flags).unwrap();
        assert_eq!(c.params.real("mu"), 5.0);
        assert_eq!(c.seed, 3);
        assert_eq!(c.replicas, Some(10));
        let wrong = parse_config_text("command = szego").unwrap();
        assert!(RunConfig::build("free-energy", &schema, None, wrong, BTreeMap::new()).is_err());
    }
}
