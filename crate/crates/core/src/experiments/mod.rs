//! Reproducible experiment drivers behind the `trirays` binary.
//!
//! Each command reads an [`ExperimentConfig`], writes CSV/JSON artifacts into
//! an output directory and finishes with a `manifest.json` holding the
//! resolved config, its SHA-256 and the hash of every artifact. Identical
//! configs give byte-identical directories.

mod cache;
mod config;
mod example1;
mod harmonic;
mod monodromy;
mod peaks;
mod roots;
mod schwarzian;
mod sectors;
pub mod svg;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use cache::RootCache;
pub use config::{load_config, ExperimentConfig, FunctionSpec, Params};
pub use example1::{verify_example1, Example1Params, GrowthParams};
pub use harmonic::{disk_self_test, domain_h_estimate, harmonic, HarmonicMode, HarmonicParams};
pub use monodromy::{monodromy, MonodromyParams};
pub use peaks::{peaks, PeaksParams, SampleSpec};
pub use roots::{roots, RootsParams};
pub use schwarzian::{schwarzian_check, SchwarzianParams};
pub use sectors::{sector_search, SectorParams};

use crate::error::Error;

/// Failure of a command, mapped onto the process exit code.
#[derive(Clone, Debug, PartialEq)]
pub enum RunError {
    /// Invalid configuration; every violation is listed.
    Config(Vec<String>),
    /// A check ran and missed its tolerance.
    Check { name: String, detail: String },
    /// Censored walks, unresolved contours and similar.
    Quality(String),
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Check { .. } => 1,
            RunError::Config(_) | RunError::Io(_) => 2,
            RunError::Quality(_) => 3,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(v) => {
                writeln!(f, "config error:")?;
                for m in v {
                    writeln!(f, "  - {m}")?;
                }
                Ok(())
            }
            RunError::Check { name, detail } => write!(f, "check failed: {name}: {detail}"),
            RunError::Quality(m) => write!(f, "numerical quality error: {m}"),
            RunError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Censored { .. }
            | Error::UnresolvedContour { .. }
            | Error::BoundaryRoot { .. }
            | Error::Divergence { .. }
            | Error::Range(_) => RunError::Quality(e.to_string()),
            _ => RunError::Config(vec![e.to_string()]),
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e.to_string())
    }
}

pub type RunResult<T> = std::result::Result<T, RunError>;

/// One named check of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: String,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Self { name: name.into(), value, threshold: format!("<= {limit:e}"), pass: value <= limit }
    }

    pub fn at_least(name: &str, value: f64, limit: f64) -> Self {
        Self { name: name.into(), value, threshold: format!(">= {limit:e}"), pass: value >= limit }
    }

    pub fn within(name: &str, value: f64, lo: f64, hi: f64) -> Self {
        Self { name: name.into(), value, threshold: format!("in [{lo}, {hi}]"), pass: lo <= value && value <= hi }
    }

    pub fn equals(name: &str, value: f64, want: f64) -> Self {
        Self { name: name.into(), value, threshold: format!("== {want}"), pass: value == want }
    }
}

/// `Err(Check)` naming the first failing check, if any.
pub fn first_failure(checks: &[Check]) -> RunResult<()> {
    match checks.iter().find(|c| !c.pass) {
        Some(c) => Err(RunError::Check { name: c.name.clone(), detail: format!("{:e} not {}", c.value, c.threshold) }),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputFile {
    pub file: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub config_sha256: String,
    pub config: serde_json::Value,
    pub outputs: Vec<OutputFile>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Output directory of one run.
pub struct RunContext {
    pub out: PathBuf,
    pub seed: u64,
    pub svg: bool,
    pub cache: Option<RootCache>,
    outputs: Vec<OutputFile>,
}

impl RunContext {
    pub fn new(out: &Path, seed: u64, svg: bool, cache: bool) -> RunResult<Self> {
        fs::create_dir_all(out)?;
        let cache = cache.then(|| RootCache::new(out.join("cache")));
        Ok(Self { out: out.to_path_buf(), seed, svg, cache, outputs: Vec::new() })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> RunResult<()> {
        fs::write(self.out.join(name), contents)?;
        self.outputs.retain(|o| o.file != name);
        self.outputs.push(OutputFile { file: name.into(), sha256: sha256_hex(contents.as_bytes()) });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> RunResult<()> {
        let mut s = serde_json::to_string_pretty(value).map_err(|e| RunError::Io(e.to_string()))?;
        s.push('\n');
        self.write(name, &s)
    }

    /// Writes `manifest.json`; outputs are listed by file name.
    pub fn finish<P: Params>(mut self, cfg: &ExperimentConfig<P>) -> RunResult<Manifest> {
        self.outputs.sort_by(|a, b| a.file.cmp(&b.file));
        let config = serde_json::to_value(cfg).map_err(|e| RunError::Io(e.to_string()))?;
        let canonical = serde_json::to_string(&config).map_err(|e| RunError::Io(e.to_string()))?;
        let m = Manifest {
            command: P::COMMAND.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: self.seed,
            config_sha256: sha256_hex(canonical.as_bytes()),
            config,
            outputs: std::mem::take(&mut self.outputs),
        };
        let mut s = serde_json::to_string_pretty(&m).map_err(|e| RunError::Io(e.to_string()))?;
        s.push('\n');
        fs::write(self.out.join("manifest.json"), s)?;
        Ok(m)
    }
}

/// Validate, run `body` and write the manifest. The manifest is written
/// even when a check fails, so failed runs can be reproduced.
pub fn execute<P: Params>(
    cfg: &ExperimentConfig<P>,
    out: &Path,
    svg: bool,
    body: impl FnOnce(&P, &mut RunContext) -> RunResult<()>,
) -> RunResult<Manifest> {
    let problems = cfg.params.validate();
    if !problems.is_empty() {
        return Err(RunError::Config(problems));
    }
    let mut ctx = RunContext::new(out, cfg.seed, svg, cfg.cache)?;
    let res = body(&cfg.params, &mut ctx);
    let m = ctx.finish(cfg)?;
    res.map(|_| m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(RunError::Check { name: "x".into(), detail: String::new() }.exit_code(), 1);
        assert_eq!(RunError::Config(vec![]).exit_code(), 2);
        assert_eq!(RunError::Quality(String::new()).exit_code(), 3);
        assert_eq!(RunError::from(Error::Censored { censored: 2, walks: 3 }).exit_code(), 3);
        assert_eq!(RunError::from(Error::InvalidInput("x".into())).exit_code(), 2);
    }

    #[test]
    fn first_failure_names_check() {
        let c = [Check::at_most("a", 1.0, 2.0), Check::at_least("b", 1.0, 2.0), Check::at_most("c", 3.0, 2.0)];
        match first_failure(&c) {
            Err(RunError::Check { name, .. }) => assert_eq!(name, "b"),
            other => panic!("{other:?}"),
        }
        assert!(first_failure(&c[..1]).is_ok());
    }

    #[test]
    fn sha_known_vector() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
