//! Per-run provenance: configuration hash, seed, tool version, timing and
//! suite outcomes.

use crate::Result;
use serde::Serialize;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub config_hash: String,
    pub seed: u64,
    pub tool_version: &'static str,
    /// Seconds since the Unix epoch.
    pub started: f64,
    pub finished: Option<f64>,
    pub suites: Vec<SuiteOutcome>,
}

fn now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

impl RunManifest {
    pub fn start(config_hash: String, seed: u64) -> Self {
        Self {
            config_hash,
            seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            started: now(),
            finished: None,
            suites: Vec::new(),
        }
    }

    pub fn record(&mut self, suite: &str, pass: bool) {
        self.suites.push(SuiteOutcome {
            suite: suite.to_string(),
            pass,
        });
    }

    /// Stamps the end time and writes `manifest.json` into `out`.
    pub fn finish(&mut self, out: &Path) -> Result<()> {
        self.finished = Some(now());
        std::fs::create_dir_all(out)?;
        std::fs::write(out.join("manifest.json"), serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}
