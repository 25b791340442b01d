//! Sweep configuration, read from TOML.

use crate::{HarnessError, Result};
use eisenstein_core::arith::is_squarefree;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

/// Sample points: `count` points of the level-one fundamental domain with y
/// log-uniform in [y_min, y_max].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub count: usize,
    pub y_min: f64,
    pub y_max: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub levels: Vec<u64>,
    pub weights: Vec<i64>,
    pub types: Vec<f64>,
    pub points: PointSpec,
    pub epsilon: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            levels: vec![1, 2, 3, 6],
            weights: vec![0, 2, -2, 8, -8, 20, -20, 40, -40],
            types: vec![0.0, 0.3, 1.0, 3.0, 10.0, 25.0],
            points: PointSpec {
                count: 64,
                y_min: 3f64.sqrt() / 2.0,
                y_max: 100.0,
                seed: 1,
            },
            epsilon: 0.1,
        }
    }
}

impl SweepSpec {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let spec: SweepSpec = toml::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("sweep spec serializes")
    }

    /// SHA-256 of the canonical TOML serialization.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_toml_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.levels.is_empty() || self.weights.is_empty() || self.types.is_empty() {
            return bad("levels, weights and types must be non-empty".into());
        }
        if let Some(q) = self.levels.iter().find(|&&q| q == 0 || !is_squarefree(q)) {
            return bad(format!("level {q} is not a positive squarefree integer"));
        }
        if let Some(n) = self.weights.iter().find(|&&n| n % 2 != 0) {
            return bad(format!("weight {n} is odd"));
        }
        if let Some(t) = self.types.iter().find(|t| !t.is_finite()) {
            return bad(format!("spectral parameter {t} is not finite"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return bad(format!("epsilon must lie in (0, 1/2), got {}", self.epsilon));
        }
        let p = &self.points;
        if p.count == 0 || !(p.y_min > 0.0) || !(p.y_max > p.y_min) || !p.y_max.is_finite() {
            return bad(format!("invalid point sampling {p:?}"));
        }
        Ok(())
    }
}
