//! The sup-norm sweep: |E_{a,n}(g, 1/2+it)| against
//! q^ε (1 + |n|^{1/2+ε} + |t|^{1/2+ε}) √(y + 1/y).

use crate::config::SweepSpec;
use crate::records::{write_records, ResultRecord};
use crate::sampling::sample_points;
use crate::{HarnessError, Result};
use eisenstein_core::eisenstein::eval_levelq;
use eisenstein_core::geometry::cusps_of_level;
use eisenstein_core::EvaluatorConfig;
use rayon::prelude::*;
use serde::Serialize;
use std::path::Path;

/// Allowed growth of the block maximum from one dyadic block to the next.
pub const BLOCK_GROWTH_LIMIT: f64 = 1.2;
/// Allowed spread (max / min) of the per-level fitted constants.
pub const LEVEL_SPREAD_LIMIT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Worker threads; `None` uses rayon's default.
    pub workers: Option<usize>,
    /// Evaluator tolerance.
    pub tol: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            workers: None,
            tol: EvaluatorConfig::default().tol,
        }
    }
}

impl RunOptions {
    pub fn evaluator(&self) -> Result<EvaluatorConfig> {
        let cfg = EvaluatorConfig {
            tol: self.tol,
            ..EvaluatorConfig::default()
        };
        cfg.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = self.workers {
            if w == 0 {
                return Err(HarnessError::Config("--workers must be at least 1".into()));
            }
            b = b.num_threads(w);
        }
        let pool = b.build().map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(pool.install(f))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockStat {
    /// Rows with 2^block ≤ 1 + |n| + |t| < 2^{block+1}.
    pub block: u32,
    pub max_ratio: f64,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelStat {
    pub q: u64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    /// Rows whose evaluation failed; their values are NaN.
    pub failures: usize,
    /// Largest ratio over the sweep: the fitted constant.
    pub fitted_constant: f64,
    pub blocks: Vec<BlockStat>,
    pub max_block_growth: f64,
    pub levels: Vec<LevelStat>,
    pub level_spread: f64,
    pub pass: bool,
}

pub fn bound_denominator(q: u64, n: i64, t: f64, y: f64, eps: f64) -> f64 {
    let e = 0.5 + eps;
    (q as f64).powf(eps) * (1.0 + (n.abs() as f64).powf(e) + t.abs().powf(e)) * (y + 1.0 / y).sqrt()
}

pub fn dyadic_block(n: i64, t: f64) -> u32 {
    (1.0 + n.abs() as f64 + t.abs()).log2().floor() as u32
}

/// Evaluates every (q, cusp, n, t, point) combination; rows come back in
/// canonical order regardless of scheduling.
pub fn compute_sweep(spec: &SweepSpec, opts: &RunOptions) -> Result<Vec<ResultRecord>> {
    spec.validate()?;
    let cfg = opts.evaluator()?;
    let points = sample_points(&spec.points);
    let mut items = Vec::new();
    for &q in &spec.levels {
        for cusp in cusps_of_level(q)? {
            for &n in &spec.weights {
                for &t in &spec.types {
                    for p in &points {
                        items.push((q, cusp, n, t, *p));
                    }
                }
            }
        }
    }
    let eps = spec.epsilon;
    let mut rows: Vec<ResultRecord> = opts.install(|| {
        items
            .par_iter()
            .map(|&(q, cusp, n, t, p)| {
                let den = bound_denominator(q, n, t, p.y, eps);
                let (v, err) = match eval_levelq(q, &cusp, &p, n, t, &cfg) {
                    Ok(r) => (r.value, r.abs_error),
                    Err(_) => (eisenstein_core::Complex64::new(f64::NAN, f64::NAN), f64::NAN),
                };
                ResultRecord {
                    q,
                    cusp: cusp.divisor,
                    n,
                    t,
                    x: p.x,
                    y: p.y,
                    theta: p.theta,
                    value_re: v.re,
                    value_im: v.im,
                    abs_error: err,
                    bound_denominator: den,
                    ratio: v.norm() / den,
                }
            })
            .collect()
    })?;
    rows.sort_by(|a, b| a.canonical_cmp(b));
    Ok(rows)
}

pub fn summarize(rows: &[ResultRecord]) -> SweepSummary {
    let ok: Vec<&ResultRecord> = rows.iter().filter(|r| r.ratio.is_finite()).collect();
    let mut blocks: Vec<BlockStat> = Vec::new();
    for r in &ok {
        let b = dyadic_block(r.n, r.t);
        match blocks.iter_mut().find(|s| s.block == b) {
            Some(s) => {
                s.max_ratio = s.max_ratio.max(r.ratio);
                s.rows += 1;
            }
            None => blocks.push(BlockStat {
                block: b,
                max_ratio: r.ratio,
                rows: 1,
            }),
        }
    }
    blocks.sort_by_key(|b| b.block);
    let max_block_growth = blocks
        .windows(2)
        .map(|w| w[1].max_ratio / w[0].max_ratio)
        .fold(0.0, f64::max);
    let mut levels: Vec<LevelStat> = Vec::new();
    for r in &ok {
        match levels.iter_mut().find(|s| s.q == r.q) {
            Some(s) => s.max_ratio = s.max_ratio.max(r.ratio),
            None => levels.push(LevelStat { q: r.q, max_ratio: r.ratio }),
        }
    }
    levels.sort_by_key(|l| l.q);
    let hi = levels.iter().map(|l| l.max_ratio).fold(0.0, f64::max);
    let lo = levels.iter().map(|l| l.max_ratio).fold(f64::INFINITY, f64::min);
    let level_spread = if levels.is_empty() { f64::NAN } else { hi / lo };
    let fitted_constant = ok.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let failures = rows.len() - ok.len();
    let pass = failures == 0
        && !ok.is_empty()
        && fitted_constant.is_finite()
        && max_block_growth <= BLOCK_GROWTH_LIMIT
        && level_spread <= LEVEL_SPREAD_LIMIT;
    SweepSummary {
        rows: rows.len(),
        failures,
        fitted_constant,
        blocks,
        max_block_growth,
        levels,
        level_spread,
        pass,
    }
}

/// Runs the sweep and writes `sweep.csv` and `sweep_summary.json` into `out`.
pub fn run_supnorm_sweep(spec: &SweepSpec, opts: &RunOptions, out: &Path) -> Result<SweepSummary> {
    std::fs::create_dir_all(out)?;
    let rows = compute_sweep(spec, opts)?;
    write_records(&out.join("sweep.csv"), &rows)?;
    let summary = summarize(&rows);
    std::fs::write(out.join("sweep_summary.json"), serde_json::to_string_pretty(&summary)?)?;
    Ok(summary)
}
