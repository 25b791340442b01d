//! Ratio experiments for the truncation layer: I(2T)/I(T), the norm-bound
//! ratio, the P(e_n) lower-bound surrogate by regime, and the majorant trend.

use crate::records::fmt17;
use crate::sweep::RunOptions;
use crate::{HarnessError, Result};
use eisenstein_core::eisenstein::{afe_majorant, eval_levelq};
use eisenstein_core::geometry::cusps_of_level;
use eisenstein_core::truncation::{
    constant_term_ratio_check, norm_bound_ratio, p_norm_lower_bound_check, regime_of, small_t_threshold, Regime,
    LOWER_BOUND_C,
};
use eisenstein_core::{Cusp, EvaluationPoint};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::TAU;
use std::path::Path;

/// I(2T)/I(T) must stay below this.
pub const RATIO_LIMIT: f64 = 10.0;
/// Expected log-log slope of the surrogate against t in the medium regime.
pub const MEDIUM_SLOPE: f64 = 2.0;
pub const MEDIUM_SLOPE_TOL: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct RatioGrid {
    pub levels: Vec<u64>,
    /// Even weights.
    pub weights: Vec<i64>,
    pub types: Vec<f64>,
}

impl Default for RatioGrid {
    fn default() -> Self {
        let mut types: Vec<f64> = (-100..=100).map(|k| 0.5 * k as f64).collect();
        types.extend([1e-3, 1e-2, 0.03, 0.1, 0.2, 0.7]);
        types.sort_by(f64::total_cmp);
        Self {
            levels: vec![1, 2, 6],
            weights: (0..=50).map(|k| 2 * k).collect(),
            types,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub q: u64,
    pub cusp: u64,
    pub n: i64,
    pub t: f64,
    pub ratio: f64,
    pub degenerate: bool,
    pub norm_ratio: f64,
    pub surrogate: f64,
    pub regime: Regime,
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeStat {
    pub regime: &'static str,
    pub points: usize,
    /// min of surrogate / scale over the regime.
    pub fitted_c: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeStat {
    pub q: u64,
    pub cusp: u64,
    pub n: i64,
    pub t_min: f64,
    pub t_max: f64,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSummary {
    pub rows: usize,
    pub max_ratio: f64,
    pub degenerate_rows: usize,
    pub ratio_pass: bool,
    pub max_norm_ratio: f64,
    pub regimes: Vec<RegimeStat>,
    pub fitted_c: f64,
    pub slopes: Vec<SlopeStat>,
    pub worst_slope: f64,
    pub slope_pass: bool,
    pub lower_bound_pass: bool,
    /// max |E| / majorant over the probe set; finite means the majorant tracks |E|.
    pub majorant_ratio: f64,
    pub pass: bool,
}

pub fn compute_ratio_rows(grid: &RatioGrid, opts: &RunOptions) -> Result<Vec<RatioRow>> {
    let big_t = TAU.exp();
    let mut items: Vec<(u64, Cusp, i64, f64)> = Vec::new();
    for &q in &grid.levels {
        for a in cusps_of_level(q)? {
            for &n in &grid.weights {
                for &t in &grid.types {
                    items.push((q, a, n, t));
                }
            }
        }
    }
    opts.install(|| {
        items
            .par_iter()
            .map(|&(q, a, n, t)| {
                let r = constant_term_ratio_check(q, &a, n, t, big_t, 2.0 * big_t)?;
                let lb = p_norm_lower_bound_check(q, &a, n, t)?;
                Ok(RatioRow {
                    q,
                    cusp: a.divisor,
                    n,
                    t,
                    ratio: r.ratio,
                    degenerate: r.degenerate,
                    norm_ratio: norm_bound_ratio(q, &a, n, t)?,
                    surrogate: lb.surrogate,
                    regime: lb.regime,
                    normalized: lb.normalized,
                })
            })
            .collect::<eisenstein_core::Result<Vec<_>>>()
            .map_err(HarnessError::from)
    })?
}

/// Least-squares slope of log(surrogate) against log t over the interior of
/// the medium regime, sampled on a logarithmic grid.
pub fn medium_regime_slope(q: u64, a: &Cusp, n: i64) -> Result<SlopeStat> {
    let lo = small_t_threshold(q, n);
    let (t_min, t_max) = (2.0 * lo, 0.5);
    let k = 24;
    let mut pts = Vec::with_capacity(k);
    for i in 0..k {
        let t = t_min * (t_max / t_min).powf(i as f64 / (k - 1) as f64);
        debug_assert_eq!(regime_of(q, n, t), Regime::MediumT);
        let s = p_norm_lower_bound_check(q, a, n, t)?.surrogate;
        pts.push((t.ln(), s.ln()));
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
    let (mx, my) = (sx / m, sy / m);
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(SlopeStat {
        q,
        cusp: a.divisor,
        n,
        t_min,
        t_max,
        slope: num / den,
    })
}

fn majorant_ratio(opts: &RunOptions) -> Result<f64> {
    let cfg = opts.evaluator()?;
    let a = Cusp::infinity(1)?;
    let mut worst = 0.0f64;
    for (x, y) in [(0.1, 0.9), (-0.3, 2.0), (0.45, 7.0)] {
        let p = EvaluationPoint::new(x, y, 0.0)?;
        for n in [0i64, 8, 40] {
            for t in [1.0, 5.0, 25.0] {
                let e = eval_levelq(1, &a, &p, n, t, &cfg)?.value.norm();
                worst = worst.max(e / afe_majorant(&p, n, t, 0.1)?);
            }
        }
    }
    Ok(worst)
}

pub fn summarize_ratios(rows: &[RatioRow], slopes: Vec<SlopeStat>, majorant_ratio: f64) -> RatioSummary {
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let ratio_pass = rows.iter().all(|r| r.ratio.is_finite() && r.ratio <= RATIO_LIMIT);
    let regimes: Vec<RegimeStat> = [Regime::SmallT, Regime::MediumT, Regime::LargeT]
        .into_iter()
        .map(|g| {
            let sel: Vec<&RatioRow> = rows.iter().filter(|r| r.regime == g).collect();
            let fitted_c = sel.iter().map(|r| r.normalized).fold(f64::INFINITY, f64::min);
            RegimeStat {
                regime: g.name(),
                points: sel.len(),
                fitted_c,
                pass: sel.iter().all(|r| r.normalized >= LOWER_BOUND_C),
            }
        })
        .collect();
    let fitted_c = regimes.iter().map(|r| r.fitted_c).fold(f64::INFINITY, f64::min);
    let worst_slope = slopes
        .iter()
        .map(|s| s.slope)
        .max_by(|a, b| (a - MEDIUM_SLOPE).abs().total_cmp(&(b - MEDIUM_SLOPE).abs()))
        .unwrap_or(f64::NAN);
    let slope_pass = !slopes.is_empty() && (worst_slope - MEDIUM_SLOPE).abs() <= MEDIUM_SLOPE_TOL;
    let lower_bound_pass = regimes.iter().all(|r| r.pass) && slope_pass;
    RatioSummary {
        rows: rows.len(),
        max_ratio,
        degenerate_rows: rows.iter().filter(|r| r.degenerate).count(),
        ratio_pass,
        max_norm_ratio: rows.iter().map(|r| r.norm_ratio).fold(0.0, f64::max),
        regimes,
        fitted_c,
        slopes,
        worst_slope,
        slope_pass,
        lower_bound_pass,
        majorant_ratio,
        pass: ratio_pass && lower_bound_pass && majorant_ratio.is_finite(),
    }
}

pub fn compute_ratios(grid: &RatioGrid, opts: &RunOptions) -> Result<(Vec<RatioRow>, RatioSummary)> {
    let rows = compute_ratio_rows(grid, opts)?;
    let mut slopes = Vec::new();
    for &q in &grid.levels {
        for a in cusps_of_level(q)? {
            for n in [0i64, 8, 40] {
                slopes.push(medium_regime_slope(q, &a, n)?);
            }
        }
    }
    let summary = summarize_ratios(&rows, slopes, majorant_ratio(opts)?);
    Ok((rows, summary))
}

pub const RATIO_HEADER: [&str; 10] = [
    "q", "cusp", "n", "t", "ratio", "degenerate", "norm_ratio", "surrogate", "regime", "normalized",
];

/// Runs the suite and writes `ratios.csv` and `ratios_summary.json` into `out`.
pub fn run_ratio_suite(grid: &RatioGrid, opts: &RunOptions, out: &Path) -> Result<RatioSummary> {
    std::fs::create_dir_all(out)?;
    let (rows, summary) = compute_ratios(grid, opts)?;
    let mut w = csv::Writer::from_path(out.join("ratios.csv"))?;
    w.write_record(RATIO_HEADER)?;
    for r in &rows {
        w.write_record([
            r.q.to_string(),
            r.cusp.to_string(),
            r.n.to_string(),
            fmt17(r.t),
            fmt17(r.ratio),
            r.degenerate.to_string(),
            fmt17(r.norm_ratio),
            fmt17(r.surrogate),
            r.regime.name().to_string(),
            fmt17(r.normalized),
        ])?;
    }
    w.flush()?;
    std::fs::write(out.join("ratios_summary.json"), serde_json::to_string_pretty(&summary)?)?;
    Ok(summary)
}
