//! One PASS/FAIL line per acceptance criterion. Criterion 13 is known to fail
//! (see the README); every other criterion must pass.

use eisenstein_harness::invariants::InvariantReport;
use eisenstein_harness::sweep::summarize;
use eisenstein_harness::{compute_invariants, compute_ratios, compute_sweep, InvariantConfig, RatioGrid, RunOptions, SweepSpec};
use std::process::ExitCode;

const KNOWN_FAILING: &[u32] = &[13];

fn from_invariants(r: &InvariantReport, ids: &[&str]) -> (bool, String) {
    let mut detail = Vec::new();
    let mut pass = true;
    for id in ids {
        let o = r.get(id).unwrap_or_else(|| panic!("missing invariant {id}"));
        pass &= o.pass;
        detail.push(format!("{id} {:.3e} (limit {:.1e})", o.measured, o.threshold));
    }
    (pass, detail.join(", "))
}

fn main() -> ExitCode {
    let opts = RunOptions::default();
    let inv = compute_invariants(&InvariantConfig::default(), &opts).expect("invariant suite");
    let sweep = summarize(&compute_sweep(&SweepSpec::default(), &opts).expect("sweep"));
    let (_, ratios) = compute_ratios(&RatioGrid::default(), &opts).expect("ratio suite");

    let mut lines: Vec<(u32, bool, String)> = Vec::new();
    let mut add = |n: u32, (pass, d): (bool, String)| lines.push((n, pass, d));
    add(1, from_invariants(&inv, &["scattering_unitarity"]));
    add(2, from_invariants(&inv, &["closed_form_entries"]));
    add(3, from_invariants(&inv, &["alpha_unit_modulus", "alpha_derivative", "alpha_derivative_bound"]));
    add(4, from_invariants(&inv, &["oracle_equivalence"]));
    add(5, from_invariants(&inv, &["automorphy"]));
    add(6, from_invariants(&inv, &["functional_equation"]));
    add(7, from_invariants(&inv, &["constant_term_extraction"]));
    add(8, from_invariants(&inv, &["maass_selberg"]));
    add(9, from_invariants(&inv, &["level_reduction", "level_constant_terms"]));
    add(
        10,
        (
            sweep.pass,
            format!(
                "{} rows, {} failed, fitted C {:.4}, block growth {:.4} (limit 1.2), level spread {:.4} (limit 2)",
                sweep.rows, sweep.failures, sweep.fitted_constant, sweep.max_block_growth, sweep.level_spread
            ),
        ),
    );
    add(11, from_invariants(&inv, &["lattice_count"]));
    add(
        12,
        (ratios.ratio_pass, format!("max I(2T)/I(T) {:.4} over {} points (limit 10)", ratios.max_ratio, ratios.rows)),
    );
    let regimes: Vec<String> = ratios
        .regimes
        .iter()
        .map(|g| format!("{} c {:.3e} over {}", g.regime, g.fitted_c, g.points))
        .collect();
    add(
        13,
        (
            ratios.lower_bound_pass,
            format!("{}; medium slope worst {:.3} (want 2 +- 0.2)", regimes.join(", "), ratios.worst_slope),
        ),
    );

    let mut unexpected = 0;
    for (n, pass, detail) in &lines {
        println!("criterion {n}: {} {detail}", if *pass { "PASS" } else { "FAIL" });
        if !pass && !KNOWN_FAILING.contains(n) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
