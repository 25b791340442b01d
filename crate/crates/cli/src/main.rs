use clap::{Args, Parser, Subcommand};
use eisenstein_harness::config::SweepSpec;
use eisenstein_harness::records::read_records;
use eisenstein_harness::{
    emit_plot_data, run_invariant_suite, run_ratio_suite, run_supnorm_sweep, HarnessError, InvariantConfig, RatioGrid,
    RunManifest, RunOptions,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "eisen", version, about = "Sup-norm sweeps and invariant checks for Eisenstein series")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// TOML sweep configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Overrides the sampling seed of the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Evaluator tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate |E| over the configured grid against the sup-norm bound.
    Sweep,
    /// Run the invariant suite.
    Invariants {
        /// Scale ψ by (1 + DELTA) inside the scattering matrix; the suite must then fail.
        #[arg(long, value_name = "DELTA", allow_negative_numbers = true)]
        inject_psi: Option<f64>,
    },
    /// Constant-term ratios and lower-bound regimes.
    Ratios,
    /// Aggregate sweep records into plot-ready CSV (runs the sweep if needed).
    Plotdata,
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    let c = cli.common;
    let mut spec = match &c.config {
        Some(p) => SweepSpec::load(p)?,
        None => SweepSpec::default(),
    };
    if let Some(s) = c.seed {
        spec.points.seed = s;
    }
    spec.validate()?;
    let mut opts = RunOptions {
        workers: c.workers,
        ..RunOptions::default()
    };
    if let Some(t) = c.tol {
        opts.tol = t;
    }
    opts.evaluator()?;
    let mut manifest = RunManifest::start(spec.hash(), spec.points.seed);
    let pass = match cli.cmd {
        Cmd::Sweep => {
            let s = run_supnorm_sweep(&spec, &opts, &c.out)?;
            println!(
                "sweep: {} rows, {} failed, fitted C = {:.6}, block growth {:.4}, level spread {:.4}: {}",
                s.rows,
                s.failures,
                s.fitted_constant,
                s.max_block_growth,
                s.level_spread,
                verdict(s.pass)
            );
            manifest.record("sweep", s.pass);
            s.pass
        }
        Cmd::Invariants { inject_psi } => {
            let cfg = InvariantConfig {
                psi_fault: inject_psi,
                seed: spec.points.seed,
            };
            let r = run_invariant_suite(&cfg, &opts, &c.out)?;
            for o in &r.outcomes {
                println!("{:<28} {} measured {:.3e} threshold {:.3e}", o.id, verdict(o.pass), o.measured, o.threshold);
            }
            manifest.record("invariants", r.pass);
            r.pass
        }
        Cmd::Ratios => {
            let s = run_ratio_suite(&RatioGrid::default(), &opts, &c.out)?;
            println!("ratios: max I(2T)/I(T) = {:.6}: {}", s.max_ratio, verdict(s.ratio_pass));
            for g in &s.regimes {
                println!("  {:<9} {} points, fitted c = {:.4e}: {}", g.regime, g.points, g.fitted_c, verdict(g.pass));
            }
            println!("  medium-regime slope (worst) = {:.4}: {}", s.worst_slope, verdict(s.slope_pass));
            manifest.record("ratios", s.pass);
            s.pass
        }
        Cmd::Plotdata => {
            let csv = c.out.join("sweep.csv");
            if !csv.exists() {
                let s = run_supnorm_sweep(&spec, &opts, &c.out)?;
                manifest.record("sweep", s.pass);
            }
            emit_plot_data(&read_records(&csv)?, &c.out)?;
            manifest.record("plotdata", true);
            true
        }
    };
    manifest.finish(&c.out)?;
    Ok(pass)
}

fn verdict(p: bool) -> &'static str {
    if p {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
