//! Harness around `eisenstein_core`: configurable sup-norm sweeps, the
//! invariant suite, ratio experiments and plot data.
//!
//! Every suite writes machine-readable output (CSV with a header row and 17
//! significant digits, plus a JSON summary) into an output directory.

mod error;

pub mod config;
pub mod invariants;
pub mod manifest;
pub mod plot;
pub mod ratios;
pub mod records;
pub mod sampling;
pub mod sweep;

pub use config::{PointSpec, SweepSpec};
pub use error::{HarnessError, Result};
pub use invariants::{compute_invariants, run_invariant_suite, InvariantConfig, InvariantOutcome, InvariantReport};
pub use manifest::RunManifest;
pub use plot::emit_plot_data;
pub use ratios::{compute_ratios, run_ratio_suite, RatioGrid, RatioSummary};
pub use records::ResultRecord;
pub use sweep::{compute_sweep, run_supnorm_sweep, RunOptions, SweepSummary};
