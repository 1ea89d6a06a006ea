//! Experiment harness for the viscoelastic shear-wave laboratory.
//!
//! Scenarios are driven by a plain key–value config file and write three
//! artifacts into the output directory:
//!
//! * `results.csv` — fixed-column numeric results, 17 significant digits,
//! * `report.json` — rate fits and scenario diagnostics (versioned schema),
//! * `manifest.json` — full config echo, code version and SHA-256 checksums
//!   of the other two files.
//!
//! Given the same config (including seed), outputs are byte-identical,
//! independent of the worker-thread count.

pub mod check;
pub mod config;
pub mod csvout;
pub mod error;
pub mod fit;
pub mod manifest;
pub mod scenario;
pub mod sha256;
pub mod threads;

pub use config::{Scenario, ScenarioConfig};
pub use error::CliError;
pub use fit::{fit_rate, RateFitReport};
pub use scenario::run_scenario;
