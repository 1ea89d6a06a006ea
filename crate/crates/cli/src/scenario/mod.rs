//! Scenario runners and the report envelope.

mod energy_audit;
mod multid_audits;
mod multid_sweep;
mod shear_sweep;
mod stokes;

use crate::config::{Scenario, ScenarioConfig};
use crate::csvout::{render_csv, CsvRow};
use crate::error::{CliError, Result};
use crate::fit::RateFitReport;
use crate::manifest::{write_artifacts, SCHEMA_VERSION};
use serde::Serialize;

pub use multid_sweep::multid_sweep_data;
pub use shear_sweep::shear_sweep_data;
pub use stokes::{stokes_data, StokesPoint};

/// report.json envelope.
#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub scenario: &'static str,
    pub code_version: &'static str,
    pub eos: &'static str,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<RateFitReport>,
    pub diagnostics: serde_json::Value,
}

impl Report {
    pub fn new(cfg: &ScenarioConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            scenario: cfg.scenario.as_str(),
            code_version: env!("CARGO_PKG_VERSION"),
            eos: "isothermal",
            seed: cfg.seed,
            fit: None,
            diagnostics: serde_json::Value::Null,
        }
    }
}

pub struct ScenarioOutput {
    pub rows: Vec<CsvRow>,
    pub report: Report,
}

/// Execute a scenario and write results.csv, report.json and manifest.json.
///
/// The config is validated before anything is created on disk.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<()> {
    cfg.validate()?;
    let out = compute_scenario(cfg)?;
    let csv = render_csv(&out.rows);
    let report_json = serde_json::to_string_pretty(&out.report)
        .map_err(|e| CliError::Runtime(format!("report encode: {e}")))?
        + "\n";
    write_artifacts(cfg, &csv, &report_json)
}

/// Run the scenario computation without touching the filesystem.
pub fn compute_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    match cfg.scenario {
        Scenario::ShearXiSweep => shear_sweep::run(cfg),
        Scenario::ShearStokes => stokes::run(cfg),
        Scenario::ShearEnergyAudit => energy_audit::run(cfg),
        Scenario::MultidXiSweep => multid_sweep::run(cfg),
        Scenario::MultidAudits => multid_audits::run(cfg),
    }
}
