//! Per-step energy-identity audit of a single 1D run.

use crate::config::ScenarioConfig;
use crate::csvout::CsvRow;
use crate::error::Result;
use crate::scenario::shear_sweep::initial_state_1d;
use crate::scenario::{Report, ScenarioOutput};
use maxlab_core::shear1d::{run_shear, Forcing, ShearRunConfig, Side};
use maxlab_core::MaterialParams;
use serde_json::json;

pub fn run(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let xi = cfg.xi_list[0];
    let params = MaterialParams::new(cfg.g_modulus, xi, cfg.c0)?;
    let init = initial_state_1d(cfg)?;
    let bl = cfg.boundary(Side::Left)?;
    let br = cfg.boundary(Side::Right)?;
    let traj = run_shear(
        &init,
        &params,
        &bl,
        &br,
        &Forcing::none(),
        &ShearRunConfig {
            t_final: cfg.t_final,
            cfl: cfg.cfl,
            n_outputs: cfg.outputs,
            dense: false,
        },
    )?;

    let mut rows = Vec::with_capacity(traj.ledgers.len() + 1);
    rows.push(CsvRow {
        scenario: cfg.scenario.as_str(),
        xi_1: Some(xi),
        xi_2: Some(xi),
        t: Some(0.0),
        energy: Some(traj.initial_energy),
        ..Default::default()
    });
    for l in &traj.ledgers {
        rows.push(CsvRow {
            scenario: cfg.scenario.as_str(),
            xi_1: Some(xi),
            xi_2: Some(xi),
            t: Some(l.t),
            energy: Some(l.energy),
            dissipation: Some(l.dissipation_rate),
            ..Default::default()
        });
    }

    let max_rel_residual = traj.max_relative_residual();
    let non_increasing = traj.energy_non_increasing();
    let mut report = Report::new(cfg);
    report.diagnostics = json!({
        "xi": xi,
        "steps": traj.n_steps,
        "dt": traj.dt,
        "initial_energy": traj.initial_energy,
        "final_energy": traj.ledgers.last().map(|l| l.energy),
        "max_relative_residual": max_rel_residual,
        "energy_non_increasing": non_increasing,
    });
    Ok(ScenarioOutput { rows, report })
}
