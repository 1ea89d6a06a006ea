//! Impulsively started wall flow: wavefront position and jump decay.
//!
//! Left boundary: velocity u = U·H(t); the front travels right at √G while
//! the velocity jump across it decays like U·e^{−ξt/2} (the relaxation
//! splits evenly between the jump and the trailing wake along the
//! characteristic). At CFL = 1 the front stays a one-cell jump.

use crate::config::ScenarioConfig;
use crate::csvout::CsvRow;
use crate::error::{CliError, Result};
use crate::scenario::shear_sweep::initial_state_1d;
use crate::scenario::{Report, ScenarioOutput};
use maxlab_core::shear1d::{run_shear, BcKind, Forcing, ShearRunConfig, Side};
use maxlab_core::{MaterialParams, ShearState1D};
use serde::Serialize;
use serde_json::json;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct StokesPoint {
    pub t: f64,
    pub front_position: f64,
    pub expected_position: f64,
    pub jump: f64,
    pub expected_jump: f64,
}

/// Steepest-gradient front locator: the interface with the largest |Δu|.
fn locate_front(state: &ShearState1D) -> (f64, f64) {
    let dy = state.dy();
    let mut best = 0.0f64;
    let mut pos = state.y_min;
    for i in 0..state.n() - 1 {
        let jump = (state.u[i + 1] - state.u[i]).abs();
        if jump > best {
            best = jump;
            pos = state.y_min + (i as f64 + 1.0) * dy;
        }
    }
    (pos, best)
}

pub fn stokes_data(cfg: &ScenarioConfig) -> Result<(Vec<StokesPoint>, bool, Vec<CsvRow>)> {
    let xi = cfg.xi_list[0];
    let params = MaterialParams::new(cfg.g_modulus, xi, cfg.c0)?;
    let init = initial_state_1d(cfg)?;
    let bl = cfg.boundary(Side::Left)?;
    let br = cfg.boundary(Side::Right)?;
    if bl.kind != BcKind::DirichletVelocity {
        return Err(CliError::Usage(
            "bc_left: the stokes scenario needs dirichlet-velocity:heaviside:<U>".into(),
        ));
    }
    let wall_speed = bl.g.eval(1.0);
    if !(wall_speed > 0.0) {
        return Err(CliError::Usage(
            "bc_left: heaviside amplitude must be positive".into(),
        ));
    }

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

    let sg = cfg.g_modulus.sqrt();
    let dy = init.dy();
    let mut points = Vec::new();
    let mut truncated = false;
    let mut rows = Vec::new();
    for snap in &traj.snapshots {
        let step = (snap.t / traj.dt).round() as usize;
        let (energy, dissipation) = if step == 0 {
            (traj.initial_energy, None)
        } else {
            let l = &traj.ledgers[step - 1];
            (l.energy, Some(l.dissipation_rate))
        };
        rows.push(CsvRow {
            scenario: cfg.scenario.as_str(),
            xi_1: Some(xi),
            xi_2: Some(xi),
            t: Some(snap.t),
            energy: Some(energy),
            dissipation,
            ..Default::default()
        });
        if snap.t == 0.0 {
            continue;
        }
        let expected_position = init.y_min + sg * snap.t;
        if expected_position > init.y_max - 2.0 * dy {
            // Front has reached the far boundary: later outputs are
            // meaningless, report what exists and flag the truncation.
            truncated = true;
            break;
        }
        let (front_position, jump) = locate_front(snap);
        points.push(StokesPoint {
            t: snap.t,
            front_position,
            expected_position,
            jump,
            expected_jump: wall_speed * (-0.5 * xi * snap.t).exp(),
        });
    }
    Ok((points, truncated, rows))
}

pub fn run(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let (points, truncated, rows) = stokes_data(cfg)?;
    let dy = (cfg.domain[1] - cfg.domain[0]) / cfg.grid[0] as f64;
    let mut report = Report::new(cfg);
    report.diagnostics = json!({
        "xi": cfg.xi_list[0],
        "cell_width": dy,
        "truncated": truncated,
        "front": points,
        "max_position_error": points
            .iter()
            .map(|p| (p.front_position - p.expected_position).abs())
            .fold(0.0f64, f64::max),
        "max_jump_relative_error": points
            .iter()
            .map(|p| ((p.jump - p.expected_jump) / p.expected_jump).abs())
            .fold(0.0f64, f64::max),
    });
    Ok(ScenarioOutput { rows, report })
}
