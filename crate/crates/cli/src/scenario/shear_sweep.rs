//! ξ-sweep of the 1D shear system against the elastic reference.

use crate::config::ScenarioConfig;
use crate::csvout::CsvRow;
use crate::error::{CliError, Result};
use crate::fit::fit_rate;
use crate::scenario::{Report, ScenarioOutput};
use crate::threads::parallel_map_indexed;
use maxlab_core::shear1d::{
    prop1_audit, run_shear, Forcing, ShearRunConfig, ShearTrajectory, Side,
};
use maxlab_core::{MaterialParams, ShearState1D};
use serde_json::json;
use std::f64::consts::PI;

pub fn initial_state_1d(cfg: &ScenarioConfig) -> Result<ShearState1D> {
    let n = cfg.grid[0];
    let (a, b) = (cfg.domain[0], cfg.domain[1]);
    let length = b - a;
    Ok(match cfg.initial.as_str() {
        // u⁰ = sin(2π(y − y_min)/L), τ⁰ = 0: one periodic velocity mode.
        "sine-velocity" => {
            ShearState1D::from_profiles(a, b, n, |y| (2.0 * PI * (y - a) / length).sin(), |_| 0.0)?
        }
        "zero" => ShearState1D::new(a, b, vec![0.0; n], vec![0.0; n])?,
        other => {
            return Err(CliError::Usage(format!(
                "initial: unknown 1D preset '{other}'"
            )))
        }
    })
}

/// Per-ξ sweep data kept for the report and rows.
pub struct SweepPoint {
    pub xi: f64,
    pub sup_l2: f64,
    pub max_slack: f64,
    /// (t, l2, energy, dissipation) per output time.
    pub series: Vec<(f64, f64, f64, Option<f64>)>,
}

/// Run the sweep and return (points, reference energy scale).
pub fn shear_sweep_data(cfg: &ScenarioConfig) -> Result<(Vec<SweepPoint>, f64)> {
    let init = initial_state_1d(cfg)?;
    let bl = cfg.boundary(Side::Left)?;
    let br = cfg.boundary(Side::Right)?;
    let run_cfg = ShearRunConfig {
        t_final: cfg.t_final,
        cfl: cfg.cfl,
        n_outputs: cfg.outputs,
        dense: true,
    };
    let xi_ref = *cfg.xi_list.last().unwrap();
    let params_ref = MaterialParams::new(cfg.g_modulus, xi_ref, cfg.c0)?;
    let reference = run_shear(&init, &params_ref, &bl, &br, &Forcing::none(), &run_cfg)?;

    let points = parallel_map_indexed(cfg.xi_list.len(), cfg.threads, |k| -> Result<SweepPoint> {
        let xi = cfg.xi_list[k];
        let traj: ShearTrajectory;
        let own;
        if xi == xi_ref {
            traj = reference.clone();
        } else {
            let params = MaterialParams::new(cfg.g_modulus, xi, cfg.c0)?;
            own = run_shear(&init, &params, &bl, &br, &Forcing::none(), &run_cfg)?;
            traj = own;
        }
        let audit = prop1_audit(&traj, xi, &reference, xi_ref, &params_ref, &bl, &br)?;
        let mut sup_l2 = 0.0f64;
        let mut series = Vec::with_capacity(traj.snapshots.len());
        for (snap, ref_snap) in traj.snapshots.iter().zip(&reference.snapshots) {
            let l2 = snap.l2_diff(ref_snap);
            sup_l2 = sup_l2.max(l2);
            let step = (snap.t / traj.dt).round() as usize;
            let (energy, dissipation) = if step == 0 {
                (traj.initial_energy, None)
            } else {
                let l = &traj.ledgers[step - 1];
                (l.energy, Some(l.dissipation_rate))
            };
            series.push((snap.t, l2, energy, dissipation));
        }
        Ok(SweepPoint {
            xi,
            sup_l2,
            max_slack: audit.max_slack,
            series,
        })
    });
    let points: Vec<SweepPoint> = points.into_iter().collect::<Result<_>>()?;
    Ok((points, reference.initial_energy))
}

pub fn run(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let xi_ref = *cfg.xi_list.last().unwrap();
    let (points, energy_scale) = shear_sweep_data(cfg)?;

    let mut rows = Vec::new();
    for p in &points {
        for &(t, l2, energy, dissipation) in &p.series {
            rows.push(CsvRow {
                scenario: cfg.scenario.as_str(),
                xi_1: Some(p.xi),
                xi_2: Some(xi_ref),
                t: Some(t),
                l2_diff: Some(l2),
                energy: Some(energy),
                dissipation,
                ..Default::default()
            });
        }
    }

    let pairs: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.xi > xi_ref && p.sup_l2 > 0.0)
        .map(|p| (p.xi - xi_ref, p.sup_l2))
        .collect();
    let excluded = points.len() - pairs.len();
    let fit = fit_rate(&pairs, cfg.seed)?;

    let mut report = Report::new(cfg);
    report.diagnostics = json!({
        "xi_reference": xi_ref,
        "fit_excluded_pairs": excluded,
        "energy_scale": energy_scale,
        "error_norm": "sup over output times of the spatial L2 norm of (u, tau)",
        "sweep": points.iter().map(|p| json!({
            "xi": p.xi,
            "sup_l2": p.sup_l2,
            "prop1_max_slack": p.max_slack,
            "prop1_slack_relative": p.max_slack / energy_scale,
        })).collect::<Vec<_>>(),
    });
    report.fit = Some(fit);
    Ok(ScenarioOutput { rows, report })
}
