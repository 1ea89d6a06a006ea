//! Refinement studies: constitutive and entropy-balance residual halving,
//! and the Piola truncation order on compatible data.
//!
//! The three levels are N, 2N, 4N (N = configured grid) with dt halving
//! alongside Δx (n_steps doubles, dt = T/n_steps), so the residuals are
//! compared at the identical physical time T/2. Per-level values and ratios
//! go to report.json; results.csv carries the base-level series.

use crate::config::ScenarioConfig;
use crate::csvout::CsvRow;
use crate::error::{CliError, Result};
use crate::scenario::multid_sweep::{initial_grid_2d, plan_steps_2d, run_2d};
use crate::scenario::{Report, ScenarioOutput};
use crate::threads::parallel_map_indexed;
use maxlab_core::entropy::{constitutive_residual, entropy_balance_residual};
use maxlab_core::material::Eos;
use maxlab_core::multid::fields::compatible_smooth_2d;
use maxlab_core::multid::piola_residual;
use maxlab_core::MaterialParams;
use serde_json::json;
use std::collections::BTreeSet;

struct LevelResult {
    n: usize,
    constitutive: f64,
    balance: f64,
    piola_initial: f64,
    piola_final: f64,
}

pub fn run(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let eos = Eos::isothermal(cfg.c0).map_err(CliError::from)?;
    let xi = cfg.xi_list[0];
    if xi <= 0.0 {
        return Err(CliError::Usage(
            "xi_list: multid-audits needs a positive leading xi".into(),
        ));
    }
    if cfg.grid[0] != cfg.grid[1] {
        return Err(CliError::Usage(
            "grid: multid-audits needs a square grid".into(),
        ));
    }
    let params = MaterialParams::new(cfg.g_modulus, xi, cfg.c0)?;

    // Base step count from the coarsest level; finer levels double it so
    // dt/Δx stays fixed and T/2 is a snapshot on every level.
    let base0 = initial_grid_2d(cfg, &cfg.initial)?;
    let (_, n_base) = plan_steps_2d(&base0, cfg, &eos)?;

    let levels: Vec<usize> = (0..3).map(|l| cfg.grid[0] << l).collect();
    let results = parallel_map_indexed(levels.len(), cfg.threads, |li| -> Result<LevelResult> {
        let n = levels[li];
        let n_steps = n_base << li;
        let dt = cfg.t_final / n_steps as f64;
        let mut level_cfg = cfg.clone();
        level_cfg.grid = vec![n, n];
        let grid0 = initial_grid_2d(&level_cfg, &cfg.initial)?;
        let k_mid = n_steps / 2;
        let wanted: BTreeSet<usize> = [k_mid - 1, k_mid, k_mid + 1, n_steps].into_iter().collect();
        let snaps = run_2d(&grid0, xi, dt, n_steps, &wanted, &eos, cfg.g_modulus)?;
        let window = [
            snaps[&(k_mid - 1)].clone(),
            snaps[&k_mid].clone(),
            snaps[&(k_mid + 1)].clone(),
        ];
        let times = [
            (k_mid as f64 - 1.0) * dt,
            k_mid as f64 * dt,
            (k_mid as f64 + 1.0) * dt,
        ];
        let constitutive = constitutive_residual(&window, &times, &params)?[0];
        let balance = entropy_balance_residual(&window, &times, &eos, cfg.g_modulus, xi)?[0];
        let piola_initial = piola_residual(&grid0)
            .iter()
            .cloned()
            .fold(0.0f64, f64::max);
        let piola_final = piola_residual(&snaps[&n_steps])
            .iter()
            .cloned()
            .fold(0.0f64, f64::max);
        Ok(LevelResult {
            n,
            constitutive,
            balance,
            piola_initial,
            piola_final,
        })
    });
    let results: Vec<LevelResult> = results.into_iter().collect::<Result<_>>()?;

    // Truncation order of the involution monitor on exactly compatible data.
    let piola_truncation: Vec<f64> = levels
        .iter()
        .map(|&n| {
            compatible_smooth_2d(n, n, 0.1, 0.05)
                .map(|g| piola_residual(&g).iter().cloned().fold(0.0f64, f64::max))
        })
        .collect::<std::result::Result<_, _>>()
        .map_err(CliError::from)?;

    // Drift of the monitor on compatible data whose initial residual is the
    // O(Δx²) truncation level (nonzero, unlike the shear-wave field).
    let compat_drift = {
        let n = cfg.grid[0];
        let grid0 = compatible_smooth_2d(n, n, 0.1, 0.05).map_err(CliError::from)?;
        let wanted: BTreeSet<usize> = [n_base].into_iter().collect();
        let snaps = run_2d(
            &grid0,
            xi,
            cfg.t_final / n_base as f64,
            n_base,
            &wanted,
            &eos,
            cfg.g_modulus,
        )?;
        let initial = piola_residual(&grid0)
            .iter()
            .cloned()
            .fold(0.0f64, f64::max);
        let fin = piola_residual(&snaps[&n_base])
            .iter()
            .cloned()
            .fold(0.0f64, f64::max);
        json!({ "n": n, "steps": n_base, "initial": initial, "final": fin })
    };

    let ratio = |v: &[f64]| -> Vec<f64> { v.windows(2).map(|w| w[1] / w[0]).collect() };
    let cons: Vec<f64> = results.iter().map(|r| r.constitutive).collect();
    let bal: Vec<f64> = results.iter().map(|r| r.balance).collect();

    let t_mid = cfg.t_final / 2.0;
    let mut rows = Vec::new();
    for r in &results {
        rows.push(CsvRow {
            scenario: cfg.scenario.as_str(),
            xi_1: Some(xi),
            xi_2: Some(xi),
            t: Some(t_mid),
            constitutive_residual: Some(r.constitutive),
            piola_residual: Some(r.piola_final),
            ..Default::default()
        });
    }

    let mut report = Report::new(cfg);
    report.diagnostics = json!({
        "xi": xi,
        "t_probe": t_mid,
        "initial": cfg.initial,
        "levels": levels,
        "constitutive": { "values": cons.clone(), "ratios": ratio(&cons) },
        "entropy_balance": { "values": bal.clone(), "ratios": ratio(&bal) },
        "piola_truncation": {
            "field": "compatible-smooth (mixed wavenumbers)",
            "values": piola_truncation.clone(),
            "ratios": ratio(&piola_truncation),
        },
        "involution_drift": results.iter().map(|r| json!({
            "n": r.n,
            "initial": r.piola_initial,
            "final": r.piola_final,
        })).collect::<Vec<_>>(),
        "involution_drift_compatible": compat_drift,
    });
    Ok(ScenarioOutput { rows, report })
}
