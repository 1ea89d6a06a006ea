//! Time-stepping driver for the 1D shear system.

use crate::error::{CoreError, Result};
use crate::material::MaterialParams;
use crate::shear1d::bc::BoundarySpec;
use crate::shear1d::ledger::{energy_audit, energy_integral, EnergyLedger, StepInputs};
use crate::shear1d::state::ShearState1D;
use crate::shear1d::step::{advect_step, apply_forcing, source_step};
use std::sync::Arc;

/// Optional bulk forcing f(t, y).
#[derive(Clone, Default)]
pub struct Forcing(pub Option<Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>>);

impl Forcing {
    pub fn none() -> Self {
        Self(None)
    }

    pub fn of(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self(Some(Arc::new(f)))
    }
}

/// Run controls.
#[derive(Clone, Debug)]
pub struct ShearRunConfig {
    /// Final time T > 0.
    pub t_final: f64,
    /// CFL ratio in (0, 1]; 1 gives the exact-shift regime.
    pub cfl: f64,
    /// Number of snapshot intervals; snapshots at ~j·T/n_outputs, j = 0..=n_outputs.
    pub n_outputs: usize,
    /// Keep (u, τ) at every step for per-step audits.
    pub dense: bool,
}

/// Per-step field storage for audits.
#[derive(Clone, Debug)]
pub struct DenseStates {
    /// u at steps 0..=n_steps.
    pub u: Vec<Vec<f64>>,
    /// τ at steps 0..=n_steps.
    pub tau: Vec<Vec<f64>>,
}

/// Result of one run.
#[derive(Clone)]
pub struct ShearTrajectory {
    /// Snapshots at the output times (first is the initial state).
    pub snapshots: Vec<ShearState1D>,
    /// One ledger per step.
    pub ledgers: Vec<EnergyLedger>,
    pub initial_energy: f64,
    pub dense: Option<DenseStates>,
    pub dt: f64,
    pub n_steps: usize,
    pub g_modulus: f64,
}

impl ShearTrajectory {
    pub fn final_state(&self) -> &ShearState1D {
        self.snapshots.last().unwrap()
    }

    /// Largest per-step energy imbalance |residual|·dt relative to the
    /// pre-step energy.
    pub fn max_relative_residual(&self) -> f64 {
        let mut prev_e = self.initial_energy;
        let mut prev_t = 0.0;
        let mut worst = 0.0f64;
        for l in &self.ledgers {
            let dt = l.t - prev_t;
            let scale = prev_e.max(1e-300);
            worst = worst.max((l.residual * dt / scale).abs());
            prev_e = l.energy;
            prev_t = l.t;
        }
        worst
    }

    /// True when E never increases from step to step.
    pub fn energy_non_increasing(&self) -> bool {
        let mut prev = self.initial_energy;
        let tol = 1e-12 * self.initial_energy.max(1e-300);
        for l in &self.ledgers {
            if l.energy > prev + tol {
                return false;
            }
            prev = l.energy;
        }
        true
    }
}

/// Step-count plan: `n_full` steps of `dt_full` plus an optional remainder.
fn plan_steps(t_final: f64, dt_full: f64) -> (usize, usize, f64) {
    let ratio = t_final / dt_full;
    let n_full = ratio.floor() as usize;
    let rem = t_final - n_full as f64 * dt_full;
    if rem > 1e-12 * t_final {
        (n_full + 1, n_full, rem)
    } else {
        (n_full, n_full, 0.0)
    }
}

/// Solve the 1D shear system by Lie splitting (transport, then relaxation
/// with midpoint forcing), producing snapshots and a per-step energy ledger.
///
/// The step size is exactly cfl·Δy/√G; when T is not an integer multiple a
/// final shorter step (CFL < 1) closes the gap. Given identical inputs the
/// run is bitwise reproducible.
pub fn run_shear(
    initial: &ShearState1D,
    params: &MaterialParams,
    bc_left: &BoundarySpec,
    bc_right: &BoundarySpec,
    forcing: &Forcing,
    cfg: &ShearRunConfig,
) -> Result<ShearTrajectory> {
    if !(cfg.t_final > 0.0) {
        return Err(CoreError::Config(format!(
            "t_final must be > 0, got {}",
            cfg.t_final
        )));
    }
    if !(cfg.cfl > 0.0 && cfg.cfl <= 1.0) {
        return Err(CoreError::Config(format!(
            "cfl must lie in (0, 1], got {}",
            cfg.cfl
        )));
    }
    bc_left.check_solvable(params.g)?;
    bc_right.check_solvable(params.g)?;

    let g = params.g;
    let sg = g.sqrt();
    let dy = initial.dy();
    let dt_full = cfg.cfl * dy / sg;
    let (n_steps, n_full, dt_rem) = plan_steps(cfg.t_final, dt_full);

    let n_outputs = cfg.n_outputs.max(1);
    let mut output_steps: Vec<usize> = (0..=n_outputs)
        .map(|j| ((j * n_steps) as f64 / n_outputs as f64).round() as usize)
        .collect();
    output_steps.dedup();

    let (mut w_plus, mut w_minus) = initial.to_riemann(g);
    let n = initial.n();
    let initial_energy = energy_integral(initial, g);

    let mut snapshots = Vec::with_capacity(output_steps.len());
    let mut ledgers = Vec::with_capacity(n_steps);
    let mut dense = cfg.dense.then(|| DenseStates {
        u: Vec::with_capacity(n_steps + 1),
        tau: Vec::with_capacity(n_steps + 1),
    });

    let mut record = |state: &ShearState1D, step: usize, dense: &mut Option<DenseStates>| {
        if output_steps.contains(&step) {
            snapshots.push(state.clone());
        }
        if let Some(d) = dense {
            d.u.push(state.u.clone());
            d.tau.push(state.tau.clone());
        }
    };

    let mut prev = initial.clone();
    prev.t = 0.0;
    record(&prev, 0, &mut dense);

    let mut f_buf = vec![0.0; n];
    for step in 0..n_steps {
        let dt = if step < n_full { dt_full } else { dt_rem };
        let t_mid = prev.t + 0.5 * dt;

        let g_left = bc_left.g.eval(t_mid);
        let g_right = bc_right.g.eval(t_mid);
        let traces = advect_step(
            &mut w_plus,
            &mut w_minus,
            g,
            dt,
            dy,
            bc_left,
            bc_right,
            g_left,
            g_right,
        )?;

        // Post-transport fields feed the ledger's exact bookkeeping.
        let tau_mid: Vec<f64> = w_plus
            .iter()
            .zip(&w_minus)
            .map(|(&p, &m)| 0.5 * (p + m))
            .collect();
        let u_mid: Vec<f64> = w_plus
            .iter()
            .zip(&w_minus)
            .map(|(&p, &m)| (p - m) / (2.0 * sg))
            .collect();

        source_step(&mut w_plus, &mut w_minus, params.xi, dt);
        let f_mid = forcing.0.as_ref().map(|f| {
            for (i, slot) in f_buf.iter_mut().enumerate() {
                *slot = f(t_mid, prev.cell_center(i));
            }
            apply_forcing(&mut w_plus, &mut w_minus, g, dt, &f_buf);
            &f_buf[..]
        });

        let next = ShearState1D::from_riemann(
            initial.y_min,
            initial.y_max,
            &w_plus,
            &w_minus,
            g,
            prev.t + dt,
        )?;

        let ledger = energy_audit(
            &prev,
            &next,
            &StepInputs {
                dt,
                traces,
                tau_mid: &tau_mid,
                u_mid: &u_mid,
                f_mid,
            },
            params,
        );
        if !ledger.energy.is_finite() {
            return Err(CoreError::NonFinite(format!(
                "energy became non-finite at t = {} (step {step})",
                next.t
            )));
        }
        ledgers.push(ledger);

        record(&next, step + 1, &mut dense);
        prev = next;
    }

    Ok(ShearTrajectory {
        snapshots,
        ledgers,
        initial_energy,
        dense,
        dt: dt_full,
        n_steps,
        g_modulus: g,
    })
}
