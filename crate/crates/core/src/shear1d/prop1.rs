//! Per-step audit of the two-run relaxation-difference inequality.
//!
//! For two runs with frequencies ξ₁ ≥ ξ₂ ≥ 0 and shared grid, initial data,
//! forcing and boundary data, the difference fields δu = u₁ − u₂,
//! δτ = τ₁ − τ₂ satisfy the continuum bound
//!
//!   d/dt ∫(G·δu² + δτ²) + B^δ + (ξ₁+ξ₂)∫δτ² ≤ (ξ₁−ξ₂)∫τ₂²,
//!
//! where B^δ collects the (non-negative for homogeneous-difference data)
//! boundary terms. The bound follows from Cauchy–Schwarz and Young applied
//! to the cross term −(ξ₁−ξ₂)∫τ₂·δτ of the difference energy balance.
//!
//! The split scheme satisfies an exact per-step analog. The transport
//! sub-step is linear, so differences transport exactly and at CFL = 1
//! contribute only the boundary-trace terms. For the relaxation sub-step,
//! writing p = e^{−ξ₁Δt} and q = e^{−ξ₂Δt} − e^{−ξ₁Δt} ≥ 0, pointwise
//!
//!   δτ′ = p·δτ − q·τ₂,   so by Young's inequality (p + q ≤ 1)
//!   δτ′² ≤ (1 − (1 − e^{−(ξ₁+ξ₂)Δt}))·δτ² + (e^{−ξ₂Δt} − e^{−ξ₁Δt})e^{−ξ₂Δt}·τ₂².
//!
//! The audit therefore uses the step-exact coefficients
//!
//!   ξ̂₊ = (1 − e^{−(ξ₁+ξ₂)Δt})/Δt → ξ₁ + ξ₂,
//!   ξ̂₋ = (e^{−ξ₂Δt} − e^{−ξ₁Δt})·e^{−ξ₂Δt}/Δt → ξ₁ − ξ₂  (Δt → 0),
//!
//! with ∫δτ² and ∫τ₂² evaluated on the post-transport fields. With these
//! coefficients LHS − RHS ≤ 0 holds per step up to rounding; with the plain
//! coefficients the O(Δt) quadrature remainder would dominate the slack.

use crate::error::{CoreError, Result};
use crate::linalg::compensated_sum;
use crate::material::MaterialParams;
use crate::shear1d::bc::BoundarySpec;
use crate::shear1d::run::ShearTrajectory;
use crate::shear1d::step::advect_step;

/// One step of the difference inequality.
#[derive(Clone, Copy, Debug)]
pub struct Prop1Step {
    /// Time at the end of the step.
    pub t: f64,
    /// (ΔE^δ)/Δt + boundary difference terms + ξ̂₊·∫δτ²_mid.
    pub lhs: f64,
    /// ξ̂₋·∫τ₂²_mid.
    pub rhs: f64,
    /// lhs − rhs (≤ tolerance when the inequality holds).
    pub slack: f64,
}

/// Per-step inequality report for a run pair.
#[derive(Clone, Debug)]
pub struct Prop1Report {
    pub steps: Vec<Prop1Step>,
    pub max_slack: f64,
    /// Shared initial energy ∫(G·u⁰² + τ⁰²); the natural slack scale.
    pub energy_scale: f64,
}

fn riemann_of(u: &[f64], tau: &[f64], sg: f64) -> (Vec<f64>, Vec<f64>) {
    let wp = tau.iter().zip(u).map(|(&t, &v)| t + sg * v).collect();
    let wm = tau.iter().zip(u).map(|(&t, &v)| t - sg * v).collect();
    (wp, wm)
}

/// Evaluate the discrete difference inequality for every step of two dense
/// trajectories with ξ₁ ≥ ξ₂ and shared conditions.
///
/// Both trajectories must store per-step fields (`dense: true`), share the
/// grid, step size and boundary specs, and have been produced with the same
/// initial data and forcing.
pub fn prop1_audit(
    run1: &ShearTrajectory,
    xi1: f64,
    run2: &ShearTrajectory,
    xi2: f64,
    params_shared: &MaterialParams,
    bc_left: &BoundarySpec,
    bc_right: &BoundarySpec,
) -> Result<Prop1Report> {
    if !(xi1 >= xi2 && xi2 >= 0.0) {
        return Err(CoreError::Config(format!(
            "need xi1 >= xi2 >= 0, got xi1 = {xi1}, xi2 = {xi2}"
        )));
    }
    let (d1, d2) = match (&run1.dense, &run2.dense) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(CoreError::Config(
                "prop1_audit needs dense trajectories".into(),
            ))
        }
    };
    if run1.n_steps != run2.n_steps
        || run1.dt != run2.dt
        || run1.g_modulus != run2.g_modulus
        || d1.u[0].len() != d2.u[0].len()
    {
        return Err(CoreError::Config(
            "runs must share grid, step size and modulus".into(),
        ));
    }
    let s0 = &run1.snapshots[0];
    let s0b = &run2.snapshots[0];
    if s0.y_min != s0b.y_min || s0.y_max != s0b.y_max {
        return Err(CoreError::Config("runs must share the domain".into()));
    }

    let g = params_shared.g;
    let sg = g.sqrt();
    let n = d1.u[0].len();
    let dy = (s0.y_max - s0.y_min) / n as f64;
    let n_steps = run1.n_steps;

    let diff_energy = |k: usize| -> f64 {
        dy * compensated_sum((0..n).map(|i| {
            let du = d1.u[k][i] - d2.u[k][i];
            let dtau = d1.tau[k][i] - d2.tau[k][i];
            g * du * du + dtau * dtau
        }))
    };

    let energy_scale = dy
        * compensated_sum(
            (0..n).map(|i| g * d1.u[0][i] * d1.u[0][i] + d1.tau[0][i] * d1.tau[0][i]),
        );

    let mut steps = Vec::with_capacity(n_steps);
    let mut max_slack = f64::NEG_INFINITY;
    let mut t_prev = 0.0f64;
    let total_t = run1.snapshots.last().unwrap().t;

    for k in 0..n_steps {
        // Recompute the transport sub-step from the stored states: it is a
        // pure function of the step-k fields and the boundary data. All
        // steps use dt_full except a possible shorter final one.
        let dt = if k + 1 < n_steps {
            run1.dt
        } else {
            total_t - run1.dt * (n_steps - 1) as f64
        };
        let t_mid = t_prev + 0.5 * dt;
        let g_l = bc_left.g.eval(t_mid);
        let g_r = bc_right.g.eval(t_mid);

        let (mut wp1, mut wm1) = riemann_of(&d1.u[k], &d1.tau[k], sg);
        let (mut wp2, mut wm2) = riemann_of(&d2.u[k], &d2.tau[k], sg);
        let tr1 = advect_step(&mut wp1, &mut wm1, g, dt, dy, bc_left, bc_right, g_l, g_r)?;
        let tr2 = advect_step(&mut wp2, &mut wm2, g, dt, dy, bc_left, bc_right, g_l, g_r)?;

        // Boundary difference terms from the characteristic traces.
        let d_lo = tr1.left_out - tr2.left_out;
        let d_li = tr1.left_in - tr2.left_in;
        let d_ro = tr1.right_out - tr2.right_out;
        let d_ri = tr1.right_in - tr2.right_in;
        let boundary = 0.5 * sg * ((d_lo * d_lo - d_li * d_li) + (d_ro * d_ro - d_ri * d_ri));

        // Post-transport integrals.
        let dtau2_mid = dy
            * compensated_sum((0..n).map(|i| {
                let dtau = 0.5 * (wp1[i] + wm1[i]) - 0.5 * (wp2[i] + wm2[i]);
                dtau * dtau
            }));
        let tau2_mid_2 = dy
            * compensated_sum((0..n).map(|i| {
                let tau2 = 0.5 * (wp2[i] + wm2[i]);
                tau2 * tau2
            }));

        let xi_hat_plus = (1.0 - (-(xi1 + xi2) * dt).exp()) / dt;
        let xi_hat_minus = ((-xi2 * dt).exp() - (-xi1 * dt).exp()) * (-xi2 * dt).exp() / dt;

        let e_prev = diff_energy(k);
        let e_next = diff_energy(k + 1);
        let lhs = (e_next - e_prev) / dt + boundary + xi_hat_plus * dtau2_mid;
        let rhs = xi_hat_minus * tau2_mid_2;
        let slack = lhs - rhs;
        max_slack = max_slack.max(slack);
        t_prev += dt;
        steps.push(Prop1Step {
            t: t_prev,
            lhs,
            rhs,
            slack,
        });
    }

    Ok(Prop1Report {
        steps,
        max_slack,
        energy_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shear1d::bc::Side;
    use crate::shear1d::run::{run_shear, Forcing, ShearRunConfig};
    use crate::shear1d::state::ShearState1D;
    use std::f64::consts::PI;

    fn make_run(xi: f64, n: usize, dense: bool) -> (ShearTrajectory, MaterialParams) {
        let params = MaterialParams::new(1.0, xi, 1.0).unwrap();
        let init =
            ShearState1D::from_profiles(0.0, 1.0, n, |y| (2.0 * PI * y).sin(), |_| 0.0).unwrap();
        let bl = BoundarySpec::periodic(Side::Left);
        let br = BoundarySpec::periodic(Side::Right);
        let traj = run_shear(
            &init,
            &params,
            &bl,
            &br,
            &Forcing::none(),
            &ShearRunConfig {
                t_final: 1.0,
                cfl: 1.0,
                n_outputs: 4,
                dense,
            },
        )
        .unwrap();
        (traj, params)
    }

    #[test]
    fn identical_runs_give_zero_difference() {
        let (r1, params) = make_run(0.25, 64, true);
        let (r2, _) = make_run(0.25, 64, true);
        let bl = BoundarySpec::periodic(Side::Left);
        let br = BoundarySpec::periodic(Side::Right);
        let rep = prop1_audit(&r1, 0.25, &r2, 0.25, &params, &bl, &br).unwrap();
        for s in &rep.steps {
            assert_eq!(s.lhs, 0.0);
            assert_eq!(s.rhs, 0.0);
        }
    }

    #[test]
    fn inequality_holds_every_step() {
        let (r1, params) = make_run(0.2, 128, true);
        let (r2, _) = make_run(0.0, 128, true);
        let bl = BoundarySpec::periodic(Side::Left);
        let br = BoundarySpec::periodic(Side::Right);
        let rep = prop1_audit(&r1, 0.2, &r2, 0.0, &params, &bl, &br).unwrap();
        assert!(
            rep.max_slack <= 1e-8 * rep.energy_scale,
            "max slack {} vs scale {}",
            rep.max_slack,
            rep.energy_scale
        );
    }

    #[test]
    fn misordered_frequencies_rejected() {
        let (r1, params) = make_run(0.1, 32, true);
        let (r2, _) = make_run(0.2, 32, true);
        let bl = BoundarySpec::periodic(Side::Left);
        let br = BoundarySpec::periodic(Side::Right);
        assert!(prop1_audit(&r1, 0.1, &r2, 0.2, &params, &bl, &br).is_err());
    }

    #[test]
    fn dense_storage_required() {
        let (r1, params) = make_run(0.2, 32, false);
        let (r2, _) = make_run(0.0, 32, true);
        let bl = BoundarySpec::periodic(Side::Left);
        let br = BoundarySpec::periodic(Side::Right);
        assert!(prop1_audit(&r1, 0.2, &r2, 0.0, &params, &bl, &br).is_err());
    }
}
