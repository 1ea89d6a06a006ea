//! Transport and relaxation sub-steps on the Riemann variables.

use crate::error::{CoreError, Result};
use crate::shear1d::bc::{BcKind, BoundarySpec, Side};

/// Characteristic traces used by one transport step.
///
/// `left_out`/`left_in` are the outgoing w⁺ and incoming w⁻ at y_min;
/// `right_out`/`right_in` are the outgoing w⁻ and incoming w⁺ at y_max.
/// For periodic boundaries the incoming values are the wrapped outgoing ones.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryTraces {
    pub left_out: f64,
    pub left_in: f64,
    pub right_out: f64,
    pub right_in: f64,
}

/// One first-order upwind transport step of size `dt`.
///
/// w⁺ moves at speed −√G, w⁻ at +√G. At CFL = √G·dt/Δy exactly 1 the update
/// is an exact one-cell shift (plain copies, no arithmetic); below 1 it is
/// the convex upwind blend. Incoming characteristic values at the boundaries
/// are reconstructed from the outgoing trace and the boundary relation with
/// data `g_left`, `g_right`.
pub fn advect_step(
    w_plus: &mut [f64],
    w_minus: &mut [f64],
    g_modulus: f64,
    dt: f64,
    dy: f64,
    bc_left: &BoundarySpec,
    bc_right: &BoundarySpec,
    g_left: f64,
    g_right: f64,
) -> Result<BoundaryTraces> {
    let n = w_plus.len();
    debug_assert_eq!(w_minus.len(), n);
    debug_assert!(n >= 2);
    if bc_left.side != Side::Left || bc_right.side != Side::Right {
        return Err(CoreError::Config(
            "boundary specs on the wrong sides".into(),
        ));
    }
    let periodic_l = bc_left.kind == BcKind::Periodic;
    let periodic_r = bc_right.kind == BcKind::Periodic;
    if periodic_l != periodic_r {
        return Err(CoreError::Config(
            "periodic boundaries must be used on both sides".into(),
        ));
    }
    let nu = g_modulus.sqrt() * dt / dy;
    if nu > 1.0 + 1e-12 {
        return Err(CoreError::Stability(format!(
            "CFL number {nu} exceeds 1 (dt = {dt}, dy = {dy})"
        )));
    }

    let left_out = w_plus[0];
    let right_out = w_minus[n - 1];
    let (left_in, right_in) = if periodic_l {
        (w_minus[n - 1], w_plus[0])
    } else {
        (
            bc_left.incoming(left_out, g_left, g_modulus)?,
            bc_right.incoming(right_out, g_right, g_modulus)?,
        )
    };

    if nu == 1.0 {
        // Exact shift: w⁻ one cell right, w⁺ one cell left.
        w_minus.rotate_right(1);
        w_minus[0] = left_in;
        w_plus.rotate_left(1);
        w_plus[n - 1] = right_in;
    } else {
        // Upwind blend; traverse so the source cell is still unmodified.
        for i in (0..n).rev() {
            let upwind = if i == 0 { left_in } else { w_minus[i - 1] };
            w_minus[i] = (1.0 - nu) * w_minus[i] + nu * upwind;
        }
        for i in 0..n {
            let upwind = if i == n - 1 { right_in } else { w_plus[i + 1] };
            w_plus[i] = (1.0 - nu) * w_plus[i] + nu * upwind;
        }
    }

    Ok(BoundaryTraces {
        left_out,
        left_in,
        right_out,
        right_in,
    })
}

/// Exact relaxation step: τ ← τ·e^{−ξ·dt}, u unchanged, applied pointwise.
///
/// In Riemann variables this is the exact flow of
/// d/dt (w⁺, w⁻) = −(ξ/2)(w⁺ + w⁻)·(1, 1).
pub fn source_step(w_plus: &mut [f64], w_minus: &mut [f64], xi: f64, dt: f64) {
    debug_assert!(xi >= 0.0 && dt >= 0.0);
    if xi == 0.0 {
        return;
    }
    let decay = (-xi * dt).exp();
    for (p, m) in w_plus.iter_mut().zip(w_minus.iter_mut()) {
        let tau = 0.5 * (*p + *m);
        let half_diff = 0.5 * (*p - *m); // √G·u
        let tau_new = tau * decay;
        *p = tau_new + half_diff;
        *m = tau_new - half_diff;
    }
}

/// Midpoint-rule forcing: u ← u + dt·f(t+dt/2, y) pointwise.
///
/// τ is untouched; w± pick up ±√G·dt·f.
pub fn apply_forcing(
    w_plus: &mut [f64],
    w_minus: &mut [f64],
    g_modulus: f64,
    dt: f64,
    f_mid: &[f64],
) {
    debug_assert_eq!(w_plus.len(), f_mid.len());
    let sg = g_modulus.sqrt();
    for i in 0..w_plus.len() {
        let kick = sg * dt * f_mid[i];
        w_plus[i] += kick;
        w_minus[i] -= kick;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shear1d::bc::BoundaryData;

    fn periodic_pair() -> (BoundarySpec, BoundarySpec) {
        (
            BoundarySpec::periodic(Side::Left),
            BoundarySpec::periodic(Side::Right),
        )
    }

    #[test]
    fn constants_are_fixed_points_of_transport() {
        // Constant fields with matching boundary data stay constant.
        let g_mod = 1.0;
        let n = 32;
        let (u0, tau0) = (0.4, -0.2);
        let mut wp = vec![tau0 + u0; n];
        let mut wm = vec![tau0 - u0; n];
        let bl =
            BoundarySpec::dissipative(Side::Left, 1.0, -2.0, BoundaryData::Zero, g_mod).unwrap();
        let br =
            BoundarySpec::dissipative(Side::Right, 1.0, 2.0, BoundaryData::Zero, g_mod).unwrap();
        let g_l = bl.c_u * u0 + bl.c_tau * tau0;
        let g_r = br.c_u * u0 + br.c_tau * tau0;
        advect_step(
            &mut wp,
            &mut wm,
            g_mod,
            1.0 / n as f64,
            1.0 / n as f64,
            &bl,
            &br,
            g_l,
            g_r,
        )
        .unwrap();
        for i in 0..n {
            assert!((wp[i] - (tau0 + u0)).abs() <= 1e-14);
            assert!((wm[i] - (tau0 - u0)).abs() <= 1e-14);
        }
    }

    #[test]
    fn cfl_one_is_exact_shift() {
        // Indicator of cells [10, 20) in w⁻ moves to [11, 21) in one step.
        let n = 64;
        let mut wp = vec![0.0; n];
        let mut wm: Vec<f64> = (0..n)
            .map(|i| if (10..20).contains(&i) { 1.0 } else { 0.0 })
            .collect();
        let (bl, br) = periodic_pair();
        let dy = 1.0 / n as f64;
        advect_step(&mut wp, &mut wm, 1.0, dy, dy, &bl, &br, 0.0, 0.0).unwrap();
        for i in 0..n {
            let want = if (11..21).contains(&i) { 1.0 } else { 0.0 };
            assert_eq!(wm[i], want, "cell {i}");
        }
    }

    #[test]
    fn half_cfl_preserves_mass() {
        // Single-cell spike: Σw⁻ is conserved by the upwind blend.
        let n = 50;
        let mut wp = vec![0.0; n];
        let mut wm = vec![0.0; n];
        wm[17] = 1.0;
        let (bl, br) = periodic_pair();
        let dy = 1.0 / n as f64;
        let dt = 0.5 * dy;
        let before: f64 = wm.iter().sum();
        for _ in 0..20 {
            advect_step(&mut wp, &mut wm, 1.0, dt, dy, &bl, &br, 0.0, 0.0).unwrap();
        }
        let after: f64 = wm.iter().sum();
        assert!((after - before).abs() <= 1e-12);
    }

    #[test]
    fn cfl_above_one_rejected() {
        let n = 8;
        let mut wp = vec![0.0; n];
        let mut wm = vec![0.0; n];
        let (bl, br) = periodic_pair();
        let dy = 1.0 / n as f64;
        let err = advect_step(&mut wp, &mut wm, 1.0, 1.1 * dy, dy, &bl, &br, 0.0, 0.0);
        assert!(matches!(err, Err(CoreError::Stability(_))));
    }

    #[test]
    fn mixed_periodic_rejected() {
        let n = 8;
        let mut wp = vec![0.0; n];
        let mut wm = vec![0.0; n];
        let bl = BoundarySpec::periodic(Side::Left);
        let br = BoundarySpec::dirichlet_velocity(Side::Right, BoundaryData::Zero);
        let dy = 1.0 / n as f64;
        assert!(advect_step(&mut wp, &mut wm, 1.0, dy, dy, &bl, &br, 0.0, 0.0).is_err());
    }

    #[test]
    fn source_step_identity_at_zero_xi() {
        let mut wp = vec![0.3, -0.7];
        let mut wm = vec![1.1, 0.2];
        let (wp0, wm0) = (wp.clone(), wm.clone());
        source_step(&mut wp, &mut wm, 0.0, 0.5);
        assert_eq!(wp, wp0);
        assert_eq!(wm, wm0);
    }

    #[test]
    fn source_step_exact_exponential() {
        // (u=0, τ=1, ξ=1, dt=ln 2) → τ = 1/2, u = 0.
        let mut wp = vec![1.0];
        let mut wm = vec![1.0];
        source_step(&mut wp, &mut wm, 1.0, std::f64::consts::LN_2);
        let tau = 0.5 * (wp[0] + wm[0]);
        let u = 0.5 * (wp[0] - wm[0]);
        assert!((tau - 0.5).abs() <= 1e-15);
        assert_eq!(u, 0.0);
    }

    #[test]
    fn pure_velocity_is_equilibrium() {
        // w⁺ + w⁻ = 0 means τ = 0: the relaxation leaves the state alone.
        let mut wp = vec![1.0, -0.4];
        let mut wm = vec![-1.0, 0.4];
        source_step(&mut wp, &mut wm, 3.0, 0.7);
        assert_eq!(wp, vec![1.0, -0.4]);
        assert_eq!(wm, vec![-1.0, 0.4]);
    }
}
