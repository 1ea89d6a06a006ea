//! A-posteriori residual of the entropy balance.
//!
//! # Which density balances in flux form
//!
//! Along smooth solutions, with S = FAFᵀ and material derivatives
//! Dρ/Dt = −ρ∇·u, ρDu/Dt = div σ, DS/Dt = ∇uS + S∇uᵀ + ξ(I − S),
//! the energy η = ρ|u|²/2 + ρe₀(1/ρ) + (G/2)ρ·tr S evolves as
//!
//!   ∂ₜη + div((η + p)u − τu) = ρG∇·u + ξ·Dη·Π,
//!
//! i.e. the plain work flux leaves the production term ρG∇·u, which is not
//! a divergence. The term is absorbed by the density φ(ρ) = ρG·ln ρ, since
//! ∂ₜφ + div(φu) = (φ − ρφ′)∇·u = −ρG∇·u by mass conservation. Hence the
//! balanced pair is
//!
//!   η̂ := η + ρG·ln ρ,   Q_j := u_j(η̂ + p) − Σ_i τ_{ij}u_i,
//!
//! with ∂ₜη̂ + ∂_jQ_j = ξ·Dη̂·Π exactly (and Dη̂·Π = Dη·Π because Π has no
//! mass component). Equivalently: the −ρG·I part of τ acts as an elastic
//! pressure, and η̂ is η with the equation of state shifted to the effective
//! isothermal constant c₀² + G.
//!
//! Because the ρF flux is the curl form reduced with div(ρFᵀ) = 0, the
//! pointwise compatibility DQ_j = Dη̂·DG_j holds modulo the involution: it
//! is exact on every slot except row j of ρF (whose plane-wave variations
//! the involution forbids), which the tests verify by finite differences.
//! On involution-violating data the balance residual carries an O(|u|·
//! |div(ρFᵀ)|) defect on top of the discretization error.

use crate::error::{CoreError, Result};
use crate::material::{neo_hookean_stress, Eos};
use crate::multid::flux::source_pi;
use crate::multid::grid::Grid2;
use crate::multid::state::{conserved_to_primitive, Conserved};

use super::eval::{eta, grad_eta};

/// Balanced energy density η̂ = η + ρG·ln ρ.
pub fn eta_balanced(c: &Conserved, eos: &Eos, g_modulus: f64) -> Result<f64> {
    let rho = c.rho();
    Ok(eta(c, eos, g_modulus)? + rho * g_modulus * rho.ln())
}

/// Entropy flux Q_j = u_j(η̂ + p) − Σ_i τ_{ij}u_i for the balanced density.
pub fn entropy_flux(c: &Conserved, dir: usize, eos: &Eos, g_modulus: f64) -> Result<f64> {
    let p = conserved_to_primitive(c)?;
    let e_hat = eta_balanced(c, eos, g_modulus)?;
    let pressure = eos.pressure(p.rho);
    let tau = neo_hookean_stress(p.rho, &p.f, &p.a, g_modulus)?;
    let mut work = 0.0;
    for i in 0..c.dim() {
        work += tau.get(i, dir) * p.u[i];
    }
    Ok(p.u[dir] * (e_hat + pressure) - work)
}

/// ξ·Dη·Π at one state (equal for η and η̂).
pub fn entropy_production(c: &Conserved, eos: &Eos, g_modulus: f64, xi: f64) -> Result<f64> {
    if xi == 0.0 {
        return Ok(0.0);
    }
    let grad = grad_eta(c, eos, g_modulus)?;
    let pi = source_pi(c)?;
    let mut dot = 0.0;
    for s in 0..grad.n_comp() {
        dot += grad.as_slice()[s] * pi.as_slice()[s];
    }
    Ok(xi * dot)
}

/// Max-norm residual of ∂ₜη̂ + ∂_jQ_j − ξ·Dη·Π per interior snapshot.
///
/// `snaps` are uniformly spaced in time (`times` is validated); the time
/// derivative is centered across neighbors and the flux divergence centered
/// in space on the periodic grid.
pub fn entropy_balance_residual(
    snaps: &[Grid2],
    times: &[f64],
    eos: &Eos,
    g_modulus: f64,
    xi: f64,
) -> Result<Vec<f64>> {
    if snaps.len() != times.len() {
        return Err(CoreError::Config(
            "entropy_balance_residual: snapshot/time length mismatch".into(),
        ));
    }
    if snaps.len() < 3 {
        return Err(CoreError::Config(
            "entropy_balance_residual needs at least 3 snapshots".into(),
        ));
    }
    let dt = times[1] - times[0];
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.abs() {
            return Err(CoreError::Config(
                "entropy_balance_residual: snapshots must be uniformly spaced".into(),
            ));
        }
    }

    let g0 = &snaps[0];
    let (nx, ny) = (g0.nx, g0.ny);
    let (dx, dy) = (g0.dx(), g0.dy());

    let mut eta_f: Vec<Vec<f64>> = Vec::with_capacity(snaps.len());
    let mut qx_f: Vec<Vec<f64>> = Vec::with_capacity(snaps.len());
    let mut qy_f: Vec<Vec<f64>> = Vec::with_capacity(snaps.len());
    for g in snaps {
        if g.nx != nx || g.ny != ny {
            return Err(CoreError::Config(
                "entropy_balance_residual: snapshot grids differ".into(),
            ));
        }
        let mut e = Vec::with_capacity(nx * ny);
        let mut qx = Vec::with_capacity(nx * ny);
        let mut qy = Vec::with_capacity(nx * ny);
        for c in &g.cells {
            e.push(eta_balanced(c, eos, g_modulus)?);
            qx.push(entropy_flux(c, 0, eos, g_modulus)?);
            qy.push(entropy_flux(c, 1, eos, g_modulus)?);
        }
        eta_f.push(e);
        qx_f.push(qx);
        qy_f.push(qy);
    }

    let mut series = Vec::with_capacity(snaps.len() - 2);
    for k in 1..snaps.len() - 1 {
        let g = &snaps[k];
        let mut worst = 0.0f64;
        for iy in 0..ny {
            for ix in 0..nx {
                let idx = g.idx(ix, iy);
                let ddt = (eta_f[k + 1][idx] - eta_f[k - 1][idx]) / (2.0 * dt);
                let dqx = (qx_f[k][g.idx_wrap(ix, iy, 1, 0)] - qx_f[k][g.idx_wrap(ix, iy, -1, 0)])
                    / (2.0 * dx);
                let dqy = (qy_f[k][g.idx_wrap(ix, iy, 0, 1)] - qy_f[k][g.idx_wrap(ix, iy, 0, -1)])
                    / (2.0 * dy);
                let source = entropy_production(&g.cells[idx], eos, g_modulus, xi)?;
                worst = worst.max((ddt + dqx + dqy - source).abs());
            }
        }
        series.push(worst);
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SquareMatrix;
    use crate::multid::flux::flux;
    use crate::multid::state::{primitive_to_conserved, sample_in_domain, PrimitiveStateMD};
    use crate::rng::SplitMix64;

    fn unit_eos() -> Eos {
        Eos::isothermal(1.0).unwrap()
    }

    fn uniform_grid(a: SquareMatrix) -> Grid2 {
        Grid2::from_primitive_fn(4, 4, 1.0, 1.0, |_, _| {
            PrimitiveStateMD::new(1.0, [0.0; 3], SquareMatrix::identity(2), a)
        })
        .unwrap()
    }

    #[test]
    fn flux_compatibility_identity_modulo_involution() {
        // DQ_j = Dη̂·DG_j by central differences at random in-domain states.
        // The ρF flux was reduced with div(ρFᵀ) = 0, so the identity holds
        // only modulo the involution: for the j-direction flux, variations of
        // row j of ρF are constrained (plane-wave variations along e_j keep
        // ∂_j(ρF_{jα}) = 0), and on those slots an O(1) defect is expected.
        // All unconstrained slots must satisfy the identity to FD accuracy.
        let eos = unit_eos();
        let gm = 1.3;
        let mut rng = SplitMix64::new(9);
        for _ in 0..30 {
            let p = sample_in_domain(&mut rng, 2);
            let c = primitive_to_conserved(&p);
            let n = c.n_comp();
            // Dη̂ = Dη + G(ln ρ + 1)·e_ρ.
            let mut grad = grad_eta(&c, &eos, gm).unwrap();
            let rho = c.rho();
            grad.as_mut_slice()[0] += gm * (rho.ln() + 1.0);
            for dir in 0..2usize {
                for k in 0..n {
                    let b_base = 1 + 2;
                    let constrained = (b_base..b_base + 4).contains(&k) && (k - b_base) / 2 == dir;
                    if constrained {
                        continue;
                    }
                    let h = 1e-6 * c.as_slice()[k].abs().max(1.0);
                    let mut up = c;
                    up.as_mut_slice()[k] += h;
                    let mut dn = c;
                    dn.as_mut_slice()[k] -= h;
                    let dq = (entropy_flux(&up, dir, &eos, gm).unwrap()
                        - entropy_flux(&dn, dir, &eos, gm).unwrap())
                        / (2.0 * h);
                    let gu = flux(&up, dir, &eos, gm).unwrap();
                    let gd = flux(&dn, dir, &eos, gm).unwrap();
                    let mut dot = 0.0;
                    for r in 0..n {
                        dot +=
                            grad.as_slice()[r] * (gu.as_slice()[r] - gd.as_slice()[r]) / (2.0 * h);
                    }
                    assert!(
                        (dq - dot).abs() <= 1e-7,
                        "slot {k} dir {dir}: dQ = {dq}, Dη̂·dG = {dot}"
                    );
                }
            }
        }
    }

    #[test]
    fn uniform_equilibrium_has_zero_residual() {
        let snaps = vec![
            uniform_grid(SquareMatrix::identity(2)),
            uniform_grid(SquareMatrix::identity(2)),
            uniform_grid(SquareMatrix::identity(2)),
        ];
        let r = entropy_balance_residual(&snaps, &[0.0, 0.1, 0.2], &unit_eos(), 1.0, 0.5).unwrap();
        assert!(r[0] <= 1e-12, "residual {}", r[0]);
    }

    #[test]
    fn uniform_relaxation_matches_pointwise_ode() {
        // u = 0 uniform, A ≠ A_eq: snapshots of the exact relaxation
        // A(t) = I + δ·e^{−ξt}; ρ is constant so the ln ρ term drops out and
        // the centered residual must match dη/dt = ξ·Dη·Π up to the
        // O((ξh)²) truncation ≤ 1e−8.
        let eos = unit_eos();
        let xi = 0.5;
        let h = 1e-3;
        let a_at = |t: f64| {
            let decay = (-xi * t).exp();
            SquareMatrix::from_rows_2(
                [1.0 + 0.1 * decay, 0.02 * decay],
                [0.02 * decay, 1.0 - 0.05 * decay],
            )
        };
        let t0 = 0.4;
        let snaps = vec![
            uniform_grid(a_at(t0 - h)),
            uniform_grid(a_at(t0)),
            uniform_grid(a_at(t0 + h)),
        ];
        let r = entropy_balance_residual(&snaps, &[t0 - h, t0, t0 + h], &eos, 1.0, xi).unwrap();
        assert!(r[0] <= 1e-8, "residual {}", r[0]);
    }

    #[test]
    fn entropy_flux_zero_at_rest() {
        let c = primitive_to_conserved(&PrimitiveStateMD::reference(2));
        assert_eq!(entropy_flux(&c, 0, &unit_eos(), 1.0).unwrap(), 0.0);
        assert_eq!(entropy_flux(&c, 1, &unit_eos(), 1.0).unwrap(), 0.0);
    }
}
