//! Relative entropy between two grids and the quadratic Taylor remainder.

use crate::error::{CoreError, Result};
use crate::linalg::compensated_sum;
use crate::material::Eos;
use crate::multid::grid::Grid2;
use crate::multid::state::Conserved;

use super::eval::{eta, grad_eta, hess_eta};

/// Integrated relative entropy, the L² difference and empirical
/// norm-equivalence constants over the encountered states.
#[derive(Clone, Copy, Debug)]
pub struct RelEntropyReport {
    /// ∫ [η(U₁) − η(U₂) − Dη(U₂)·(U₁ − U₂)].
    pub rel_entropy: f64,
    /// ‖U₁ − U₂‖_{L²} over the stored slots.
    pub l2_diff: f64,
    /// Smallest cellwise ratio (relative entropy density)/|ΔU|².
    pub a_lower: f64,
    /// Largest cellwise ratio.
    pub a_upper: f64,
}

/// Cellwise η(U₁) − η(U₂) − Dη(U₂)·(U₁ − U₂), integrated by the midpoint
/// rule. The cellwise ratio extremes certify a_lower·l2² ≤ RE ≤ a_upper·l2²
/// for this pair; a_lower can be negative since η is not convex in the
/// conformation slots.
pub fn relative_entropy(
    grid1: &Grid2,
    grid2: &Grid2,
    eos: &Eos,
    g_modulus: f64,
) -> Result<RelEntropyReport> {
    if grid1.nx != grid2.nx || grid1.ny != grid2.ny || grid1.dim() != grid2.dim() {
        return Err(CoreError::Config("relative_entropy: grid mismatch".into()));
    }
    let n_cells = grid1.cells.len();
    let mut density = Vec::with_capacity(n_cells);
    let mut diff2 = Vec::with_capacity(n_cells);
    let mut a_lower = f64::INFINITY;
    let mut a_upper = f64::NEG_INFINITY;
    let floor = {
        // Ratio cutoff: ignore cells whose difference is at rounding level.
        let scale: f64 = grid2.cells[0].norm();
        (1e-14 * scale.max(1.0)).powi(2)
    };
    for (c1, c2) in grid1.cells.iter().zip(&grid2.cells) {
        let e1 = eta(c1, eos, g_modulus)?;
        let e2 = eta(c2, eos, g_modulus)?;
        let g2 = grad_eta(c2, eos, g_modulus)?;
        let mut dot = 0.0;
        let mut d2 = 0.0;
        for k in 0..c1.n_comp() {
            let dk = c1.as_slice()[k] - c2.as_slice()[k];
            dot += g2.as_slice()[k] * dk;
            d2 += dk * dk;
        }
        let re = e1 - e2 - dot;
        density.push(re);
        diff2.push(d2);
        if d2 > floor {
            let ratio = re / d2;
            a_lower = a_lower.min(ratio);
            a_upper = a_upper.max(ratio);
        }
    }
    let area = grid1.cell_area();
    let rel_entropy = area * compensated_sum(density.iter().copied());
    let l2_diff = (area * compensated_sum(diff2.iter().copied())).sqrt();
    if !a_lower.is_finite() {
        // Identical grids: no informative ratio.
        a_lower = 0.0;
        a_upper = 0.0;
    }
    Ok(RelEntropyReport {
        rel_entropy,
        l2_diff,
        a_lower,
        a_upper,
    })
}

/// Z(U₁, U₂) = Dη(U₁) − Dη(U₂) − D²η(U₂)·(U₁ − U₂).
///
/// The first-order Taylor remainder of the gradient: quadratically small in
/// U₁ − U₂ on in-domain neighborhoods.
pub fn taylor_remainder_z(
    u1: &Conserved,
    u2: &Conserved,
    eos: &Eos,
    g_modulus: f64,
) -> Result<Conserved> {
    if u1.dim() != u2.dim() {
        return Err(CoreError::Config("taylor_remainder_z: dim mismatch".into()));
    }
    let n = u1.n_comp();
    let g1 = grad_eta(u1, eos, g_modulus)?;
    let g2 = grad_eta(u2, eos, g_modulus)?;
    let h2 = hess_eta(u2, eos, g_modulus)?;
    let mut z = Conserved::zeros(u1.dim());
    for r in 0..n {
        let mut hv = 0.0;
        for k in 0..n {
            hv += h2[r * n + k] * (u1.as_slice()[k] - u2.as_slice()[k]);
        }
        z.as_mut_slice()[r] = g1.as_slice()[r] - g2.as_slice()[r] - hv;
    }
    Ok(z)
}
