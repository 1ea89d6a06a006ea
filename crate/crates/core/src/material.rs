//! Material parameters, equation of state and the neo-Hookean extra-stress.
//!
//! The relaxation frequency ξ = 1/λ is the stored parameter so that the
//! elastic regime sits at the interior point ξ = 0. The viscosity μ̇ = G/ξ is
//! always derived, never stored, so λ ≡ μ̇/G holds by construction.

use crate::error::{CoreError, Result};
use crate::linalg::SquareMatrix;

/// Equation of state for the isothermal pressure law.
///
/// The stored energy per unit mass is e₀(ν) = −c₀² ln ν with ν = 1/ρ, which
/// is strictly convex in ν on ν > 0 and gives p(ρ) = −de₀/dν = c₀²ρ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Eos {
    Isothermal { c0: f64 },
}

impl Eos {
    pub fn isothermal(c0: f64) -> Result<Self> {
        if !(c0 > 0.0) {
            return Err(CoreError::Domain(format!("c0 must be > 0, got {c0}")));
        }
        Ok(Eos::Isothermal { c0 })
    }

    /// Tag recorded in run manifests so results are comparable like for like.
    pub fn kind(&self) -> &'static str {
        match self {
            Eos::Isothermal { .. } => "isothermal",
        }
    }

    /// Specific stored energy e₀(ν), ν = 1/ρ.
    pub fn e0(&self, nu: f64) -> f64 {
        match self {
            Eos::Isothermal { c0 } => -c0 * c0 * nu.ln(),
        }
    }

    /// de₀/dν.
    pub fn de0_dnu(&self, nu: f64) -> f64 {
        match self {
            Eos::Isothermal { c0 } => -c0 * c0 / nu,
        }
    }

    /// d²e₀/dν².
    pub fn d2e0_dnu2(&self, nu: f64) -> f64 {
        match self {
            Eos::Isothermal { c0 } => c0 * c0 / (nu * nu),
        }
    }

    /// p(ρ) = −e₀′(ν)|_{ν=1/ρ}.
    pub fn pressure(&self, rho: f64) -> f64 {
        match self {
            Eos::Isothermal { c0 } => c0 * c0 * rho,
        }
    }

    /// dp/dρ (squared acoustic speed).
    pub fn dp_drho(&self, _rho: f64) -> f64 {
        match self {
            Eos::Isothermal { c0 } => c0 * c0,
        }
    }
}

/// Pressure from the equation of state. Errors on non-positive density.
pub fn eos_pressure(eos: &Eos, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(CoreError::Domain(format!("density must be > 0, got {rho}")));
    }
    Ok(eos.pressure(rho))
}

/// Shear modulus, relaxation frequency and acoustic speed parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaterialParams {
    /// Shear modulus G > 0.
    pub g: f64,
    /// Relaxation frequency ξ = 1/λ ≥ 0; ξ = 0 is the elastic regime.
    pub xi: f64,
    /// Acoustic speed parameter of the equation of state.
    pub c0: f64,
}

impl MaterialParams {
    pub fn new(g: f64, xi: f64, c0: f64) -> Result<Self> {
        if !(g > 0.0) {
            return Err(CoreError::Domain(format!("G must be > 0, got {g}")));
        }
        if !(xi >= 0.0) {
            return Err(CoreError::Domain(format!("xi must be >= 0, got {xi}")));
        }
        if !(c0 > 0.0) {
            return Err(CoreError::Domain(format!("c0 must be > 0, got {c0}")));
        }
        Ok(Self { g, xi, c0 })
    }

    /// Viscosity μ̇ = G/ξ; infinite in the elastic regime ξ = 0.
    pub fn mu_dot(&self) -> f64 {
        self.g / self.xi
    }

    /// Relaxation time λ = 1/ξ; infinite in the elastic regime.
    pub fn lambda(&self) -> f64 {
        1.0 / self.xi
    }

    pub fn eos(&self) -> Eos {
        Eos::Isothermal { c0: self.c0 }
    }

    /// Replace ξ, keeping G and c₀.
    pub fn with_xi(&self, xi: f64) -> Result<Self> {
        Self::new(self.g, xi, self.c0)
    }
}

/// Neo-Hookean extra-stress τ = ρG(FAFᵀ − I).
///
/// When A is bitwise symmetric the result is assembled from its upper
/// triangle so τ = τᵀ holds bitwise as well.
pub fn neo_hookean_stress(
    rho: f64,
    f: &SquareMatrix,
    a: &SquareMatrix,
    g: f64,
) -> Result<SquareMatrix> {
    if !(rho > 0.0) {
        return Err(CoreError::Domain(format!("density must be > 0, got {rho}")));
    }
    let d = f.dim();
    debug_assert_eq!(a.dim(), d);
    let m = faft(f, a);
    let mut tau = SquareMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let delta = if i == j { 1.0 } else { 0.0 };
            tau.set(i, j, rho * g * (m.get(i, j) - delta));
        }
    }
    Ok(tau)
}

/// M·Mᵀ with bitwise-symmetric output.
pub(crate) fn mmt(m: &SquareMatrix) -> SquareMatrix {
    let d = m.dim();
    let mut out = SquareMatrix::zeros(d);
    for i in 0..d {
        for j in i..d {
            let mut s = 0.0;
            for k in 0..d {
                s += m.get(i, k) * m.get(j, k);
            }
            out.set(i, j, s);
            out.set(j, i, s);
        }
    }
    out
}

/// F·A·Fᵀ with bitwise-symmetric output for bitwise-symmetric A.
pub(crate) fn faft(f: &SquareMatrix, a: &SquareMatrix) -> SquareMatrix {
    let d = f.dim();
    let entry = |i: usize, j: usize| -> f64 {
        let mut s = 0.0;
        for k in 0..d {
            for l in 0..d {
                s += f.get(i, k) * a.get(k, l) * f.get(j, l);
            }
        }
        s
    };
    let mut m = SquareMatrix::zeros(d);
    if a.is_symmetric_exact() {
        for i in 0..d {
            for j in i..d {
                let v = entry(i, j);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
    } else {
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, entry(i, j));
            }
        }
    }
    m
}
