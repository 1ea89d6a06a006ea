//! Boundary conditions for the 1D shear system.
//!
//! At each boundary one relation cᵘu + cᵗτ = g(t) is imposed. The incoming
//! characteristic (w⁻ at the left boundary, w⁺ at the right) is reconstructed
//! from the outgoing one and the relation. The dissipative sign classes are
//! cᵘcᵗ < 0 on the left and cᵘcᵗ > 0 on the right; they guarantee the
//! reflection coefficient has modulus < 1, so homogeneous data cannot
//! increase the energy. The Dirichlet velocity condition (cᵘ, cᵗ) = (1, 0)
//! sits outside those sign classes and is admitted as its own kind for
//! impulsively started wall flows.

use crate::error::{CoreError, Result};
use std::fmt;
use std::sync::Arc;

/// Which boundary a spec applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Kind of boundary relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcKind {
    Dissipative,
    DirichletVelocity,
    Periodic,
}

/// Boundary data g(t).
#[derive(Clone)]
pub enum BoundaryData {
    Zero,
    Const(f64),
    /// U·H(t), zero at t ≤ 0.
    Heaviside(f64),
    Func(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl BoundaryData {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            BoundaryData::Zero => 0.0,
            BoundaryData::Const(v) => *v,
            BoundaryData::Heaviside(u) => {
                if t > 0.0 {
                    *u
                } else {
                    0.0
                }
            }
            BoundaryData::Func(f) => f(t),
        }
    }
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryData::Zero => write!(f, "Zero"),
            BoundaryData::Const(v) => write!(f, "Const({v})"),
            BoundaryData::Heaviside(u) => write!(f, "Heaviside({u})"),
            BoundaryData::Func(_) => write!(f, "Func(..)"),
        }
    }
}

/// One boundary: coefficients (cᵘ, cᵗ), data g and kind.
#[derive(Clone, Debug)]
pub struct BoundarySpec {
    pub side: Side,
    pub kind: BcKind,
    pub c_u: f64,
    pub c_tau: f64,
    pub g: BoundaryData,
}

impl BoundarySpec {
    /// Maximally dissipative boundary. Checks the sign class for the side
    /// and that the relation determines the incoming characteristic
    /// (left: cᵘ ≠ √G·cᵗ, right: cᵘ ≠ −√G·cᵗ).
    pub fn dissipative(
        side: Side,
        c_u: f64,
        c_tau: f64,
        g: BoundaryData,
        g_modulus: f64,
    ) -> Result<Self> {
        let prod = c_u * c_tau;
        match side {
            Side::Left if !(prod < 0.0) => {
                return Err(CoreError::Config(format!(
                    "left dissipative boundary needs c_u*c_tau < 0, got {c_u}*{c_tau}"
                )));
            }
            Side::Right if !(prod > 0.0) => {
                return Err(CoreError::Config(format!(
                    "right dissipative boundary needs c_u*c_tau > 0, got {c_u}*{c_tau}"
                )));
            }
            _ => {}
        }
        let spec = Self {
            side,
            kind: BcKind::Dissipative,
            c_u,
            c_tau,
            g,
        };
        spec.check_solvable(g_modulus)?;
        Ok(spec)
    }

    /// Dirichlet velocity u = g(t); (cᵘ, cᵗ) = (1, 0).
    pub fn dirichlet_velocity(side: Side, g: BoundaryData) -> Self {
        Self {
            side,
            kind: BcKind::DirichletVelocity,
            c_u: 1.0,
            c_tau: 0.0,
            g,
        }
    }

    pub fn periodic(side: Side) -> Self {
        Self {
            side,
            kind: BcKind::Periodic,
            c_u: 0.0,
            c_tau: 0.0,
            g: BoundaryData::Zero,
        }
    }

    /// The denominator of the incoming-characteristic reconstruction.
    fn denominator(&self, g_modulus: f64) -> f64 {
        let sg = g_modulus.sqrt();
        match self.side {
            Side::Left => sg * self.c_tau - self.c_u,
            Side::Right => self.c_u + sg * self.c_tau,
        }
    }

    /// Errors when the relation is (numerically) proportional to the
    /// outgoing characteristic and cannot determine the incoming one.
    pub fn check_solvable(&self, g_modulus: f64) -> Result<()> {
        if self.kind == BcKind::Periodic {
            return Ok(());
        }
        let den = self.denominator(g_modulus);
        let scale = self.c_u.abs().max(g_modulus.sqrt() * self.c_tau.abs());
        if den.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(CoreError::SingularBoundary(format!(
                "boundary relation with (c_u, c_tau) = ({}, {}) cannot determine the \
                 incoming characteristic for G = {g_modulus}",
                self.c_u, self.c_tau
            )));
        }
        Ok(())
    }

    /// Incoming characteristic value from the outgoing trace and g.
    ///
    /// Left boundary: returns w⁻ from w⁺; right boundary: w⁺ from w⁻. Both
    /// follow from cᵘu + cᵗτ = g with u = (w⁺ − w⁻)/(2√G), τ = (w⁺ + w⁻)/2.
    pub fn incoming(&self, outgoing: f64, g_value: f64, g_modulus: f64) -> Result<f64> {
        let sg = g_modulus.sqrt();
        match self.kind {
            BcKind::Periodic => Err(CoreError::Config(
                "periodic boundaries have no local reconstruction".into(),
            )),
            BcKind::DirichletVelocity => Ok(match self.side {
                Side::Left => outgoing - 2.0 * sg * g_value,
                Side::Right => outgoing + 2.0 * sg * g_value,
            }),
            BcKind::Dissipative => {
                self.check_solvable(g_modulus)?;
                let den = self.denominator(g_modulus);
                Ok(match self.side {
                    Side::Left => {
                        (2.0 * sg * g_value - (self.c_u + sg * self.c_tau) * outgoing) / den
                    }
                    Side::Right => {
                        (2.0 * sg * g_value + (self.c_u - sg * self.c_tau) * outgoing) / den
                    }
                })
            }
        }
    }

    /// Reflection coefficient for homogeneous data (incoming = R·outgoing).
    pub fn reflection(&self, g_modulus: f64) -> Result<f64> {
        self.incoming(1.0, 0.0, g_modulus)
    }
}
