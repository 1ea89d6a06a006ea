//! Discrete (u, τ) fields on a uniform 1D grid of cell averages.

use crate::error::{CoreError, Result};

/// Velocity and shear stress per cell on a uniform grid.
#[derive(Clone, Debug)]
pub struct ShearState1D {
    pub y_min: f64,
    pub y_max: f64,
    pub u: Vec<f64>,
    pub tau: Vec<f64>,
    /// Current time.
    pub t: f64,
}

impl ShearState1D {
    pub fn new(y_min: f64, y_max: f64, u: Vec<f64>, tau: Vec<f64>) -> Result<Self> {
        if !(y_max > y_min) {
            return Err(CoreError::Config(format!(
                "domain must satisfy y_max > y_min, got [{y_min}, {y_max}]"
            )));
        }
        if u.is_empty() || u.len() != tau.len() {
            return Err(CoreError::Config(format!(
                "u and tau must have the same nonzero length, got {} and {}",
                u.len(),
                tau.len()
            )));
        }
        if u.iter().chain(tau.iter()).any(|v| !v.is_finite()) {
            return Err(CoreError::NonFinite("initial fields".into()));
        }
        Ok(Self {
            y_min,
            y_max,
            u,
            tau,
            t: 0.0,
        })
    }

    /// Sample profiles at cell centers y_i = y_min + (i + 1/2)Δy.
    pub fn from_profiles(
        y_min: f64,
        y_max: f64,
        n: usize,
        u0: impl Fn(f64) -> f64 + Copy,
        tau0: impl Fn(f64) -> f64 + Copy,
    ) -> Result<Self> {
        let dy = (y_max - y_min) / n as f64;
        let centers = (0..n).map(|i| y_min + (i as f64 + 0.5) * dy);
        let u = centers.clone().map(&u0).collect();
        let tau = centers.map(&tau0).collect();
        Self::new(y_min, y_max, u, tau)
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.n() as f64
    }

    /// Cell-center coordinate of cell i.
    pub fn cell_center(&self, i: usize) -> f64 {
        self.y_min + (i as f64 + 0.5) * self.dy()
    }

    /// Riemann variables (w⁺, w⁻) = (τ + √G·u, τ − √G·u) cellwise.
    pub fn to_riemann(&self, g_modulus: f64) -> (Vec<f64>, Vec<f64>) {
        let sg = g_modulus.sqrt();
        let w_plus = self
            .tau
            .iter()
            .zip(&self.u)
            .map(|(&t, &u)| t + sg * u)
            .collect();
        let w_minus = self
            .tau
            .iter()
            .zip(&self.u)
            .map(|(&t, &u)| t - sg * u)
            .collect();
        (w_plus, w_minus)
    }

    /// Rebuild (u, τ) from Riemann variables on the same grid.
    pub fn from_riemann(
        y_min: f64,
        y_max: f64,
        w_plus: &[f64],
        w_minus: &[f64],
        g_modulus: f64,
        t: f64,
    ) -> Result<Self> {
        let sg = g_modulus.sqrt();
        let u = w_plus
            .iter()
            .zip(w_minus)
            .map(|(&p, &m)| (p - m) / (2.0 * sg))
            .collect();
        let tau = w_plus
            .iter()
            .zip(w_minus)
            .map(|(&p, &m)| 0.5 * (p + m))
            .collect();
        let mut s = Self::new(y_min, y_max, u, tau)?;
        s.t = t;
        Ok(s)
    }

    /// L² norm of the (u, τ) pair: √(Δy Σ(u² + τ²)).
    pub fn l2_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.n(), other.n());
        let dy = self.dy();
        let s: f64 = self
            .u
            .iter()
            .zip(&other.u)
            .map(|(&a, &b)| (a - b) * (a - b))
            .chain(
                self.tau
                    .iter()
                    .zip(&other.tau)
                    .map(|(&a, &b)| (a - b) * (a - b)),
            )
            .sum();
        (dy * s).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riemann_values() {
        // (u=1, τ=2, G=4) → w± = 2 ± 2·1 = (4, 0).
        let s = ShearState1D::new(0.0, 1.0, vec![1.0], vec![2.0]).unwrap();
        let (wp, wm) = s.to_riemann(4.0);
        assert_eq!(wp[0], 4.0);
        assert_eq!(wm[0], 0.0);

        // At rest: w⁺ = w⁻ = τ₀.
        let r = ShearState1D::new(0.0, 1.0, vec![0.0], vec![3.5]).unwrap();
        let (wp, wm) = r.to_riemann(2.0);
        assert_eq!(wp[0], 3.5);
        assert_eq!(wm[0], 3.5);

        // Pure velocity: (u=3, τ=0, G=1) → (3, −3).
        let v = ShearState1D::new(0.0, 1.0, vec![3.0], vec![0.0]).unwrap();
        let (wp, wm) = v.to_riemann(1.0);
        assert_eq!(wp[0], 3.0);
        assert_eq!(wm[0], -3.0);
    }

    #[test]
    fn riemann_round_trip() {
        let g = 2.7;
        let s = ShearState1D::from_profiles(
            -1.0,
            3.0,
            64,
            |y| (2.0 * y).sin(),
            |y| 0.3 * y.cos() - 0.1,
        )
        .unwrap();
        let (wp, wm) = s.to_riemann(g);
        let back = ShearState1D::from_riemann(-1.0, 3.0, &wp, &wm, g, s.t).unwrap();
        for i in 0..s.n() {
            let scale = s.u[i].abs().max(s.tau[i].abs()).max(1.0);
            assert!((back.u[i] - s.u[i]).abs() <= 1e-14 * scale);
            assert!((back.tau[i] - s.tau[i]).abs() <= 1e-14 * scale);
        }
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(ShearState1D::new(1.0, 0.0, vec![0.0], vec![0.0]).is_err());
        assert!(ShearState1D::new(0.0, 1.0, vec![0.0, 1.0], vec![0.0]).is_err());
        assert!(ShearState1D::new(0.0, 1.0, vec![f64::NAN], vec![0.0]).is_err());
    }
}
