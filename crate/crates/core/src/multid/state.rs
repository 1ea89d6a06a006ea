//! Pointwise state representations and the conserved/primitive maps.

use crate::error::{CoreError, Result};
use crate::linalg::SquareMatrix;

/// Fixed capacity for up to d = 3: 1 + 3 + 9 + 9.
pub const MAX_COMPONENTS: usize = 22;

/// Pointwise primitive state (ρ, u, F, A).
#[derive(Clone, Copy, Debug)]
pub struct PrimitiveStateMD {
    pub rho: f64,
    pub u: [f64; 3],
    pub f: SquareMatrix,
    pub a: SquareMatrix,
}

impl PrimitiveStateMD {
    pub fn new(rho: f64, u: [f64; 3], f: SquareMatrix, a: SquareMatrix) -> Self {
        debug_assert_eq!(f.dim(), a.dim());
        Self { rho, u, f, a }
    }

    /// Reference state ρ = 1, u = 0, F = A = I.
    pub fn reference(dim: usize) -> Self {
        Self::new(
            1.0,
            [0.0; 3],
            SquareMatrix::identity(dim),
            SquareMatrix::identity(dim),
        )
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    /// Strict membership in the hyperbolicity domain:
    /// ρ > 0, det F > 0, A symmetric positive definite.
    pub fn in_domain(&self) -> bool {
        self.rho > 0.0
            && self.f.det() > 0.0
            && (self.a - self.a.transpose()).max_abs() <= 1e-12 * self.a.max_abs().max(1.0)
            && self.a.min_sym_eigenvalue() > 0.0
    }
}

/// Conserved vector U = (ρ, ρu, ρF, ρA); ρF and ρA stored row-major, ρA as
/// a full d×d block with symmetry enforced by the stepper. The number of
/// independent components is 1 + d + d² + d(d+1)/2.
#[derive(Clone, Copy, Debug)]
pub struct Conserved {
    dim: usize,
    data: [f64; MAX_COMPONENTS],
}

impl Conserved {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=3).contains(&dim));
        Self {
            dim,
            data: [0.0; MAX_COMPONENTS],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored slots: 1 + d + 2d².
    pub fn n_comp(&self) -> usize {
        n_comp(self.dim)
    }

    /// Number of independent components: 1 + d + d² + d(d+1)/2.
    pub fn n_independent(&self) -> usize {
        let d = self.dim;
        1 + d + d * d + d * (d + 1) / 2
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.n_comp()]
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        let n = self.n_comp();
        &mut self.data[..n]
    }

    pub fn from_slice(dim: usize, values: &[f64]) -> Self {
        let mut c = Self::zeros(dim);
        assert_eq!(values.len(), c.n_comp());
        c.as_mut_slice().copy_from_slice(values);
        c
    }

    #[inline]
    pub fn rho(&self) -> f64 {
        self.data[0]
    }

    #[inline]
    pub fn set_rho(&mut self, v: f64) {
        self.data[0] = v;
    }

    #[inline]
    pub fn momentum(&self, i: usize) -> f64 {
        self.data[1 + i]
    }

    #[inline]
    pub fn set_momentum(&mut self, i: usize, v: f64) {
        self.data[1 + i] = v;
    }

    #[inline]
    fn rf_base(&self) -> usize {
        1 + self.dim
    }

    #[inline]
    fn ra_base(&self) -> usize {
        1 + self.dim + self.dim * self.dim
    }

    /// (ρF)_{iα}.
    #[inline]
    pub fn rho_f(&self, i: usize, alpha: usize) -> f64 {
        self.data[self.rf_base() + i * self.dim + alpha]
    }

    #[inline]
    pub fn set_rho_f(&mut self, i: usize, alpha: usize, v: f64) {
        let k = self.rf_base() + i * self.dim + alpha;
        self.data[k] = v;
    }

    /// (ρA)_{αβ}.
    #[inline]
    pub fn rho_a(&self, alpha: usize, beta: usize) -> f64 {
        self.data[self.ra_base() + alpha * self.dim + beta]
    }

    #[inline]
    pub fn set_rho_a(&mut self, alpha: usize, beta: usize, v: f64) {
        let k = self.ra_base() + alpha * self.dim + beta;
        self.data[k] = v;
    }

    /// Average the ρA block with its transpose in place.
    pub fn symmetrize_ra(&mut self) {
        for a in 0..self.dim {
            for b in (a + 1)..self.dim {
                let v = 0.5 * (self.rho_a(a, b) + self.rho_a(b, a));
                self.set_rho_a(a, b, v);
                self.set_rho_a(b, a, v);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Conserved, s: f64) {
        debug_assert_eq!(self.dim, other.dim);
        for k in 0..self.n_comp() {
            self.data[k] += s * other.data[k];
        }
    }

    /// Euclidean norm over the stored slots.
    pub fn norm(&self) -> f64 {
        self.as_slice().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|v| v.is_finite())
    }
}

pub fn n_comp(dim: usize) -> usize {
    1 + dim + 2 * dim * dim
}

/// U = (ρ, ρu, ρF, ρA).
pub fn primitive_to_conserved(p: &PrimitiveStateMD) -> Conserved {
    let d = p.dim();
    let mut c = Conserved::zeros(d);
    c.set_rho(p.rho);
    for i in 0..d {
        c.set_momentum(i, p.rho * p.u[i]);
        for j in 0..d {
            c.set_rho_f(i, j, p.rho * p.f.get(i, j));
            c.set_rho_a(i, j, p.rho * p.a.get(i, j));
        }
    }
    c
}

/// Inverse map; divides by ρ and re-symmetrizes A. Errors on ρ ≤ 0.
pub fn conserved_to_primitive(c: &Conserved) -> Result<PrimitiveStateMD> {
    let rho = c.rho();
    if !(rho > 0.0) {
        return Err(CoreError::Domain(format!(
            "conserved state has rho = {rho} <= 0"
        )));
    }
    let d = c.dim();
    let mut u = [0.0; 3];
    for (i, slot) in u.iter_mut().enumerate().take(d) {
        *slot = c.momentum(i) / rho;
    }
    let f = SquareMatrix::from_fn(d, |i, j| c.rho_f(i, j) / rho);
    let a_raw = SquareMatrix::from_fn(d, |i, j| c.rho_a(i, j) / rho);
    Ok(PrimitiveStateMD::new(rho, u, f, a_raw.sym_part()))
}

/// Draw a state from the standard in-domain sampling box:
/// ρ ∈ [0.6, 1.6], |u_i| ≤ 0.5, F = I ± 0.3 entrywise with det F > 0.25,
/// A = I ± 0.25 symmetric with min eigenvalue > 0.25.
///
/// Used by the seeded invariant checks; the rejection loop terminates fast
/// because most draws land inside the box.
pub fn sample_in_domain(rng: &mut crate::rng::SplitMix64, dim: usize) -> PrimitiveStateMD {
    loop {
        let rho = rng.range(0.6, 1.6);
        let mut u = [0.0; 3];
        for slot in u.iter_mut().take(dim) {
            *slot = rng.range(-0.5, 0.5);
        }
        let f = SquareMatrix::from_fn(dim, |i, j| {
            rng.range(-0.3, 0.3) + if i == j { 1.0 } else { 0.0 }
        });
        let mut a = SquareMatrix::identity(dim);
        for i in 0..dim {
            for j in 0..=i {
                let v = rng.range(-0.25, 0.25) + if i == j { 1.0 } else { 0.0 };
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        let s = PrimitiveStateMD::new(rho, u, f, a);
        if s.f.det() > 0.25 && s.a.min_sym_eigenvalue() > 0.25 {
            return s;
        }
    }
}

/// Grid-level hyperbolicity summary.
#[derive(Clone, Copy, Debug)]
pub struct HyperbolicityReport {
    pub min_rho: f64,
    pub min_det_f: f64,
    pub min_eig_a: f64,
    pub in_domain: bool,
}

impl HyperbolicityReport {
    pub fn from_states<'a>(states: impl Iterator<Item = &'a Conserved>) -> Self {
        let mut min_rho = f64::INFINITY;
        let mut min_det_f = f64::INFINITY;
        let mut min_eig_a = f64::INFINITY;
        for c in states {
            let rho = c.rho();
            min_rho = min_rho.min(rho);
            if rho > 0.0 {
                let d = c.dim();
                let f = SquareMatrix::from_fn(d, |i, j| c.rho_f(i, j) / rho);
                let a = SquareMatrix::from_fn(d, |i, j| c.rho_a(i, j) / rho).sym_part();
                min_det_f = min_det_f.min(f.det());
                min_eig_a = min_eig_a.min(a.min_sym_eigenvalue());
            } else {
                min_det_f = f64::NEG_INFINITY;
                min_eig_a = f64::NEG_INFINITY;
            }
        }
        let in_domain = min_rho > 0.0 && min_det_f > 0.0 && min_eig_a > 0.0;
        Self {
            min_rho,
            min_det_f,
            min_eig_a,
            in_domain,
        }
    }
}
