//! Small dense matrices (d ≤ 3) and a symmetric eigensolver.
//!
//! `SquareMatrix` stores d×d values in a fixed 3×3 backing array; for the
//! deformation gradient F the row index is spatial and the column index is
//! material. Symmetric tensors (A, τ) use the same type with full storage.

use crate::error::{CoreError, Result};
use std::ops::{Add, Mul, Sub};

/// Dense d×d matrix, d ∈ {1, 2, 3}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    a: [[f64; 3]; 3],
}

impl SquareMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=3).contains(&dim), "dimension must be 1, 2 or 3");
        Self {
            dim,
            a: [[0.0; 3]; 3],
        }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.a[i][i] = 1.0;
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.a[i][i] = v;
        }
        m
    }

    /// Build from a row-major closure.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.a[i][j] = f(i, j);
            }
        }
        m
    }

    /// 2×2 matrix from rows.
    pub fn from_rows_2(r0: [f64; 2], r1: [f64; 2]) -> Self {
        Self::from_fn(2, |i, j| [[r0[0], r0[1]], [r1[0], r1[1]]][i][j])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.dim && j < self.dim);
        self.a[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.dim && j < self.dim);
        self.a[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.a[j][i])
    }

    /// Frobenius inner product A : B = Σᵢⱼ AᵢⱼBᵢⱼ.
    pub fn frobenius_dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += self.a[i][j] * other.a[i][j];
            }
        }
        s
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_dot(self).sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                m = m.max(self.a[i][j].abs());
            }
        }
        m
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.a[i][i]).sum()
    }

    pub fn det(&self) -> f64 {
        let a = &self.a;
        match self.dim {
            1 => a[0][0],
            2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
            3 => {
                a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                    - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                    + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
            }
            _ => unreachable!(),
        }
    }

    /// Inverse via the adjugate. Errors on zero determinant.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return Err(CoreError::Domain(format!(
                "matrix is singular (det = {det})"
            )));
        }
        let a = &self.a;
        let inv = match self.dim {
            1 => Self::from_fn(1, |_, _| 1.0 / det),
            2 => Self::from_fn(2, |i, j| {
                let adj = [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]];
                adj[i][j] / det
            }),
            3 => {
                let cof = |i: usize, j: usize| -> f64 {
                    let r = [(i + 1) % 3, (i + 2) % 3];
                    let c = [(j + 1) % 3, (j + 2) % 3];
                    a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
                };
                // adj(A)ᵢⱼ = cof(j, i)
                Self::from_fn(3, |i, j| cof(j, i) / det)
            }
            _ => unreachable!(),
        };
        Ok(inv)
    }

    /// (A + Aᵀ)/2.
    pub fn sym_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| 0.5 * (self.a[i][j] + self.a[j][i]))
    }

    /// Bitwise symmetry test.
    pub fn is_symmetric_exact(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.a[i][j] != self.a[j][i] {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(self.dim, |i, j| self.a[i][j] * s)
    }

    /// Eigenvalues of a symmetric matrix, ascending.
    pub fn sym_eigenvalues(&self) -> Vec<f64> {
        let n = self.dim;
        let mut flat = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                flat[i * n + j] = self.a[i][j];
            }
        }
        sym_eigenvalues(&flat, n)
    }

    /// Smallest eigenvalue of a symmetric matrix.
    pub fn min_sym_eigenvalue(&self) -> f64 {
        self.sym_eigenvalues()[0]
    }

    /// Largest eigenvalue of a symmetric matrix.
    pub fn max_sym_eigenvalue(&self) -> f64 {
        *self.sym_eigenvalues().last().unwrap()
    }
}

impl Mul for SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: SquareMatrix) -> SquareMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        SquareMatrix::from_fn(self.dim, |i, j| {
            let mut s = 0.0;
            for k in 0..self.dim {
                s += self.a[i][k] * rhs.a[k][j];
            }
            s
        })
    }
}

impl Add for SquareMatrix {
    type Output = SquareMatrix;
    fn add(self, rhs: SquareMatrix) -> SquareMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        SquareMatrix::from_fn(self.dim, |i, j| self.a[i][j] + rhs.a[i][j])
    }
}

impl Sub for SquareMatrix {
    type Output = SquareMatrix;
    fn sub(self, rhs: SquareMatrix) -> SquareMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        SquareMatrix::from_fn(self.dim, |i, j| self.a[i][j] - rhs.a[i][j])
    }
}

/// Eigenvalues of a symmetric n×n matrix (row-major, length n²), ascending.
///
/// Cyclic Jacobi rotations; converges quadratically for symmetric input.
/// Only the lower/upper symmetric part is trusted: the matrix is symmetrized
/// on entry.
pub fn sym_eigenvalues(matrix: &[f64], n: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), n * n);
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (matrix[i * n + j] + matrix[j * n + i]);
        }
    }
    if n == 1 {
        return vec![a[0]];
    }

    let norm: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let tol = 1e-15 * norm.max(f64::MIN_POSITIVE);

    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= tol / (n as f64) {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Neumaier-compensated sum in a fixed left-to-right order.
pub fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn inverse_round_trip_2d_3d() {
        let mut rng = SplitMix64::new(7);
        for dim in [1usize, 2, 3] {
            for _ in 0..200 {
                let m = SquareMatrix::from_fn(dim, |_, _| rng.range(-1.0, 1.0))
                    + SquareMatrix::identity(dim).scale(2.0);
                let inv = m.inverse().unwrap();
                let prod = m * inv;
                let err = (prod - SquareMatrix::identity(dim)).max_abs();
                assert!(err <= 1e-12, "dim {dim}: ‖M·M⁻¹ − I‖∞ = {err}");
            }
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = SquareMatrix::from_rows_2([1.0, 2.0], [2.0, 4.0]);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn determinant_and_trace() {
        let m = SquareMatrix::diagonal(&[2.0, 3.0, 4.0]);
        assert_eq!(m.det(), 24.0);
        assert_eq!(m.trace(), 9.0);
        let r = SquareMatrix::from_rows_2([1.0, 2.0], [3.0, 4.0]);
        assert_eq!(r.det(), -2.0);
    }

    #[test]
    fn frobenius_dot_matches_componentwise() {
        let a = SquareMatrix::from_rows_2([1.0, 2.0], [3.0, 4.0]);
        let b = SquareMatrix::from_rows_2([5.0, 6.0], [7.0, 8.0]);
        assert_eq!(a.frobenius_dot(&b), 5.0 + 12.0 + 21.0 + 32.0);
    }

    #[test]
    fn jacobi_eigenvalues_known_spectrum() {
        // diag(1, 2, 5) conjugated by a rotation keeps its spectrum.
        let c = 0.8f64;
        let s = 0.6f64;
        let rot =
            SquareMatrix::from_fn(3, |i, j| [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]][i][j]);
        let d = SquareMatrix::diagonal(&[1.0, 2.0, 5.0]);
        let m = rot * d * rot.transpose();
        let eig = m.sym_eigenvalues();
        for (got, want) in eig.iter().zip([1.0, 2.0, 5.0]) {
            assert!((got - want).abs() < 1e-12, "eig {got} vs {want}");
        }
    }

    #[test]
    fn jacobi_large_symmetric_random() {
        // Spectrum of QᵀDQ matches D for a random near-orthogonal congruence
        // built by Gram–Schmidt, n = 10.
        let n = 10;
        let mut rng = SplitMix64::new(99);
        // random symmetric matrix; compare Jacobi eigenvalue sum/trace and
        // sum of squares/Frobenius norm, which are exact invariants.
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = rng.range(-1.0, 1.0);
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        let eig = sym_eigenvalues(&m, n);
        let trace: f64 = (0..n).map(|i| m[i * n + i]).sum();
        let fro2: f64 = m.iter().map(|v| v * v).sum();
        let s1: f64 = eig.iter().sum();
        let s2: f64 = eig.iter().map(|v| v * v).sum();
        assert!((s1 - trace).abs() < 1e-10);
        assert!((s2 - fro2).abs() < 1e-9);
    }

    #[test]
    fn compensated_sum_handles_cancellation() {
        let vals = [1e16, 1.0, -1e16];
        assert_eq!(compensated_sum(vals.iter().copied()), 1.0);
    }
}
