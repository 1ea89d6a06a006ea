//! Standard initial fields for 2D runs and tests.

use crate::error::Result;
use crate::linalg::SquareMatrix;
use crate::material::mmt;
use crate::multid::grid::Grid2;
use crate::multid::state::PrimitiveStateMD;
use std::f64::consts::PI;

/// Smooth density wave at rest on the unit box:
/// ρ = 1 + amplitude·sin(2πx)sin(2πy), u = 0, F = I, A = I.
///
/// At relaxation equilibrium (A = F⁻¹F⁻ᵀ); note div(ρFᵀ) = ∇ρ ≠ 0, so the
/// involution monitor starts at an O(amplitude) level for this field.
pub fn density_wave_2d(nx: usize, ny: usize, amplitude: f64) -> Result<Grid2> {
    Grid2::from_primitive_fn(nx, ny, 1.0, 1.0, |x, y| {
        let rho = 1.0 + amplitude * (2.0 * PI * x).sin() * (2.0 * PI * y).sin();
        PrimitiveStateMD::new(
            rho,
            [0.0; 3],
            SquareMatrix::identity(2),
            SquareMatrix::identity(2),
        )
    })
}

/// Involution-compatible smooth field on the unit box.
///
/// Built from the inverse deformation X(x) = x − ε·a(x) with a smooth
/// periodic a: with M = ∇X, the combination ρF = det(M)·M⁻¹ = adj(M) is
/// divergence-free identically (cofactor rows of a gradient are), so the
/// grid violates the involution only through the centered-difference
/// truncation. The conformation starts at equilibrium A = (FᵀF)⁻¹ = M·Mᵀ
/// and the velocity is u = u_amp·(sin(2πy), sin(2πx)).
pub fn compatible_smooth_2d(nx: usize, ny: usize, eps: f64, u_amp: f64) -> Result<Grid2> {
    assert!(eps.abs() < 0.12, "eps must keep det(I − ε∇a) positive");
    Grid2::from_primitive_fn(nx, ny, 1.0, 1.0, |x, y| {
        let (sx, cx) = (2.0 * PI * x).sin_cos();
        let (sy, cy) = (2.0 * PI * y).sin_cos();
        let (sx2, cx2) = (4.0 * PI * x).sin_cos();
        let (sy2, cy2) = (4.0 * PI * y).sin_cos();
        // a = (sin(2πx)cos(4πy), cos(4πx)sin(2πy))/(2π); mixed wavenumbers
        // keep the discrete divergence test honest (no stencil-level
        // cancellation of the two terms).
        let g11 = cx * cy2;
        let g12 = -2.0 * sx * sy2;
        let g21 = -2.0 * sx2 * sy;
        let g22 = cx2 * cy;
        let m =
            SquareMatrix::from_rows_2([1.0 - eps * g11, -eps * g12], [-eps * g21, 1.0 - eps * g22]);
        let rho = m.det();
        let f = m.inverse().expect("det(I − ε∇a) > 0 by the eps bound");
        let a = mmt(&m);
        PrimitiveStateMD::new(rho, [u_amp * sy, u_amp * sx, 0.0], f, a)
    })
}

/// Involution-compatible field with the lowest wavenumber only.
///
/// Same construction as [`compatible_smooth_2d`] but with single 2π modes:
/// smoother, so coarse grids reach the asymptotic first-order regime sooner.
/// Used by the residual refinement studies. (Its discrete divergence cancels
/// at the stencil level, so it is useless as a Piola truncation oracle.)
pub fn compatible_gentle_2d(nx: usize, ny: usize, eps: f64, u_amp: f64) -> Result<Grid2> {
    assert!(eps.abs() < 0.25, "eps must keep det(I − ε∇a) positive");
    Grid2::from_primitive_fn(nx, ny, 1.0, 1.0, |x, y| {
        let (sx, cx) = (2.0 * PI * x).sin_cos();
        let (sy, cy) = (2.0 * PI * y).sin_cos();
        // a = (sin(2πx)cos(2πy), cos(2πx)sin(2πy))/(2π).
        let g11 = cx * cy;
        let g12 = -sx * sy;
        let g21 = -sx * sy;
        let g22 = cx * cy;
        let m =
            SquareMatrix::from_rows_2([1.0 - eps * g11, -eps * g12], [-eps * g21, 1.0 - eps * g22]);
        let rho = m.det();
        let f = m.inverse().expect("det(I − ε∇a) > 0 by the eps bound");
        let a = mmt(&m);
        PrimitiveStateMD::new(rho, [u_amp * sy, u_amp * sx, 0.0], f, a)
    })
}

/// Embed 1D shear profiles u = (u(y), 0), F = [[1, γ(y)], [0, 1]], ρ = 1
/// into a 2D grid (constant along x). A is supplied per y as well.
pub fn shear_embedding_2d(
    nx: usize,
    ny: usize,
    mut u_of_y: impl FnMut(f64) -> f64,
    mut gamma_of_y: impl FnMut(f64) -> f64,
    mut a_of_y: impl FnMut(f64) -> SquareMatrix,
) -> Result<Grid2> {
    Grid2::from_primitive_fn(nx, ny, 1.0, 1.0, |_x, y| {
        let f = SquareMatrix::from_rows_2([1.0, gamma_of_y(y)], [0.0, 1.0]);
        PrimitiveStateMD::new(1.0, [u_of_y(y), 0.0, 0.0], f, a_of_y(y))
    })
}
