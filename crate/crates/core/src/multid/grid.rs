//! Periodic 2D Cartesian grids of conserved states.

use crate::error::{CoreError, Result};
use crate::linalg::compensated_sum;
use crate::multid::state::{
    primitive_to_conserved, Conserved, HyperbolicityReport, PrimitiveStateMD,
};

/// Periodic nx×ny grid of cell-averaged conserved states (row-major, x fastest).
#[derive(Clone, Debug)]
pub struct Grid2 {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    pub cells: Vec<Conserved>,
}

impl Grid2 {
    /// Sample a primitive field at cell centers ((ix+1/2)Δx, (iy+1/2)Δy).
    pub fn from_primitive_fn(
        nx: usize,
        ny: usize,
        lx: f64,
        ly: f64,
        mut f: impl FnMut(f64, f64) -> PrimitiveStateMD,
    ) -> Result<Self> {
        if nx < 4 || ny < 4 {
            return Err(CoreError::Config(format!(
                "grid must be at least 4×4, got {nx}×{ny}"
            )));
        }
        let dx = lx / nx as f64;
        let dy = ly / ny as f64;
        let mut cells = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                let x = (ix as f64 + 0.5) * dx;
                let y = (iy as f64 + 0.5) * dy;
                cells.push(primitive_to_conserved(&f(x, y)));
            }
        }
        Ok(Self {
            nx,
            ny,
            lx,
            ly,
            cells,
        })
    }

    pub fn dx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.ly / self.ny as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    pub fn dim(&self) -> usize {
        self.cells[0].dim()
    }

    #[inline]
    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    /// Periodic neighbor index with offset (ox, oy) ∈ {−1, 0, 1}.
    #[inline]
    pub fn idx_wrap(&self, ix: usize, iy: usize, ox: isize, oy: isize) -> usize {
        let x = (ix as isize + ox).rem_euclid(self.nx as isize) as usize;
        let y = (iy as isize + oy).rem_euclid(self.ny as isize) as usize;
        self.idx(x, y)
    }

    /// Componentwise totals Σ_cells U, compensated, fixed order.
    pub fn totals(&self) -> Conserved {
        let d = self.dim();
        let n = self.cells[0].n_comp();
        let mut out = Conserved::zeros(d);
        for k in 0..n {
            let s = compensated_sum(self.cells.iter().map(|c| c.as_slice()[k]));
            out.as_mut_slice()[k] = s;
        }
        out
    }

    /// √(ΔxΔy Σ_cells |U₁ − U₂|²) over the stored slots.
    pub fn l2_diff(&self, other: &Grid2) -> Result<f64> {
        if self.nx != other.nx || self.ny != other.ny || self.dim() != other.dim() {
            return Err(CoreError::Config("grid mismatch in l2_diff".into()));
        }
        let s = compensated_sum(self.cells.iter().zip(&other.cells).map(|(a, b)| {
            a.as_slice()
                .iter()
                .zip(b.as_slice())
                .map(|(&x, &y)| (x - y) * (x - y))
                .sum::<f64>()
        }));
        Ok((self.cell_area() * s).sqrt())
    }

    /// Midpoint-quadrature integral of a per-cell scalar.
    pub fn integrate(&self, f: impl Fn(&Conserved) -> f64) -> f64 {
        self.cell_area() * compensated_sum(self.cells.iter().map(f))
    }

    pub fn hyperbolicity_report(&self) -> HyperbolicityReport {
        HyperbolicityReport::from_states(self.cells.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SquareMatrix;

    #[test]
    fn indexing_wraps_periodically() {
        let g = Grid2::from_primitive_fn(8, 4, 1.0, 1.0, |_, _| PrimitiveStateMD::reference(2))
            .unwrap();
        assert_eq!(g.idx_wrap(0, 0, -1, 0), g.idx(7, 0));
        assert_eq!(g.idx_wrap(7, 3, 1, 1), g.idx(0, 0));
    }

    #[test]
    fn totals_of_uniform_grid() {
        let g = Grid2::from_primitive_fn(8, 8, 2.0, 2.0, |_, _| {
            PrimitiveStateMD::new(
                1.5,
                [0.25, 0.0, 0.0],
                SquareMatrix::identity(2),
                SquareMatrix::identity(2),
            )
        })
        .unwrap();
        let t = g.totals();
        assert!((t.rho() - 1.5 * 64.0).abs() <= 1e-12);
        assert!((t.momentum(0) - 0.375 * 64.0).abs() <= 1e-12);
    }

    #[test]
    fn l2_diff_of_shifted_density() {
        let a = Grid2::from_primitive_fn(8, 8, 1.0, 1.0, |_, _| PrimitiveStateMD::reference(2))
            .unwrap();
        let mut b = a.clone();
        for c in &mut b.cells {
            c.set_rho(c.rho() + 0.1);
        }
        // 64 cells, each contributing 0.01 in ρ only, cell area 1/64.
        let want = (64.0 * 0.01 / 64.0f64).sqrt();
        assert!((a.l2_diff(&b).unwrap() - want).abs() <= 1e-12);
    }
}
