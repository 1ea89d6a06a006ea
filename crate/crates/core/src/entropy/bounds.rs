//! Empirical bounds on the relaxation source Π over a sampled state box.
//!
//! Two constants are estimated per component m:
//!
//! * the best local Lipschitz constant L_m with
//!   |Π_m(U₁) − Π_m(U₂)| ≤ L_m‖U₁ − U₂‖, and
//! * the best Taylor-remainder constant R_m with
//!   |Π_m(U₁) − Π_m(U₂) − DΠ_m(U₂)·(U₁ − U₂)| ≤ R_m‖U₁ − U₂‖²,
//!
//! so the printed quadratic bound on |ΔΠ| can be compared against both
//! readings on data.

use crate::error::Result;
use crate::multid::flux::source_pi;
use crate::multid::state::Conserved;

/// Estimated constants and the pair count they came from.
#[derive(Clone, Debug)]
pub struct SourceBoundsReport {
    /// Per-component local Lipschitz constants.
    pub lipschitz: Vec<f64>,
    /// Per-component quadratic remainder constants.
    pub remainder: Vec<f64>,
    pub n_samples: usize,
    pub n_pairs: usize,
}

impl SourceBoundsReport {
    pub fn max_lipschitz(&self) -> f64 {
        self.lipschitz.iter().cloned().fold(0.0, f64::max)
    }

    pub fn max_remainder(&self) -> f64 {
        self.remainder.iter().cloned().fold(0.0, f64::max)
    }
}

/// Estimate the constants over all sample pairs.
pub fn source_bounds_check(samples: &[Conserved]) -> Result<SourceBoundsReport> {
    assert!(samples.len() >= 2, "need at least two samples");
    let n = samples[0].n_comp();
    let dim = samples[0].dim();

    let pis: Vec<Conserved> = samples.iter().map(source_pi).collect::<Result<_>>()?;

    // FD Jacobian of Π at each sample (columns = state slots).
    let mut jacs: Vec<Vec<f64>> = Vec::with_capacity(samples.len());
    for s in samples {
        let base = s.as_slice().to_vec();
        let mut jac = vec![0.0; n * n];
        for col in 0..n {
            let h = 1e-6 * base[col].abs().max(1.0);
            let mut up = Conserved::from_slice(dim, &base);
            up.as_mut_slice()[col] += h;
            let mut dn = Conserved::from_slice(dim, &base);
            dn.as_mut_slice()[col] -= h;
            let pu = source_pi(&up)?;
            let pd = source_pi(&dn)?;
            for row in 0..n {
                jac[row * n + col] = (pu.as_slice()[row] - pd.as_slice()[row]) / (2.0 * h);
            }
        }
        jacs.push(jac);
    }

    let mut lipschitz = vec![0.0f64; n];
    let mut remainder = vec![0.0f64; n];
    let mut n_pairs = 0usize;
    for i in 0..samples.len() {
        for j in 0..samples.len() {
            if i == j {
                continue;
            }
            n_pairs += 1;
            let mut du = vec![0.0f64; n];
            let mut norm2 = 0.0f64;
            for k in 0..n {
                du[k] = samples[i].as_slice()[k] - samples[j].as_slice()[k];
                norm2 += du[k] * du[k];
            }
            let norm = norm2.sqrt();
            if norm < 1e-12 {
                continue;
            }
            for m in 0..n {
                let dpi = pis[i].as_slice()[m] - pis[j].as_slice()[m];
                lipschitz[m] = lipschitz[m].max(dpi.abs() / norm);
                let mut lin = 0.0;
                for k in 0..n {
                    lin += jacs[j][m * n + k] * du[k];
                }
                remainder[m] = remainder[m].max((dpi - lin).abs() / norm2);
            }
        }
    }

    Ok(SourceBoundsReport {
        lipschitz,
        remainder,
        n_samples: samples.len(),
        n_pairs,
    })
}
