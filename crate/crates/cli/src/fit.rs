//! Log-log rate fitting with a bootstrap confidence interval.

use crate::error::{CliError, Result};
use maxlab_core::rng::SplitMix64;
use serde::Serialize;

/// Least-squares fit of log(error) against log(Δξ).
#[derive(Clone, Debug, Serialize)]
pub struct RateFitReport {
    /// (Δξ, error) pairs that entered the fit.
    pub pairs: Vec<(f64, f64)>,
    /// Fitted exponent: error ≈ c_fit · Δξ^slope.
    pub slope: f64,
    pub intercept: f64,
    /// exp(intercept): the empirical rate constant.
    pub c_fit: f64,
    /// 95% bootstrap interval for the slope (1000 resamples, seeded).
    pub slope_ci: (f64, f64),
}

fn ls_slope(pts: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = pts.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(lx, ly) in pts {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() <= 1e-12 * (n * sxx).abs().max(1e-300) {
        return None; // degenerate abscissae
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    Some((slope, intercept))
}

/// Fit a rate from ≥ 4 strictly positive (Δξ, error) pairs.
///
/// Non-positive errors indicate identical runs and are a data error; the
/// caller filters such pairs out (and reports them) before fitting.
pub fn fit_rate(pairs: &[(f64, f64)], seed: u64) -> Result<RateFitReport> {
    if pairs.len() < 4 {
        return Err(CliError::Runtime(format!(
            "rate fit needs at least 4 pairs, got {}",
            pairs.len()
        )));
    }
    for &(dx, err) in pairs {
        if !(dx > 0.0) || !(err > 0.0) {
            return Err(CliError::Runtime(format!(
                "rate fit needs positive pairs, got ({dx}, {err}); identical runs \
                 must be excluded before fitting"
            )));
        }
    }
    let logs: Vec<(f64, f64)> = pairs.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let (slope, intercept) = ls_slope(&logs)
        .ok_or_else(|| CliError::Runtime("rate fit: degenerate abscissae (all Δξ equal)".into()))?;

    // Bootstrap over pair resamples; degenerate draws are skipped.
    let mut rng = SplitMix64::new(seed);
    let mut slopes = Vec::with_capacity(1000);
    while slopes.len() < 1000 {
        let sample: Vec<(f64, f64)> = (0..logs.len())
            .map(|_| logs[rng.index(logs.len())])
            .collect();
        if let Some((s, _)) = ls_slope(&sample) {
            slopes.push(s);
        }
    }
    slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pick = |p: f64| slopes[((p * (slopes.len() - 1) as f64).round()) as usize];
    Ok(RateFitReport {
        pairs: pairs.to_vec(),
        slope,
        intercept,
        c_fit: intercept.exp(),
        slope_ci: (pick(0.025), pick(0.975)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_linear_data_gives_unit_slope() {
        let pairs: Vec<(f64, f64)> = [0.4, 0.2, 0.1, 0.05]
            .iter()
            .map(|&d| (d, 3.0 * d))
            .collect();
        let fit = fit_rate(&pairs, 1).unwrap();
        assert!((fit.slope - 1.0).abs() <= 1e-12, "slope {}", fit.slope);
        assert!((fit.c_fit - 3.0).abs() <= 1e-12);
        assert!((fit.slope_ci.0 - 1.0).abs() <= 1e-9);
        assert!((fit.slope_ci.1 - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn exact_quadratic_data_gives_slope_two() {
        let pairs: Vec<(f64, f64)> = [0.4, 0.2, 0.1, 0.05]
            .iter()
            .map(|&d| (d, 3.0 * d * d))
            .collect();
        let fit = fit_rate(&pairs, 7).unwrap();
        assert!((fit.slope - 2.0).abs() <= 1e-12, "slope {}", fit.slope);
    }

    #[test]
    fn nonpositive_errors_rejected() {
        let pairs = vec![(0.4, 0.1), (0.2, 0.0), (0.1, 0.05), (0.05, 0.01)];
        assert!(fit_rate(&pairs, 1).is_err());
    }

    #[test]
    fn too_few_pairs_rejected() {
        let pairs = vec![(0.4, 0.1), (0.2, 0.05), (0.1, 0.02)];
        assert!(fit_rate(&pairs, 1).is_err());
    }

    #[test]
    fn bootstrap_deterministic_for_seed() {
        let pairs: Vec<(f64, f64)> = [0.4f64, 0.2, 0.1, 0.05]
            .iter()
            .map(|&d| (d, 2.0 * d.powf(1.05)))
            .collect();
        let a = fit_rate(&pairs, 42).unwrap();
        let b = fit_rate(&pairs, 42).unwrap();
        assert_eq!(a.slope_ci, b.slope_ci);
    }
}
