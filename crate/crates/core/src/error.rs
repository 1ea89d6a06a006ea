//! Error type shared by the solver modules.

use crate::multid::HyperbolicityReport;
use std::fmt;

/// Errors produced by solver and functional evaluations.
#[derive(Debug, Clone)]
pub enum CoreError {
    /// An input lies outside the admissible domain (ρ ≤ 0, singular F, ...).
    Domain(String),
    /// Inconsistent configuration (mismatched grids, incompatible boundary pair, ...).
    Config(String),
    /// A stability restriction was violated (CFL above its limit).
    Stability(String),
    /// The boundary relation cannot determine the incoming characteristic.
    SingularBoundary(String),
    /// The state left the hyperbolicity domain during a run.
    OutOfDomain {
        what: String,
        report: HyperbolicityReport,
    },
    /// A non-finite value was detected; carries a diagnostic.
    NonFinite(String),
    /// Input data unsuitable for the requested reduction (rate fit on
    /// non-positive errors, too few points, ...).
    Data(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::Domain(msg) => write!(f, "domain error: {msg}"),
            CoreError::Config(msg) => write!(f, "configuration error: {msg}"),
            CoreError::Stability(msg) => write!(f, "stability error: {msg}"),
            CoreError::SingularBoundary(msg) => write!(f, "singular boundary: {msg}"),
            CoreError::OutOfDomain { what, report } => write!(
                f,
                "state left the hyperbolicity domain ({what}): min rho = {:.3e}, \
                 min det F = {:.3e}, min eig A = {:.3e}",
                report.min_rho, report.min_det_f, report.min_eig_a
            ),
            CoreError::NonFinite(msg) => write!(f, "non-finite value: {msg}"),
            CoreError::Data(msg) => write!(f, "data error: {msg}"),
        }
    }
}

impl std::error::Error for CoreError {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CoreError>;
