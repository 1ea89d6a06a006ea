//! Energy functional, relative entropy and a-posteriori residuals.

mod balance;
mod bounds;
mod constitutive;
mod eval;
mod relent;

pub use balance::{entropy_balance_residual, entropy_flux, entropy_production, eta_balanced};
pub use bounds::{source_bounds_check, SourceBoundsReport};
pub use constitutive::{
    constitutive_residual, constitutive_residual_rescaled, constitutive_residual_tensor,
};
pub use eval::{convexity_certificate, eta, grad_eta, hess_eta, packed_hessian, EntropyEval};
pub use relent::{relative_entropy, taylor_remainder_z, RelEntropyReport};
