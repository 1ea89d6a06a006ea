//! Numerical laboratory for viscoelastic shear waves and multi-dimensional
//! Maxwell-fluid flows in conservative form.
//!
//! The library has four layers:
//!
//! * [`linalg`] / [`material`] — small dense tensor algebra, the isothermal
//!   equation of state, material parameters and the neo-Hookean extra-stress
//!   τ = ρG(FAFᵀ − I).
//! * [`shear1d`] — the 1D damped shear-wave system
//!   ∂ₜu − ∂_y τ = f, ∂ₜτ − G ∂_y u = −ξτ, solved by exact characteristics
//!   on the Riemann variables w± = τ ± √G·u, with maximally dissipative
//!   boundary conditions, a per-step discrete energy ledger and a per-step
//!   relaxation-difference inequality audit.
//! * [`multid`] — the multi-dimensional system in conserved variables
//!   U = (ρ, ρu, ρF, ρA) with first-order Rusanov fluxes on periodic 2D
//!   grids, a stiff-safe exact-exponential relaxation update, and an
//!   involution monitor for div(ρFᵀ).
//! * [`entropy`] — the energy density η(U), its closed-form gradient and
//!   Hessian, relative entropy between two states, entropy-flux balance
//!   residuals, source-term bound estimates and the upper-convected Maxwell
//!   constitutive residual evaluated on computed flows.
//!
//! All operations are deterministic: a run is bitwise reproducible from its
//! inputs, and reductions use fixed association orders.

pub mod entropy;
pub mod error;
pub mod linalg;
pub mod material;
pub mod multid;
pub mod rng;
pub mod shear1d;

pub use error::CoreError;
pub use linalg::SquareMatrix;
pub use material::{eos_pressure, neo_hookean_stress, Eos, MaterialParams};
pub use multid::{
    conserved_to_primitive, primitive_to_conserved, Conserved, Grid2, HyperbolicityReport,
    PrimitiveStateMD,
};
pub use shear1d::{
    advect_step, energy_audit, prop1_audit, run_shear, source_step, BoundaryData, BoundarySpec,
    EnergyLedger, ShearRunConfig, ShearState1D, ShearTrajectory,
};
