//! Multi-dimensional Maxwell-fluid system in conserved variables.
//!
//! The conserved state is U = (ρ, ρu, ρF, ρA) with fluxes in direction j
//!
//!   mass:      ρu_j
//!   momentum:  ρu_iu_j + p δ_ij − τ_ij,        τ = ρG(FAFᵀ − I)
//!   ρF:        ρ(u_j F_iα − u_i F_jα)
//!   ρA:        ρA_αβ u_j
//!
//! and relaxation source ξΠ(U), Π zero except for ρ(F⁻¹F⁻ᵀ − A) in the ρA
//! slot. The ρF flux is the curl-form transport of the deformation gradient
//! reduced with the involution div(ρFᵀ) = 0; combined with mass conservation
//! it reproduces the material law (∂ₜ + u·∇)F = (∇u)F wherever the
//! involution holds, which the [`piola_residual`] monitor quantifies.
//!
//! The algebra is dimension-generic (d ∈ {1, 2, 3}); the stepper operates on
//! periodic 2D grids with first-order Rusanov fluxes and a frozen-coefficient
//! exact-exponential relaxation update.

pub mod fields;
pub mod flux;
pub mod grid;
pub mod piola;
pub mod state;
pub mod step;

pub use fields::{compatible_gentle_2d, compatible_smooth_2d, density_wave_2d, shear_embedding_2d};
pub use flux::{flux, max_wavespeed, source_pi};
pub use grid::Grid2;
pub use piola::piola_residual;
pub use state::{
    conserved_to_primitive, primitive_to_conserved, sample_in_domain, Conserved,
    HyperbolicityReport, PrimitiveStateMD,
};
pub use step::fv_step;
