//! The energy density η(U), its gradient and its Hessian in conserved
//! variables, in closed form.
//!
//! # Derivation
//!
//! Write U = (ρ, m, B, C) with m = ρu, B = ρF, C = ρA, and let
//! W(B, C) = B_{iα}C_{αβ}B_{iβ}. In primitive variables the energy density is
//!
//!   η = ρ|u|²/2 + ρe₀(1/ρ) + ρ(G/2)·F_{iα}A_{αβ}F_{iβ},
//!
//! and substituting u = m/ρ, F = B/ρ, A = C/ρ gives the conserved form
//!
//!   η(U) = |m|²/(2ρ) + ρe₀(ν) + (G/2)·W/ρ²,   ν = 1/ρ.
//!
//! All d² entries of C are treated as independent coordinates (the physical
//! states keep C symmetric; W only sees the symmetric part, and the formulas
//! below stay exact for any stored C). Differentiating term by term:
//!
//!   ∂η/∂ρ      = −|m|²/(2ρ²) + e₀(ν) − ν·e₀′(ν) − G·W/ρ³
//!   ∂η/∂m_i    = m_i/ρ
//!   ∂η/∂B_{jγ} = (G/2ρ²)·(B(C + Cᵀ))_{jγ}
//!   ∂η/∂C_{γδ} = (G/2ρ²)·(BᵀB)_{γδ}
//!
//! using d/dρ[ρe₀(1/ρ)] = e₀ − νe₀′ and ∂W/∂B_{jγ} = (B(C+Cᵀ))_{jγ},
//! ∂W/∂C_{γδ} = (BᵀB)_{γδ}. Differentiating once more:
//!
//!   η_ρρ            = |m|²/ρ³ + ν³·e₀″(ν) + 3G·W/ρ⁴
//!   η_{ρ m_i}       = −m_i/ρ²
//!   η_{ρ B_{jγ}}    = −(G/ρ³)·(B(C+Cᵀ))_{jγ}
//!   η_{ρ C_{γδ}}    = −(G/ρ³)·(BᵀB)_{γδ}
//!   η_{m_i m_j}     = δ_ij/ρ
//!   η_{B_{iα}B_{jγ}} = (G/2ρ²)·δ_ij·(C+Cᵀ)_{γα}
//!   η_{B_{iα}C_{γδ}} = (G/2ρ²)·(B_{iγ}δ_{αδ} + B_{iδ}δ_{αγ})
//!   η_{C C}         = 0,
//!
//! where d²/dρ²[ρe₀(1/ρ)] = ν³e₀″(ν). Every formula is cross-checked against
//! central finite differences in the tests.
//!
//! # Convexity caveat
//!
//! η is affine in the C block (η_{CC} = 0) while the mixed blocks
//! η_{BC} and η_{ρC} do not vanish, so the Hessian — on the full slot space
//! or restricted to the 1 + d + d² + d(d+1)/2 independent coordinates — has
//! indefinite directions at every state with B ≠ 0. At the 2D reference
//! state the principal submatrix over (B₂₁, B₁₂, C₁₂-symmetric) is
//! [[1, 0, 1], [0, 1, 1], [1, 1, 0]], with determinant −2. The
//! [`convexity_certificate`] reports the (negative) smallest eigenvalue of
//! the independent-coordinate Hessian rather than assuming convexity.

use crate::error::Result;
use crate::linalg::sym_eigenvalues;
use crate::material::Eos;
use crate::multid::state::{conserved_to_primitive, Conserved};

/// η, Dη and D²η at one state.
#[derive(Clone, Debug)]
pub struct EntropyEval {
    pub eta: f64,
    /// Full-slot gradient (same layout as `Conserved`).
    pub grad: Conserved,
    /// Full-slot Hessian, row-major n_comp × n_comp.
    pub hess: Vec<f64>,
}

impl EntropyEval {
    pub fn evaluate(c: &Conserved, eos: &Eos, g_modulus: f64) -> Result<Self> {
        Ok(Self {
            eta: eta(c, eos, g_modulus)?,
            grad: grad_eta(c, eos, g_modulus)?,
            hess: hess_eta(c, eos, g_modulus)?,
        })
    }
}

/// η(U) = |m|²/(2ρ) + ρe₀(1/ρ) + (G/2)·B_{iα}C_{αβ}B_{iβ}/ρ².
pub fn eta(c: &Conserved, eos: &Eos, g_modulus: f64) -> Result<f64> {
    let d = c.dim();
    let rho = c.rho();
    conserved_to_primitive(c)?; // domain check
    let nu = 1.0 / rho;
    let mut m2 = 0.0;
    for i in 0..d {
        m2 += c.momentum(i) * c.momentum(i);
    }
    let mut w = 0.0;
    for i in 0..d {
        for al in 0..d {
            for be in 0..d {
                w += c.rho_f(i, al) * c.rho_a(al, be) * c.rho_f(i, be);
            }
        }
    }
    Ok(m2 / (2.0 * rho) + rho * eos.e0(nu) + 0.5 * g_modulus * w / (rho * rho))
}

/// Closed-form gradient Dη(U) over the full slot layout.
pub fn grad_eta(c: &Conserved, eos: &Eos, g_modulus: f64) -> Result<Conserved> {
    let d = c.dim();
    let rho = c.rho();
    conserved_to_primitive(c)?;
    let nu = 1.0 / rho;
    let g = g_modulus;

    let mut m2 = 0.0;
    for i in 0..d {
        m2 += c.momentum(i) * c.momentum(i);
    }
    let mut w = 0.0;
    for i in 0..d {
        for al in 0..d {
            for be in 0..d {
                w += c.rho_f(i, al) * c.rho_a(al, be) * c.rho_f(i, be);
            }
        }
    }

    let mut out = Conserved::zeros(d);
    out.set_rho(
        -m2 / (2.0 * rho * rho) + eos.e0(nu) - nu * eos.de0_dnu(nu) - g * w / (rho * rho * rho),
    );
    for i in 0..d {
        out.set_momentum(i, c.momentum(i) / rho);
    }
    // ∂η/∂B_{jγ} = (G/2ρ²)·Σ_β B_{jβ}(C_{βγ} + C_{γβ})
    for j in 0..d {
        for ga in 0..d {
            let mut s = 0.0;
            for be in 0..d {
                s += c.rho_f(j, be) * (c.rho_a(be, ga) + c.rho_a(ga, be));
            }
            out.set_rho_f(j, ga, 0.5 * g * s / (rho * rho));
        }
    }
    // ∂η/∂C_{γδ} = (G/2ρ²)·(BᵀB)_{γδ}
    for ga in 0..d {
        for de in 0..d {
            let mut s = 0.0;
            for i in 0..d {
                s += c.rho_f(i, ga) * c.rho_f(i, de);
            }
            out.set_rho_a(ga, de, 0.5 * g * s / (rho * rho));
        }
    }
    Ok(out)
}

/// Closed-form Hessian D²η(U) over the full slot layout, row-major.
pub fn hess_eta(c: &Conserved, eos: &Eos, g_modulus: f64) -> Result<Vec<f64>> {
    let d = c.dim();
    let n = c.n_comp();
    let rho = c.rho();
    conserved_to_primitive(c)?;
    let nu = 1.0 / rho;
    let g = g_modulus;
    let rho2 = rho * rho;
    let rho3 = rho2 * rho;
    let rho4 = rho2 * rho2;

    let mut m2 = 0.0;
    for i in 0..d {
        m2 += c.momentum(i) * c.momentum(i);
    }
    let mut w = 0.0;
    for i in 0..d {
        for al in 0..d {
            for be in 0..d {
                w += c.rho_f(i, al) * c.rho_a(al, be) * c.rho_f(i, be);
            }
        }
    }

    let idx_rho = 0usize;
    let idx_m = |i: usize| 1 + i;
    let idx_b = |i: usize, al: usize| 1 + d + i * d + al;
    let idx_c = |al: usize, be: usize| 1 + d + d * d + al * d + be;

    let mut h = vec![0.0f64; n * n];
    let mut set = |r: usize, col: usize, v: f64| {
        h[r * n + col] = v;
        h[col * n + r] = v;
    };

    set(
        idx_rho,
        idx_rho,
        m2 / rho3 + nu * nu * nu * eos.d2e0_dnu2(nu) + 3.0 * g * w / rho4,
    );
    for i in 0..d {
        set(idx_rho, idx_m(i), -c.momentum(i) / rho2);
        set(idx_m(i), idx_m(i), 1.0 / rho);
    }
    for j in 0..d {
        for ga in 0..d {
            // η_{ρB_{jγ}} = ∂/∂ρ[(G/2ρ²)(B(C+Cᵀ))_{jγ}] = −(G/ρ³)(B(C+Cᵀ))_{jγ}.
            let mut bc_sym = 0.0;
            for be in 0..d {
                bc_sym += c.rho_f(j, be) * (c.rho_a(be, ga) + c.rho_a(ga, be));
            }
            set(idx_rho, idx_b(j, ga), -g * bc_sym / rho3);
        }
    }
    for ga in 0..d {
        for de in 0..d {
            let mut btb = 0.0;
            for i in 0..d {
                btb += c.rho_f(i, ga) * c.rho_f(i, de);
            }
            set(idx_rho, idx_c(ga, de), -g * btb / rho3);
        }
    }
    // B–B block: (G/2ρ²)·δ_ij·(C + Cᵀ)_{γα}
    for i in 0..d {
        for al in 0..d {
            for ga in 0..d {
                let v = 0.5 * g * (c.rho_a(ga, al) + c.rho_a(al, ga)) / rho2;
                set(idx_b(i, al), idx_b(i, ga), v);
            }
        }
    }
    // B–C block: (G/2ρ²)·(B_{iγ}δ_{αδ} + B_{iδ}δ_{αγ})
    for i in 0..d {
        for al in 0..d {
            for ga in 0..d {
                for de in 0..d {
                    let mut v = 0.0;
                    if al == de {
                        v += c.rho_f(i, ga);
                    }
                    if al == ga {
                        v += c.rho_f(i, de);
                    }
                    if v != 0.0 {
                        set(idx_b(i, al), idx_c(ga, de), 0.5 * g * v / rho2);
                    }
                }
            }
        }
    }
    // C–C block is zero: η is affine in C.
    Ok(h)
}

/// Hessian restricted to the independent coordinates
/// (ρ, m, B, symmetric C entries with α ≤ β); returns (size, row-major).
///
/// The off-diagonal packed coordinate c_{αβ} moves C_{αβ} and C_{βα}
/// together, so the projection matrix has a two-entry column there.
pub fn packed_hessian(c: &Conserved, eos: &Eos, g_modulus: f64) -> Result<(usize, Vec<f64>)> {
    let d = c.dim();
    let n_full = c.n_comp();
    let h_full = hess_eta(c, eos, g_modulus)?;

    // Projection columns as index/weight lists.
    let mut columns: Vec<Vec<(usize, f64)>> = Vec::new();
    columns.push(vec![(0, 1.0)]);
    for i in 0..d {
        columns.push(vec![(1 + i, 1.0)]);
    }
    for i in 0..d {
        for al in 0..d {
            columns.push(vec![(1 + d + i * d + al, 1.0)]);
        }
    }
    let c_base = 1 + d + d * d;
    for al in 0..d {
        for be in al..d {
            if al == be {
                columns.push(vec![(c_base + al * d + be, 1.0)]);
            } else {
                columns.push(vec![
                    (c_base + al * d + be, 1.0),
                    (c_base + be * d + al, 1.0),
                ]);
            }
        }
    }

    let np = columns.len();
    debug_assert_eq!(np, c.n_independent());
    let mut hp = vec![0.0f64; np * np];
    for (r, col_r) in columns.iter().enumerate() {
        for (s, col_s) in columns.iter().enumerate() {
            let mut v = 0.0;
            for &(ir, wr) in col_r {
                for &(is, ws) in col_s {
                    v += wr * ws * h_full[ir * n_full + is];
                }
            }
            hp[r * np + s] = v;
        }
    }
    Ok((np, hp))
}

/// Smallest eigenvalue of the independent-coordinate Hessian.
///
/// A positive value certifies local convexity of η around the state; for
/// this energy the value is negative at every in-domain state (see the
/// module docs), and callers treat it as a measured diagnostic.
pub fn convexity_certificate(c: &Conserved, eos: &Eos, g_modulus: f64) -> Result<f64> {
    let (np, hp) = packed_hessian(c, eos, g_modulus)?;
    Ok(sym_eigenvalues(&hp, np)[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multid::state::{primitive_to_conserved, sample_in_domain, PrimitiveStateMD};
    use crate::rng::SplitMix64;

    fn unit_eos() -> Eos {
        Eos::isothermal(1.0).unwrap()
    }

    #[test]
    fn eta_at_reference_state() {
        // ρ=1, u=0, F=A=I, G=1, c0=1, d=2: kinetic 0, e₀(1) = 0,
        // elastic (G/2)·tr(I) = 1, so η = 1.
        let c = primitive_to_conserved(&PrimitiveStateMD::reference(2));
        assert_eq!(eta(&c, &unit_eos(), 1.0).unwrap(), 1.0);
    }

    #[test]
    fn kinetic_term_scales_quadratically() {
        let mut p = PrimitiveStateMD::reference(2);
        p.u = [0.3, -0.2, 0.0];
        let e1 = eta(&primitive_to_conserved(&p), &unit_eos(), 1.0).unwrap();
        p.u = [0.6, -0.4, 0.0];
        let e2 = eta(&primitive_to_conserved(&p), &unit_eos(), 1.0).unwrap();
        let kinetic1 = e1 - 1.0;
        let kinetic2 = e2 - 1.0;
        assert!((kinetic2 - 4.0 * kinetic1).abs() <= 1e-13);
    }

    #[test]
    fn eta_dominates_eos_part_on_box() {
        // With A positive definite the elastic term is ≥ 0, and the kinetic
        // term is ≥ 0, so η ≥ ρe₀(1/ρ) on the sampling box.
        let eos = unit_eos();
        let mut rng = SplitMix64::new(8);
        for _ in 0..50 {
            let p = sample_in_domain(&mut rng, 2);
            let c = primitive_to_conserved(&p);
            let e = eta(&c, &eos, 1.0).unwrap();
            let floor = p.rho * eos.e0(1.0 / p.rho);
            assert!(e >= floor - 1e-12, "η = {e} < ρe₀ = {floor}");
        }
    }

    #[test]
    fn gradient_momentum_slot_vanishes_at_rest() {
        let c = primitive_to_conserved(&PrimitiveStateMD::reference(2));
        let g = grad_eta(&c, &unit_eos(), 1.0).unwrap();
        assert_eq!(g.momentum(0), 0.0);
        assert_eq!(g.momentum(1), 0.0);
    }

    fn fd_gradient(c: &Conserved, eos: &Eos, gm: f64) -> Conserved {
        let n = c.n_comp();
        let base = c.as_slice().to_vec();
        let mut out = Conserved::zeros(c.dim());
        for k in 0..n {
            let h = 1e-5 * base[k].abs().max(1.0);
            let mut up = Conserved::from_slice(c.dim(), &base);
            up.as_mut_slice()[k] += h;
            let mut dn = Conserved::from_slice(c.dim(), &base);
            dn.as_mut_slice()[k] -= h;
            out.as_mut_slice()[k] =
                (eta(&up, eos, gm).unwrap() - eta(&dn, eos, gm).unwrap()) / (2.0 * h);
        }
        out
    }

    #[test]
    fn gradient_matches_central_differences() {
        let eos = unit_eos();
        let mut rng = SplitMix64::new(77);
        for dim in [1usize, 2, 3] {
            for _ in 0..40 {
                let p = sample_in_domain(&mut rng, dim);
                let c = primitive_to_conserved(&p);
                let g = grad_eta(&c, &eos, 1.0).unwrap();
                let fd = fd_gradient(&c, &eos, 1.0);
                let scale = g
                    .as_slice()
                    .iter()
                    .map(|v| v.abs())
                    .fold(0.0f64, f64::max)
                    .max(1.0);
                for k in 0..c.n_comp() {
                    let err = (g.as_slice()[k] - fd.as_slice()[k]).abs() / scale;
                    assert!(err <= 1e-6, "dim {dim} slot {k}: rel err {err}");
                }
            }
        }
    }

    #[test]
    fn hessian_matches_fd_of_gradient_and_is_symmetric() {
        let eos = unit_eos();
        let mut rng = SplitMix64::new(123);
        for _ in 0..20 {
            let p = sample_in_domain(&mut rng, 2);
            let c = primitive_to_conserved(&p);
            let n = c.n_comp();
            let h = hess_eta(&c, &eos, 1.0).unwrap();
            for r in 0..n {
                for s in 0..n {
                    assert!((h[r * n + s] - h[s * n + r]).abs() <= 1e-10);
                }
            }
            let base = c.as_slice().to_vec();
            let scale = h.iter().map(|v| v.abs()).fold(0.0f64, f64::max).max(1.0);
            for k in 0..n {
                let step = 1e-5 * base[k].abs().max(1.0);
                let mut up = Conserved::from_slice(2, &base);
                up.as_mut_slice()[k] += step;
                let mut dn = Conserved::from_slice(2, &base);
                dn.as_mut_slice()[k] -= step;
                let gu = grad_eta(&up, &eos, 1.0).unwrap();
                let gd = grad_eta(&dn, &eos, 1.0).unwrap();
                for r in 0..n {
                    let fd = (gu.as_slice()[r] - gd.as_slice()[r]) / (2.0 * step);
                    let err = (h[r * n + k] - fd).abs() / scale;
                    assert!(err <= 1e-6, "H[{r},{k}] rel err {err}");
                }
            }
        }
    }

    #[test]
    fn hessian_indefinite_along_conformation_coupling() {
        // η is affine in the C block while the B–C coupling is nonzero, so
        // the independent-coordinate Hessian has a negative eigenvalue; at
        // the reference state the (B₂₁, B₁₂, c₁₂) minor is
        // [[1,0,1],[0,1,1],[1,1,0]] with determinant −2.
        let eos = unit_eos();
        let c = primitive_to_conserved(&PrimitiveStateMD::reference(2));
        let cert = convexity_certificate(&c, &eos, 1.0).unwrap();
        assert!(cert < -0.1, "expected a negative direction, got {cert}");
        let mut rng = SplitMix64::new(5150);
        for _ in 0..20 {
            let p = sample_in_domain(&mut rng, 2);
            let cc = primitive_to_conserved(&p);
            assert!(convexity_certificate(&cc, &eos, 1.0).unwrap() < 0.0);
        }
    }

    #[test]
    fn packed_hessian_has_independent_size() {
        let c = primitive_to_conserved(&PrimitiveStateMD::reference(2));
        let (np, hp) = packed_hessian(&c, &unit_eos(), 1.0).unwrap();
        assert_eq!(np, 10);
        assert_eq!(hp.len(), 100);
        let c3 = primitive_to_conserved(&PrimitiveStateMD::reference(3));
        let (np3, _) = packed_hessian(&c3, &unit_eos(), 1.0).unwrap();
        assert_eq!(np3, 19);
    }
}
