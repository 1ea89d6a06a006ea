//! `maxlab check`: fast invariant suite over the solver building blocks.
//!
//! Prints one PASS/FAIL line per invariant plus informational measurements;
//! returns an error when any asserted invariant fails.

use crate::error::{CliError, Result};
use maxlab_core::entropy::{
    convexity_certificate, eta, grad_eta, relative_entropy, taylor_remainder_z,
};
use maxlab_core::material::Eos;
use maxlab_core::multid::fields::density_wave_2d;
use maxlab_core::multid::state::{primitive_to_conserved, sample_in_domain};
use maxlab_core::multid::step::fv_step;
use maxlab_core::rng::SplitMix64;
use maxlab_core::shear1d::{prop1_audit, run_shear, BoundarySpec, Forcing, ShearRunConfig, Side};
use maxlab_core::{MaterialParams, PrimitiveStateMD, ShearState1D};
use std::f64::consts::PI;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { name, pass, detail }
}

fn unit_eos() -> Eos {
    Eos::isothermal(1.0).unwrap()
}

fn riemann_round_trip() -> Outcome {
    let s =
        ShearState1D::from_profiles(0.0, 1.0, 128, |y| (2.0 * PI * y).sin(), |y| y.cos()).unwrap();
    let (wp, wm) = s.to_riemann(2.3);
    let back = ShearState1D::from_riemann(0.0, 1.0, &wp, &wm, 2.3, 0.0).unwrap();
    let err = back
        .u
        .iter()
        .zip(&s.u)
        .chain(back.tau.iter().zip(&s.tau))
        .map(|(&a, &b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    check(
        "riemann round trip (1e-14)",
        err <= 1e-14,
        format!("max error {err:.2e}"),
    )
}

fn exact_shift_revolution() -> Outcome {
    let params = MaterialParams::new(1.0, 0.0, 1.0).unwrap();
    let init =
        ShearState1D::from_profiles(0.0, 1.0, 128, |y| (2.0 * PI * y).sin(), |_| 0.0).unwrap();
    let traj = run_shear(
        &init,
        &params,
        &BoundarySpec::periodic(Side::Left),
        &BoundarySpec::periodic(Side::Right),
        &Forcing::none(),
        &ShearRunConfig {
            t_final: 1.0,
            cfl: 1.0,
            n_outputs: 1,
            dense: false,
        },
    )
    .unwrap();
    let fin = traj.final_state();
    let err = fin
        .u
        .iter()
        .zip(&init.u)
        .map(|(&a, &b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    check(
        "full-revolution cyclic shift (1e-12)",
        err <= 1e-12,
        format!("max error {err:.2e}"),
    )
}

fn energy_identity_and_prop1() -> Vec<Outcome> {
    let init =
        ShearState1D::from_profiles(0.0, 1.0, 256, |y| (2.0 * PI * y).sin(), |_| 0.0).unwrap();
    let bl = BoundarySpec::periodic(Side::Left);
    let br = BoundarySpec::periodic(Side::Right);
    let cfgr = ShearRunConfig {
        t_final: 1.0,
        cfl: 1.0,
        n_outputs: 4,
        dense: true,
    };
    let p1 = MaterialParams::new(1.0, 0.2, 1.0).unwrap();
    let p0 = MaterialParams::new(1.0, 0.0, 1.0).unwrap();
    let r1 = run_shear(&init, &p1, &bl, &br, &Forcing::none(), &cfgr).unwrap();
    let r0 = run_shear(&init, &p0, &bl, &br, &Forcing::none(), &cfgr).unwrap();
    let res = r1.max_relative_residual();
    let audit = prop1_audit(&r1, 0.2, &r0, 0.0, &p0, &bl, &br).unwrap();
    vec![
        check(
            "discrete energy identity (1e-10 rel/step)",
            res <= 1e-10,
            format!("max relative residual {res:.2e}"),
        ),
        check(
            "two-run difference inequality (1e-8 rel slack)",
            audit.max_slack <= 1e-8 * audit.energy_scale,
            format!(
                "max slack {:.2e} vs scale {:.2e}",
                audit.max_slack, audit.energy_scale
            ),
        ),
    ]
}

fn gradient_fd_gate() -> Outcome {
    let eos = unit_eos();
    let mut rng = SplitMix64::new(2026);
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let c = primitive_to_conserved(&sample_in_domain(&mut rng, 2));
        let g = grad_eta(&c, &eos, 1.0).unwrap();
        let scale = g
            .as_slice()
            .iter()
            .map(|v| v.abs())
            .fold(0.0f64, f64::max)
            .max(1.0);
        for k in 0..c.n_comp() {
            let h = 1e-5 * c.as_slice()[k].abs().max(1.0);
            let mut up = c;
            up.as_mut_slice()[k] += h;
            let mut dn = c;
            dn.as_mut_slice()[k] -= h;
            let fd = (eta(&up, &eos, 1.0).unwrap() - eta(&dn, &eos, 1.0).unwrap()) / (2.0 * h);
            worst = worst.max((g.as_slice()[k] - fd).abs() / scale);
        }
    }
    check(
        "energy gradient vs central differences (1e-6)",
        worst <= 1e-6,
        format!("worst relative deviation {worst:.2e}"),
    )
}

fn z_ratio_stability() -> Outcome {
    let eos = unit_eos();
    let mut rng = SplitMix64::new(55);
    let u2 = primitive_to_conserved(&sample_in_domain(&mut rng, 2));
    let dir: Vec<f64> = (0..u2.n_comp()).map(|_| rng.range(-1.0, 1.0)).collect();
    let mut ratios = Vec::new();
    for eps in [1e-1, 1e-2, 1e-3] {
        let mut u1 = u2;
        for (k, v) in dir.iter().enumerate() {
            u1.as_mut_slice()[k] += eps * v;
        }
        let z = taylor_remainder_z(&u1, &u2, &eos, 1.0).unwrap();
        ratios.push(z.norm() / (eps * eps));
    }
    let spread = ratios
        .iter()
        .map(|r| (r - ratios[2]).abs() / ratios[2].max(1e-300))
        .fold(0.0f64, f64::max);
    check(
        "quadratic remainder ratio stable (≤ 25%)",
        spread <= 0.25,
        format!("ratios {ratios:?}"),
    )
}

fn conservation_and_equilibrium() -> Vec<Outcome> {
    let eos = unit_eos();
    let g = density_wave_2d(16, 16, 0.1).unwrap();
    let t0 = g.totals();
    let mut cur = g;
    for _ in 0..8 {
        cur = fv_step(&cur, 2e-3, &eos, 1.0, 0.5).unwrap();
    }
    let t1 = cur.totals();
    let mut worst = 0.0f64;
    for k in 0..7 {
        let scale = t0.as_slice()[k].abs().max(1.0) * 256.0;
        worst = worst.max((t1.as_slice()[k] - t0.as_slice()[k]).abs() / scale);
    }
    let uni = maxlab_core::Grid2::from_primitive_fn(8, 8, 1.0, 1.0, |_, _| {
        PrimitiveStateMD::reference(2)
    })
    .unwrap();
    let stepped = fv_step(&uni, 1e-3, &eos, 1.0, 0.7).unwrap();
    let fp_err = uni
        .cells
        .iter()
        .zip(&stepped.cells)
        .map(|(a, b)| {
            a.as_slice()
                .iter()
                .zip(b.as_slice())
                .map(|(&x, &y)| (x - y).abs())
                .fold(0.0f64, f64::max)
        })
        .fold(0.0f64, f64::max);
    vec![
        check(
            "2D conservation of rho, momentum, rho F (1e-12/step)",
            worst <= 1e-12,
            format!("worst relative drift {worst:.2e}"),
        ),
        check(
            "uniform equilibrium fixed point (1e-14)",
            fp_err <= 1e-14,
            format!("max change {fp_err:.2e}"),
        ),
    ]
}

fn relative_entropy_sanity() -> Outcome {
    let eos = unit_eos();
    let base = density_wave_2d(8, 8, 0.05).unwrap();
    let rep = relative_entropy(&base, &base, &eos, 1.0).unwrap();
    check(
        "relative entropy vanishes on equal states",
        rep.rel_entropy == 0.0 && rep.l2_diff == 0.0,
        format!("RE {} l2 {}", rep.rel_entropy, rep.l2_diff),
    )
}

fn stress_symmetry() -> Outcome {
    let mut rng = SplitMix64::new(31);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let p = sample_in_domain(&mut rng, 2);
        let tau = maxlab_core::neo_hookean_stress(p.rho, &p.f, &p.a, 1.4).unwrap();
        worst = worst.max((tau - tau.transpose()).max_abs());
    }
    check(
        "stress exactly symmetric for symmetric A",
        worst == 0.0,
        format!("max asymmetry {worst:.2e}"),
    )
}

/// Run the suite; prints one line per invariant and a trailing summary.
pub fn run_check() -> Result<()> {
    let mut outcomes = Vec::new();
    outcomes.push(riemann_round_trip());
    outcomes.push(exact_shift_revolution());
    outcomes.extend(energy_identity_and_prop1());
    outcomes.push(gradient_fd_gate());
    outcomes.push(z_ratio_stability());
    outcomes.extend(conservation_and_equilibrium());
    outcomes.push(relative_entropy_sanity());
    outcomes.push(stress_symmetry());

    let mut failures = 0;
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {} — {}", o.name, o.detail);
        if !o.pass {
            failures += 1;
        }
    }

    // Informational: the energy is affine in the conformation slots, so its
    // reduced Hessian has a negative direction at every in-domain state.
    let eos = unit_eos();
    let cert = convexity_certificate(
        &primitive_to_conserved(&PrimitiveStateMD::reference(2)),
        &eos,
        1.0,
    )
    .unwrap();
    println!(
        "[info] convexity certificate at the reference state: min eig = {cert:.4} \
         (negative: the energy is affine in the conformation slots)"
    );

    if failures > 0 {
        Err(CliError::Runtime(format!("{failures} invariant(s) failed")))
    } else {
        println!("all {} invariants passed", outcomes.len());
        Ok(())
    }
}
