//! Closed-form single-mode emulator fits: re-learning the explicit scheme,
//! the implicit-scheme fit, and the "corrected gamma2" of the diffusion
//! ansatz.
//!
//!     cargo run --example closed_form_fits

use schemelab::advection::{multiplier as adv, AdvectionParams, AdvectionScheme};
use schemelab::diffusion::{multiplier as diff, DiffusionParams, DiffusionScheme};
use schemelab::fitting::{fit_advection_ansatz, fit_diffusion_ansatz, fit_poisson_ansatz};

fn main() -> schemelab::Result<()> {
    let (gamma1, psi) = (-3.0, 0.1);

    let explicit = adv(
        AdvectionScheme::ExplicitUpwind,
        AdvectionParams::new(gamma1, psi)?,
    );
    let fit = fit_advection_ansatz(explicit, psi)?;
    println!("explicit reference re-learns itself:");
    println!(
        "  theta0 = {:.12} (= -gamma1), theta1 = {:.12} (= gamma1 + 1)",
        fit.theta0, fit.theta1
    );

    let implicit = adv(
        AdvectionScheme::ImplicitUpwind,
        AdvectionParams::new(gamma1, psi)?,
    );
    let fit = fit_advection_ansatz(implicit, psi)?;
    println!("implicit reference at psi = {psi}:");
    println!("  theta0 = {:.6}, theta1 = {:.6}", fit.theta0, fit.theta1);
    println!(
        "  fit is exact at the trained mode: |q(psi) - r(psi)| = {:.2e}",
        (fit.multiplier(psi) - implicit).norm()
    );

    for gamma2 in [1.0, 3.0] {
        let fit = fit_diffusion_ansatz(
            diff(DiffusionScheme::Btcs, DiffusionParams::new(gamma2, psi)?),
            psi,
        )?;
        println!(
            "diffusion BTCS reference, gamma2 = {gamma2}: corrected theta = {:.6}",
            fit.theta
        );
    }

    for q in [1, 2, 5] {
        let fit = fit_poisson_ansatz(q, 0.25)?;
        println!(
            "poisson Richardson(q = {q}) at psi = 0.25: theta = {:.6}",
            fit.theta
        );
    }
    Ok(())
}
