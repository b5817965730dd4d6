//! How one-step superiority develops over multiple rollout steps: within the
//! stability limit it persists for many steps and eventually fades back to
//! parity with the baseline.
//!
//!     cargo run --example rollout_persistence

use schemelab::advection::{multiplier, AdvectionParams, AdvectionScheme};
use schemelab::fitting::fit_advection_ansatz;
use schemelab::superiority::{multiplier_superiority, MetricKind};

fn main() -> schemelab::Result<()> {
    let (psi, phi) = (0.1, 0.2);
    for gamma1 in [-0.5, -0.9] {
        let train = multiplier(
            AdvectionScheme::ImplicitUpwind,
            AdvectionParams::new(gamma1, psi)?,
        );
        let fit = fit_advection_ansatz(train, psi)?;
        let p = AdvectionParams::new(gamma1, phi)?;
        let baseline = multiplier(AdvectionScheme::ImplicitUpwind, p);
        let test = multiplier(AdvectionScheme::Analytic, p);
        println!("gamma1 = {gamma1}, trained at psi = {psi}, tested at phi = {phi}");
        for t in [1u32, 2, 5, 10, 20, 50, 100, 500, 1000] {
            let xi = multiplier_superiority(
                fit.multiplier(phi),
                baseline,
                test,
                t,
                MetricKind::Magnitude,
            )?
            .expect("baseline differs from test");
            println!("  xi[{t:>4}] = {xi:.8}");
        }
        println!();
    }
    Ok(())
}
