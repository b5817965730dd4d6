//! Magnitude and phase error curves of the explicit and implicit upwind
//! advection schemes against the exact transport multiplier.
//!
//!     cargo run --example scheme_errors

use schemelab::advection::{magnitude_error, phase_error, AdvectionParams, AdvectionScheme};

fn main() -> schemelab::Result<()> {
    for gamma1 in [-0.5, -0.9, -1.0] {
        println!("gamma1 = {gamma1}");
        println!(
            "{:>6} {:>14} {:>14} {:>14} {:>14}",
            "phi", "mag(expl)", "mag(impl)", "phase(expl)", "phase(impl)"
        );
        for k in 1..=9 {
            let phi = k as f64 / 20.0;
            let p = AdvectionParams::new(gamma1, phi)?;
            println!(
                "{phi:>6.2} {:>14.6} {:>14.6} {:>14.6} {:>14.6}",
                magnitude_error(AdvectionScheme::ExplicitUpwind, p)?,
                magnitude_error(AdvectionScheme::ImplicitUpwind, p)?,
                phase_error(AdvectionScheme::ExplicitUpwind, p)?,
                phase_error(AdvectionScheme::ImplicitUpwind, p)?,
            );
        }
        println!();
    }
    println!("at gamma1 = -1 the explicit scheme transports exactly: both error rows vanish");
    Ok(())
}
