//! Convergence of the truncated Richardson iteration toward the direct
//! finite-difference inverse Laplacian: high modes are damped after a few
//! sweeps, low modes take many.
//!
//!     cargo run --example poisson_richardson

use schemelab::poisson::{error, multiplier, PoissonParams, PoissonScheme};

fn main() -> schemelab::Result<()> {
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "phi", "q=1", "q=4", "q=16", "q=256", "direct"
    );
    for k in 1..=9 {
        let phi = k as f64 / 20.0;
        let p = PoissonParams::new(phi)?;
        let at = |q| multiplier(PoissonScheme::Richardson { iterations: q }, p);
        println!(
            "{phi:>6.2} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            at(1)?,
            at(4)?,
            at(16)?,
            at(256)?,
            multiplier(PoissonScheme::DirectFd, p)?,
        );
    }
    println!();
    println!("relative error vs the direct solution (equals -cos^q(2 pi phi)):");
    for q in [1, 4, 16] {
        let lo = error(
            PoissonScheme::Richardson { iterations: q },
            PoissonParams::new(0.05)?,
            PoissonScheme::DirectFd,
        )?;
        let hi = error(
            PoissonScheme::Richardson { iterations: q },
            PoissonParams::new(0.45)?,
            PoissonScheme::DirectFd,
        )?;
        println!("  q = {q:>3}: phi=0.05 -> {lo:>10.6}, phi=0.45 -> {hi:>10.6}");
    }
    println!();
    println!(
        "direct FD vs the exact inverse at phi = 0.25: {:.6} (= pi^2/8 - 1)",
        error(
            PoissonScheme::DirectFd,
            PoissonParams::new(0.25)?,
            PoissonScheme::Analytic
        )?
    );
    Ok(())
}
