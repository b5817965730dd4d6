//! Picard diagnostics of the implicit Burgers solver on the shock-forming
//! preset: the iteration count needed to converge the nonlinear solve and the
//! one-step error a single-iteration (P1) truncation incurs, both peaking at
//! shock formation.
//!
//!     cargo run --release --example burgers_shock

use schemelab::burgers::{picard_diagnostics, BurgersConfig};

fn main() -> schemelab::Result<()> {
    let cfg = BurgersConfig::shock_preset();
    let ic = BurgersConfig::shock_preset_ic();
    println!(
        "N = {}, dt = {:.5}, nu = {:.5} (2 nu N^2 dt = {:.3}), tolerance = {:.0e}",
        cfg.n,
        cfg.dt,
        cfg.nu,
        2.0 * cfg.nu * (cfg.n * cfg.n) as f64 * cfg.dt,
        cfg.picard_tolerance,
    );
    let diag = picard_diagnostics(&ic, &cfg, 30)?;
    println!(
        "{:>5} {:>10} {:>13} {:>15}",
        "step", "iterations", "residual", "P1 one-step err"
    );
    for s in &diag.steps {
        let bar = "*".repeat(s.picard_iterations as usize);
        println!(
            "{:>5} {:>10} {:>13.3e} {:>15.6e}  {bar}",
            s.step, s.picard_iterations, s.residual, s.one_step_nrmse
        );
    }
    let peak = diag
        .steps
        .iter()
        .max_by_key(|s| s.picard_iterations)
        .unwrap();
    println!(
        "\niteration count peaks at step {} with {} solves per step",
        peak.step, peak.picard_iterations
    );
    Ok(())
}
