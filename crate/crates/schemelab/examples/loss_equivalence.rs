//! Supervised one-step loss vs discrete-residual loss: identical for explicit
//! schemes, a constant |a_M|^2 rescaling for single-mode data under an
//! implicit scheme.
//!
//!     cargo run --example loss_equivalence

use num_complex::Complex64;
use schemelab::advection::{multiplier, AdvectionParams, AdvectionScheme};
use schemelab::fitting::{supervised_vs_residual_losses, AdvectionAnsatz, ModeDataset};

fn main() -> schemelab::Result<()> {
    let gamma1 = -2.0;
    let n = 64;
    let one = |_phi: f64| Complex64::new(1.0, 0.0);
    let explicit = |phi: f64| {
        multiplier(
            AdvectionScheme::ExplicitUpwind,
            AdvectionParams::new(gamma1, phi).unwrap(),
        )
    };
    // implicit scheme as A u' = u with a = 1 - gamma1 + gamma1 e^{-i 2 pi phi}
    let a_op = |phi: f64| {
        1.0 - gamma1 + gamma1 * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * phi)
    };

    let ansatz = AdvectionAnsatz {
        theta0: 0.8,
        theta1: 0.1,
    };

    let multi = ModeDataset::new(vec![(2, 1.0), (7, 0.5), (13, 2.0)], n)?;
    let (sup, res) = supervised_vs_residual_losses(&ansatz, &multi, one, explicit)?;
    println!("explicit scheme, multi-mode data: L_sup = {sup:.10e}");
    println!("                                  L_res = {res:.10e}  (identical)");

    let mode = 9;
    let single = ModeDataset::new(vec![(mode, 1.0)], n)?;
    let (sup, res) = supervised_vs_residual_losses(&ansatz, &single, a_op, one)?;
    let a_m2 = a_op(mode as f64 / n as f64).norm_sqr();
    println!(
        "implicit scheme, single mode {mode}: L_res / L_sup = {:.12}",
        res / sup
    );
    println!("                                   |a_M|^2       = {a_m2:.12}");
    Ok(())
}
