//! Trajectory-level superiority: the fitted kernel emulator, the implicit
//! solver, and the analytic solver are rolled out in state space from seeded
//! single-mode initial conditions and compared by mean nRMSE per step.
//!
//!     cargo run --example trajectory_superiority

use schemelab::advection::{multiplier, AdvectionParams, AdvectionScheme};
use schemelab::fitting::fit_advection_ansatz;
use schemelab::initial_conditions::{IcSpec, Law, ModeLaw};
use schemelab::superiority::{
    kernel_rollout, spectral_rollout, trajectory_superiority, TrajectorySet,
};

fn main() -> schemelab::Result<()> {
    let gamma1 = -0.9;
    let n = 100;
    let (train_mode, test_mode) = (10, 20); // psi = 0.1, phi = 0.2
    let steps = 50;

    let psi = train_mode as f64 / n as f64;
    let fit = fit_advection_ansatz(
        multiplier(
            AdvectionScheme::ImplicitUpwind,
            AdvectionParams::new(gamma1, psi)?,
        ),
        psi,
    )?;
    let mults = |kind: AdvectionScheme| -> schemelab::Result<Vec<_>> {
        (0..=n / 2)
            .map(|m| {
                Ok(multiplier(
                    kind,
                    AdvectionParams::new(gamma1, m as f64 / n as f64)?,
                ))
            })
            .collect()
    };
    let implicit = mults(AdvectionScheme::ImplicitUpwind)?;
    let analytic = mults(AdvectionScheme::Analytic)?;

    let ics = IcSpec::new(
        n,
        vec![ModeLaw {
            mode: test_mode,
            amplitude: Law::Uniform { lo: 0.5, hi: 2.0 },
            phase: Law::Uniform {
                lo: 0.0,
                hi: 2.0 * std::f64::consts::PI,
            },
        }],
        Law::Fixed(0.0),
        42,
    )?
    .generate(10)?;

    let mut emulator = Vec::new();
    let mut baseline = Vec::new();
    let mut reference = Vec::new();
    for ic in &ics {
        emulator.push(kernel_rollout(ic, &fit.kernel(), steps));
        baseline.push(spectral_rollout(ic, &implicit, steps)?);
        reference.push(spectral_rollout(ic, &analytic, steps)?);
    }
    let result = trajectory_superiority(
        &TrajectorySet::new(emulator)?,
        &TrajectorySet::new(baseline)?,
        &TrajectorySet::new(reference)?,
    )?;

    println!("trained at psi = {psi}, 10 ICs on mode {test_mode}, gamma1 = {gamma1}");
    println!(
        "{:>4} {:>10} {:>12} {:>12}",
        "t", "xi", "emu nRMSE", "base nRMSE"
    );
    for s in result.steps.iter().step_by(5) {
        println!(
            "{:>4} {:>10.4} {:>12.4e} {:>12.4e}",
            s.t,
            s.xi.unwrap_or(f64::NAN),
            s.num_err,
            s.den_err
        );
    }
    Ok(())
}
