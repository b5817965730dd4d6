//! Least-squares training on multi-mode data, evaluated at test mode 5:
//! superiority persists while the training modes stay below the test mode and
//! vanishes once they grow past it.
//!
//!     cargo run --example multimode_trend

use schemelab::advection::{multiplier, AdvectionParams, AdvectionScheme};
use schemelab::fitting::{least_squares_fit_advection, ModeDataset};
use schemelab::superiority::{multiplier_superiority, MetricKind};

fn main() -> schemelab::Result<()> {
    let gamma1 = -3.0;
    let n = 50;
    let test_mode = 5;
    let implicit = |phi: f64| {
        multiplier(
            AdvectionScheme::ImplicitUpwind,
            AdvectionParams::new(gamma1, phi).unwrap(),
        )
    };

    let sets: Vec<Vec<usize>> = vec![
        vec![1],
        vec![1, 2],
        vec![3, 4],
        (1..=4).collect(),
        (1..=5).collect(),
        (1..=7).collect(),
        (1..=10).collect(),
        (1..=20).collect(),
        vec![4, 6],
    ];
    println!("gamma1 = {gamma1}, N = {n}, test mode {test_mode}, uniform unit energy per mode");
    println!("{:<22} {:>8}", "train modes", "xi");
    for modes in sets {
        let ds = ModeDataset::uniform(&modes, n)?;
        let fit = least_squares_fit_advection(&ds, implicit)?;
        let phi = test_mode as f64 / n as f64;
        let p = AdvectionParams::new(gamma1, phi)?;
        let xi = multiplier_superiority(
            fit.multiplier(phi),
            multiplier(AdvectionScheme::ImplicitUpwind, p),
            multiplier(AdvectionScheme::Analytic, p),
            1,
            MetricKind::Magnitude,
        )?
        .expect("baseline differs from test");
        println!("{:<22} {xi:>8.3}", format!("{modes:?}"));
    }
    Ok(())
}
