//! Inverse-Laplacian multipliers for the periodic 1D Poisson problem:
//! direct second-order finite differences, truncated Richardson iteration,
//! and the exact spectral inverse.
//!
//! The global `dx^2` factor is dropped from all three multipliers, as it only
//! rescales the solutions and cancels in every relative error; reinstate it
//! when composing with physical sources. The Richardson iteration uses the
//! maximal stable pseudo-time step `dx^2 / 2` and zero initialization, which
//! gives the per-mode iteration factor `cos(2 pi phi)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative mode `phi` in `(0, 1/2]`; mode 0 is excluded by the
/// compatibility condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonParams {
    phi: f64,
}

impl PoissonParams {
    pub fn new(phi: f64) -> Result<Self> {
        if phi == 0.0 {
            return Err(Error::SingularMode(
                "mode 0 is excluded by the compatibility condition".into(),
            ));
        }
        if !(phi > 0.0 && phi <= 0.5) {
            return Err(Error::Config(format!(
                "phi must lie in (0, 1/2], got {phi}"
            )));
        }
        Ok(Self { phi })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Solution operators for `-u'' = f`.
///
/// At phi = 1/2 the Richardson iteration factor is -1 and the q -> infinity
/// limit does not exist; the finite-q value is still reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoissonScheme {
    DirectFd,
    Richardson { iterations: u32 },
    Analytic,
}

impl PoissonScheme {
    pub fn label(&self) -> String {
        match self {
            PoissonScheme::DirectFd => "direct_fd".into(),
            PoissonScheme::Richardson { iterations } => format!("richardson_q{iterations}"),
            PoissonScheme::Analytic => "analytic".into(),
        }
    }
}

fn cos_pow(phi: f64, q: u32) -> f64 {
    // exponentiation by squaring via powi; |cos| < 1 underflows cleanly
    (2.0 * PI * phi).cos().powi(q as i32)
}

/// Real multiplier mapping `f_hat` to the (approximate) solution `u_hat`.
pub fn multiplier(kind: PoissonScheme, p: PoissonParams) -> Result<f64> {
    let phi = p.phi;
    match kind {
        PoissonScheme::Analytic => Ok(1.0 / (4.0 * PI * PI * phi * phi)),
        PoissonScheme::DirectFd => Ok(1.0 / (2.0 - 2.0 * (2.0 * PI * phi).cos())),
        PoissonScheme::Richardson { iterations } => {
            if iterations < 1 {
                return Err(Error::Config(
                    "Richardson needs at least one iteration".into(),
                ));
            }
            let c = (2.0 * PI * phi).cos();
            Ok(0.5 * ((1.0 - cos_pow(phi, iterations)) / (1.0 - c)))
        }
    }
}

/// Relative magnitude error of a numerical scheme against a baseline, via the
/// closed forms.
pub fn error(kind: PoissonScheme, p: PoissonParams, baseline: PoissonScheme) -> Result<f64> {
    let phi = p.phi;
    match (kind, baseline) {
        (PoissonScheme::DirectFd, PoissonScheme::Analytic) => {
            let s2 = (PI * phi).sin().powi(2);
            Ok(PI * PI * phi * phi / s2 - 1.0)
        }
        (PoissonScheme::Richardson { iterations }, PoissonScheme::Analytic) => {
            let c = (2.0 * PI * phi).cos();
            let damping = ((cos_pow(phi, iterations) - 1.0) / (c - 1.0)).abs();
            Ok(2.0 * PI * PI * phi * phi * damping - 1.0)
        }
        (PoissonScheme::Richardson { iterations }, PoissonScheme::DirectFd) => {
            let c = (2.0 * PI * phi).cos();
            let damping = ((cos_pow(phi, iterations) - 1.0) / (c - 1.0)).abs();
            Ok(2.0 * (PI * phi).sin().powi(2) * damping - 1.0)
        }
        _ => Err(Error::Config(format!(
            "unsupported error pair ({}, {})",
            kind.label(),
            baseline.label()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(phi: f64) -> PoissonParams {
        PoissonParams::new(phi).unwrap()
    }

    #[test]
    fn mode_zero_rejected() {
        assert!(matches!(
            PoissonParams::new(0.0),
            Err(Error::SingularMode(_))
        ));
    }

    #[test]
    fn one_sweep_is_exactly_one_half() {
        for k in 1..=100 {
            let p = params(k as f64 / 200.0);
            let m = multiplier(PoissonScheme::Richardson { iterations: 1 }, p).unwrap();
            assert_eq!(m, 0.5, "phi = {}", p.phi());
        }
    }

    #[test]
    fn hand_evaluated_quarter_mode() {
        let p = params(0.25);
        assert!((multiplier(PoissonScheme::DirectFd, p).unwrap() - 0.5).abs() < 1e-15);
        let a = multiplier(PoissonScheme::Analytic, p).unwrap();
        assert!((a - 1.0 / (PI * PI * 0.25)).abs() < 1e-15);
        assert!((a - 0.4053).abs() < 1e-4);
    }

    #[test]
    fn richardson_converges_to_direct_fd() {
        let p = params(0.3);
        let direct = multiplier(PoissonScheme::DirectFd, p).unwrap();
        let iterated = multiplier(PoissonScheme::Richardson { iterations: 10_000 }, p).unwrap();
        assert!((iterated - direct).abs() < 1e-6);
    }

    #[test]
    fn direct_fd_error_values() {
        // second-order consistency: error -> 0 as phi -> 0
        let tiny = error(
            PoissonScheme::DirectFd,
            params(1e-4),
            PoissonScheme::Analytic,
        )
        .unwrap();
        assert!(tiny.abs() < 1e-6);
        let e = error(
            PoissonScheme::DirectFd,
            params(0.25),
            PoissonScheme::Analytic,
        )
        .unwrap();
        assert!((e - (PI * PI / 8.0 - 1.0)).abs() < 1e-12);
        assert!((e - 0.2337).abs() < 1e-4);
    }

    #[test]
    fn iterative_truncation_error_is_minus_cos_pow() {
        // (|iota_q| - |beta|)/|beta| collapses to -cos^q(2 pi phi)
        for &q in &[1u32, 3, 8] {
            for k in 1..=99 {
                let phi = k as f64 / 200.0;
                let e = error(
                    PoissonScheme::Richardson { iterations: q },
                    params(phi),
                    PoissonScheme::DirectFd,
                )
                .unwrap();
                assert!((e + (2.0 * PI * phi).cos().powi(q as i32)).abs() < 1e-12);
            }
        }
        // deficit closes as q grows, for phi away from Nyquist
        let late = error(
            PoissonScheme::Richardson { iterations: 400 },
            params(0.2),
            PoissonScheme::DirectFd,
        )
        .unwrap();
        assert!(late.abs() < 1e-12);
    }

    #[test]
    fn closed_form_errors_match_multipliers() {
        for &q in &[1u32, 2, 5, 40] {
            for k in 1..=99 {
                let p = params(k as f64 / 200.0);
                let a = multiplier(PoissonScheme::Analytic, p).unwrap();
                let d = multiplier(PoissonScheme::DirectFd, p).unwrap();
                let r = multiplier(PoissonScheme::Richardson { iterations: q }, p).unwrap();

                let e1 = error(PoissonScheme::DirectFd, p, PoissonScheme::Analytic).unwrap();
                assert!((e1 - (d - a) / a).abs() < 1e-10 * e1.abs().max(1.0));

                let e2 = error(
                    PoissonScheme::Richardson { iterations: q },
                    p,
                    PoissonScheme::Analytic,
                )
                .unwrap();
                assert!(((r - a) / a - e2).abs() < 1e-10 * e2.abs().max(1.0));
            }
        }
    }

    #[test]
    fn invalid_error_pairs_rejected() {
        let p = params(0.2);
        assert!(error(PoissonScheme::DirectFd, p, PoissonScheme::DirectFd).is_err());
        assert!(error(PoissonScheme::Analytic, p, PoissonScheme::Analytic).is_err());
    }

    #[test]
    fn richardson_monotone_in_q_on_smooth_half() {
        // the iteration factor cos(2 pi phi) is nonnegative for phi <= 1/4,
        // so the multiplier grows monotonically toward the direct solution
        for k in 1..=25 {
            let p = params(k as f64 / 100.0);
            let mut prev = 0.0;
            for q in 1..=30 {
                let m = multiplier(PoissonScheme::Richardson { iterations: q }, p).unwrap();
                assert!(m >= prev - 1e-15, "phi={} q={q}", p.phi());
                prev = m;
            }
        }
    }

    // For odd q and cos(2 pi phi) < 0 the truncated sum overshoots the direct
    // solution, so the bound holds for even q everywhere and for all q on the
    // smooth half phi <= 1/4.
    #[test]
    fn richardson_bounded_by_direct_fd() {
        for k in 1..=99 {
            let p = params(k as f64 / 200.0);
            let d = multiplier(PoissonScheme::DirectFd, p).unwrap();
            for q in [2u32, 4, 10, 40] {
                let m = multiplier(PoissonScheme::Richardson { iterations: q }, p).unwrap();
                assert!(m <= d + 1e-12, "even q={q} phi={}", p.phi());
            }
        }
        for k in 1..=50 {
            let p = params(k as f64 / 200.0);
            let d = multiplier(PoissonScheme::DirectFd, p).unwrap();
            for q in 1..=15 {
                let m = multiplier(PoissonScheme::Richardson { iterations: q }, p).unwrap();
                assert!(m <= d + 1e-12, "q={q} phi={}", p.phi());
            }
        }
    }

    #[test]
    fn all_multipliers_positive() {
        for k in 1..=100 {
            let p = params(k as f64 / 200.0);
            assert!(multiplier(PoissonScheme::Analytic, p).unwrap() > 0.0);
            assert!(multiplier(PoissonScheme::DirectFd, p).unwrap() > 0.0);
            assert!(multiplier(PoissonScheme::Richardson { iterations: 7 }, p).unwrap() > 0.0);
        }
    }
}
