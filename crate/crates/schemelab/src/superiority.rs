//! One-step, multi-step, and trajectory-level superiority ratios, plus
//! (psi, phi) sweep maps.
//!
//! The ratio compares the emulator's error against the baseline's error, both
//! measured against a higher-fidelity test reference; a value below 1 means
//! the fitted emulator beats the solver it was trained on. Cells where the
//! ratio is undefined (zero denominator, degenerate fit) carry an explicit
//! sentinel that serializes as an empty CSV field.

use num_complex::Complex64;
use rayon::prelude::*;
use std::io::Write;

use crate::advection::{self, AdvectionParams, AdvectionScheme};
use crate::diffusion::{self, DiffusionParams, DiffusionScheme};
use crate::error::{Error, Result};
use crate::fitting;
use crate::poisson::{self, PoissonParams, PoissonScheme};
use crate::spectral::{self, GridState, Kernel3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Magnitude,
    Phase,
    TrajectoryNrmse,
}

impl MetricKind {
    pub fn label(&self) -> &'static str {
        match self {
            MetricKind::Magnitude => "magnitude",
            MetricKind::Phase => "phase",
            MetricKind::TrajectoryNrmse => "trajectory_nrmse",
        }
    }
}

/// Superiority of one multiplier triple after `t` steps.
///
/// Magnitude: `|(|q|^t - |test|^t) / (|base|^t - |test|^t)|`. Phase: the
/// arguments accumulate linearly as `t arg(.)`, which avoids branch-cut wrap
/// artifacts of `arg(q^t)`. Returns `None` when the baseline and the test
/// reference coincide under the metric (zero denominator).
pub fn multiplier_superiority(
    emulator: Complex64,
    baseline: Complex64,
    test: Complex64,
    t: u32,
    metric: MetricKind,
) -> Result<Option<f64>> {
    if t == 0 {
        return Err(Error::Config("rollout step t must be positive".into()));
    }
    let (num, den) = match metric {
        MetricKind::Magnitude => {
            let tp = t as i32;
            (
                emulator.norm().powi(tp) - test.norm().powi(tp),
                baseline.norm().powi(tp) - test.norm().powi(tp),
            )
        }
        MetricKind::Phase => {
            let tf = t as f64;
            (
                tf * (emulator.arg() - test.arg()),
                tf * (baseline.arg() - test.arg()),
            )
        }
        MetricKind::TrajectoryNrmse => {
            return Err(Error::Config(
                "trajectory nRMSE requires trajectory sets, not multipliers".into(),
            ))
        }
    };
    if den == 0.0 {
        return Ok(None);
    }
    let xi = (num / den).abs();
    Ok(if xi.is_finite() { Some(xi) } else { None })
}

/// Problem family and reference triple for a sweep map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapProblem {
    Advection {
        gamma1: f64,
        train: AdvectionScheme,
        baseline: AdvectionScheme,
        test: AdvectionScheme,
    },
    Diffusion {
        gamma2: f64,
        train: DiffusionScheme,
        baseline: DiffusionScheme,
        test: DiffusionScheme,
    },
    Poisson {
        train: PoissonScheme,
        baseline: PoissonScheme,
        test: PoissonScheme,
    },
}

impl MapProblem {
    fn validate(&self) -> Result<()> {
        let clash = match self {
            MapProblem::Advection { baseline, test, .. } => baseline == test,
            MapProblem::Diffusion { baseline, test, .. } => baseline == test,
            MapProblem::Poisson { baseline, test, .. } => baseline == test,
        };
        if clash {
            return Err(Error::Config(
                "baseline and test reference coincide; every cell would be undefined".into(),
            ));
        }
        if let MapProblem::Advection { gamma1, .. } = self {
            AdvectionParams::new(*gamma1, 0.25)?;
        }
        if let MapProblem::Diffusion { gamma2, .. } = self {
            DiffusionParams::new(*gamma2, 0.25)?;
        }
        Ok(())
    }

    fn labels(&self) -> (String, String, String) {
        match self {
            MapProblem::Advection {
                train,
                baseline,
                test,
                ..
            } => (
                train.label().into(),
                baseline.label().into(),
                test.label().into(),
            ),
            MapProblem::Diffusion {
                train,
                baseline,
                test,
                ..
            } => (
                train.label().into(),
                baseline.label().into(),
                test.label().into(),
            ),
            MapProblem::Poisson {
                train,
                baseline,
                test,
            } => (train.label(), baseline.label(), test.label()),
        }
    }

    fn gamma(&self) -> Option<f64> {
        match self {
            MapProblem::Advection { gamma1, .. } => Some(*gamma1),
            MapProblem::Diffusion { gamma2, .. } => Some(*gamma2),
            MapProblem::Poisson { .. } => None,
        }
    }

    fn iterations(&self) -> Option<u32> {
        match self {
            MapProblem::Poisson {
                train, baseline, ..
            } => {
                for scheme in [train, baseline] {
                    if let PoissonScheme::Richardson { iterations } = scheme {
                        return Some(*iterations);
                    }
                }
                None
            }
            _ => None,
        }
    }

    /// One map cell: fit the ansatz on the training reference at `psi`,
    /// evaluate the ratio at `phi`.
    fn cell(&self, psi: f64, phi: f64, t: u32, metric: MetricKind) -> Option<f64> {
        match *self {
            MapProblem::Advection {
                gamma1,
                train,
                baseline,
                test,
            } => {
                let at = |kind, mode| {
                    AdvectionParams::new(gamma1, mode)
                        .map(|p| advection::multiplier(kind, p))
                        .ok()
                };
                let fit = fitting::fit_advection_ansatz(at(train, psi)?, psi).ok()?;
                multiplier_superiority(
                    fit.multiplier(phi),
                    at(baseline, phi)?,
                    at(test, phi)?,
                    t,
                    metric,
                )
                .ok()
                .flatten()
            }
            MapProblem::Diffusion {
                gamma2,
                train,
                baseline,
                test,
            } => {
                let at = |kind, mode| {
                    DiffusionParams::new(gamma2, mode)
                        .map(|p| diffusion::multiplier(kind, p))
                        .ok()
                };
                let fit = fitting::fit_diffusion_ansatz(at(train, psi)?, psi).ok()?;
                multiplier_superiority(
                    fit.multiplier(phi).into(),
                    at(baseline, phi)?.into(),
                    at(test, phi)?.into(),
                    t,
                    metric,
                )
                .ok()
                .flatten()
            }
            MapProblem::Poisson {
                train,
                baseline,
                test,
            } => {
                let at = |kind, mode| {
                    PoissonParams::new(mode)
                        .ok()
                        .and_then(|p| poisson::multiplier(kind, p).ok())
                };
                let fit = fitting::fit_poisson_ansatz_general(at(train, psi)?, psi).ok()?;
                multiplier_superiority(
                    fit.multiplier(phi).ok()?.into(),
                    at(baseline, phi)?.into(),
                    at(test, phi)?.into(),
                    t,
                    metric,
                )
                .ok()
                .flatten()
            }
        }
    }
}

/// Map metadata carried alongside the cell values.
#[derive(Debug, Clone, PartialEq)]
pub struct MapMeta {
    pub gamma: Option<f64>,
    pub iterations: Option<u32>,
    pub t: u32,
    pub metric: MetricKind,
    pub train_ref: String,
    pub baseline_ref: String,
    pub test_ref: String,
}

/// Grid of superiority values over (psi, phi); `values[i][j]` belongs to
/// `(psi_grid[i], phi_grid[j])`. `None` marks an undefined cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperiorityMap {
    pub psi_grid: Vec<f64>,
    pub phi_grid: Vec<f64>,
    pub values: Vec<Vec<Option<f64>>>,
    pub meta: MapMeta,
}

impl SuperiorityMap {
    pub fn cell(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i][j]
    }

    /// One row per cell, sentinel cells leave `xi` empty. `config` is written
    /// as a leading comment line.
    pub fn write_csv<W: Write>(&self, mut w: W, config: &str) -> std::io::Result<()> {
        writeln!(w, "# {config}")?;
        writeln!(
            w,
            "psi,phi,gamma,q,t,metric,train_ref,baseline_ref,test_ref,xi"
        )?;
        let gamma = self.meta.gamma.map(|g| g.to_string()).unwrap_or_default();
        let q = self
            .meta
            .iterations
            .map(|q| q.to_string())
            .unwrap_or_default();
        for (i, &psi) in self.psi_grid.iter().enumerate() {
            for (j, &phi) in self.phi_grid.iter().enumerate() {
                let xi = self.values[i][j].map(|x| x.to_string()).unwrap_or_default();
                writeln!(
                    w,
                    "{psi},{phi},{gamma},{q},{},{},{},{},{},{xi}",
                    self.meta.t,
                    self.meta.metric.label(),
                    self.meta.train_ref,
                    self.meta.baseline_ref,
                    self.meta.test_ref,
                )?;
            }
        }
        Ok(())
    }
}

/// Default sweep grid: 49 uniformly spaced modes in [0.01, 0.49].
pub fn default_mode_grid() -> Vec<f64> {
    (1..=49).map(|i| i as f64 / 100.0).collect()
}

/// Fits the ansatz at every `psi` on the training reference and evaluates the
/// ratio at every `phi`. Rows are computed in parallel; the output ordering
/// is deterministic.
pub fn superiority_map(
    problem: MapProblem,
    psi_grid: &[f64],
    phi_grid: &[f64],
    t: u32,
    metric: MetricKind,
) -> Result<SuperiorityMap> {
    problem.validate()?;
    if t == 0 {
        return Err(Error::Config("rollout step t must be positive".into()));
    }
    for &v in psi_grid.iter().chain(phi_grid) {
        if !(v > 0.0 && v < 0.5) {
            return Err(Error::Config(format!(
                "grid modes must lie in (0, 1/2), got {v}"
            )));
        }
    }
    let values: Vec<Vec<Option<f64>>> = psi_grid
        .par_iter()
        .map(|&psi| {
            phi_grid
                .iter()
                .map(|&phi| problem.cell(psi, phi, t, metric))
                .collect()
        })
        .collect();
    let (train_ref, baseline_ref, test_ref) = problem.labels();
    Ok(SuperiorityMap {
        psi_grid: psi_grid.to_vec(),
        phi_grid: phi_grid.to_vec(),
        values,
        meta: MapMeta {
            gamma: problem.gamma(),
            iterations: problem.iterations(),
            t,
            metric,
            train_ref,
            baseline_ref,
            test_ref,
        },
    })
}

/// Root-mean-square error of `pred` normalized by the RMS of `reference`.
pub fn nrmse(pred: &GridState, reference: &GridState) -> Result<f64> {
    if pred.n() != reference.n() {
        return Err(Error::ShapeMismatch(format!(
            "prediction has {} nodes, reference {}",
            pred.n(),
            reference.n()
        )));
    }
    let n = pred.n() as f64;
    let err: f64 = pred
        .values()
        .iter()
        .zip(reference.values())
        .map(|(p, r)| (p - r) * (p - r))
        .sum();
    let norm: f64 = reference.values().iter().map(|r| r * r).sum();
    if norm == 0.0 {
        return Err(Error::UndefinedMetric(
            "reference state is identically zero".into(),
        ));
    }
    Ok((err / n).sqrt() / (norm / n).sqrt())
}

/// Trajectories sharing one grid resolution and length.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySet {
    trajectories: Vec<Vec<GridState>>,
}

impl TrajectorySet {
    pub fn new(trajectories: Vec<Vec<GridState>>) -> Result<Self> {
        let first = trajectories
            .first()
            .and_then(|t| t.first())
            .ok_or_else(|| Error::Config("trajectory set must not be empty".into()))?;
        let (n, len) = (first.n(), trajectories[0].len());
        if len < 2 {
            return Err(Error::Config(
                "trajectories need at least one transition".into(),
            ));
        }
        for traj in &trajectories {
            if traj.len() != len {
                return Err(Error::ShapeMismatch("trajectory lengths differ".into()));
            }
            if traj.iter().any(|s| s.n() != n) {
                return Err(Error::ShapeMismatch("grid resolutions differ".into()));
            }
        }
        Ok(Self { trajectories })
    }

    pub fn trajectories(&self) -> &[Vec<GridState>] {
        &self.trajectories
    }

    /// Number of transitions S (states per trajectory minus one).
    pub fn steps(&self) -> usize {
        self.trajectories[0].len() - 1
    }
}

/// Per-step ratio with its numerator and denominator errors.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRatio {
    pub t: usize,
    pub xi: Option<f64>,
    pub num_err: f64,
    pub den_err: f64,
}

/// Rollout superiority with the expectation taken before the ratio: mean of
/// per-trajectory nRMSE at each step, then the quotient of the means.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySuperiority {
    pub steps: Vec<StepRatio>,
}

impl TrajectorySuperiority {
    pub fn write_csv<W: Write>(&self, mut w: W, config: &str) -> std::io::Result<()> {
        writeln!(w, "# {config}")?;
        writeln!(w, "t,xi,num_err,den_err")?;
        for s in &self.steps {
            let xi = s.xi.map(|x| x.to_string()).unwrap_or_default();
            writeln!(w, "{},{xi},{},{}", s.t, s.num_err, s.den_err)?;
        }
        Ok(())
    }
}

/// `xi[t] = mean_j nrmse(emulator_j[t], reference_j[t]) /
///          mean_j nrmse(baseline_j[t], reference_j[t])` for `t = 1..=S`.
pub fn trajectory_superiority(
    emulator: &TrajectorySet,
    baseline: &TrajectorySet,
    reference: &TrajectorySet,
) -> Result<TrajectorySuperiority> {
    let count = emulator.trajectories.len();
    if baseline.trajectories.len() != count || reference.trajectories.len() != count {
        return Err(Error::ShapeMismatch(
            "trajectory sets have different sizes".into(),
        ));
    }
    let steps = emulator.steps();
    if baseline.steps() != steps || reference.steps() != steps {
        return Err(Error::ShapeMismatch(
            "trajectory sets have different lengths".into(),
        ));
    }
    let mut out = Vec::with_capacity(steps);
    for t in 1..=steps {
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..count {
            num += nrmse(&emulator.trajectories[j][t], &reference.trajectories[j][t])?;
            den += nrmse(&baseline.trajectories[j][t], &reference.trajectories[j][t])?;
        }
        num /= count as f64;
        den /= count as f64;
        let xi = if den == 0.0 {
            None
        } else {
            let v = num / den;
            v.is_finite().then_some(v)
        };
        out.push(StepRatio {
            t,
            xi,
            num_err: num,
            den_err: den,
        });
    }
    Ok(TrajectorySuperiority { steps: out })
}

/// Rolls a state forward by element-wise multiplication in Fourier space;
/// returns S+1 states starting with the initial condition.
pub fn spectral_rollout(
    ic: &GridState,
    multiplier: &[Complex64],
    steps: usize,
) -> Result<Vec<GridState>> {
    let mut spec = spectral::rfft(ic)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(ic.clone());
    for _ in 0..steps {
        spec = spectral::apply_multiplier(&spec, multiplier)?;
        out.push(spectral::irfft(&spec)?);
    }
    Ok(out)
}

/// Rolls a state forward by repeated periodic cross-correlation.
pub fn kernel_rollout(ic: &GridState, kernel: &Kernel3, steps: usize) -> Vec<GridState> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(ic.clone());
    for _ in 0..steps {
        let next = spectral::circular_cross_correlate(kernel, out.last().unwrap());
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitting::{fit_advection_ansatz, fit_diffusion_ansatz};
    use std::f64::consts::PI;

    fn adv(kind: AdvectionScheme, g: f64, phi: f64) -> Complex64 {
        advection::multiplier(kind, AdvectionParams::new(g, phi).unwrap())
    }

    #[test]
    fn emulator_equal_to_baseline_gives_one() {
        let b = Complex64::new(0.7, -0.2);
        let test = Complex64::new(0.95, 0.1);
        for metric in [MetricKind::Magnitude, MetricKind::Phase] {
            let xi = multiplier_superiority(b, b, test, 3, metric)
                .unwrap()
                .unwrap();
            assert_eq!(xi, 1.0);
        }
    }

    #[test]
    fn baseline_equal_to_test_is_sentinel() {
        let b = Complex64::new(0.7, -0.2);
        let e = Complex64::new(0.5, 0.0);
        assert!(multiplier_superiority(e, b, b, 1, MetricKind::Magnitude)
            .unwrap()
            .is_none());
    }

    #[test]
    fn hand_derived_forward_superiority_cell() {
        let (g, psi, phi) = (-3.0, 0.1, 0.3);
        let fit = fit_advection_ansatz(adv(AdvectionScheme::ImplicitUpwind, g, psi), psi).unwrap();
        let xi = multiplier_superiority(
            fit.multiplier(phi),
            adv(AdvectionScheme::ImplicitUpwind, g, phi),
            adv(AdvectionScheme::Analytic, g, phi),
            1,
            MetricKind::Magnitude,
        )
        .unwrap()
        .unwrap();
        assert!((xi - 0.482).abs() < 1e-3, "xi = {xi}");
        // the hand evaluation: |0.6023 - 1| / |0.1756 - 1|
        assert!((fit.multiplier(phi).norm() - 0.6023).abs() < 1e-4);
        assert!((adv(AdvectionScheme::ImplicitUpwind, g, phi).norm() - 0.1756).abs() < 1e-4);
    }

    #[test]
    fn trained_mode_cell_is_exactly_one() {
        let grid = [0.1, 0.25, 0.4];
        let problems = [
            MapProblem::Advection {
                gamma1: -3.0,
                train: AdvectionScheme::ImplicitUpwind,
                baseline: AdvectionScheme::ImplicitUpwind,
                test: AdvectionScheme::Analytic,
            },
            MapProblem::Diffusion {
                gamma2: 1.5,
                train: DiffusionScheme::Btcs,
                baseline: DiffusionScheme::Btcs,
                test: DiffusionScheme::Analytic,
            },
            MapProblem::Poisson {
                train: PoissonScheme::Richardson { iterations: 5 },
                baseline: PoissonScheme::Richardson { iterations: 5 },
                test: PoissonScheme::Analytic,
            },
        ];
        for problem in problems {
            let map = superiority_map(problem, &grid, &grid, 1, MetricKind::Magnitude).unwrap();
            for (i, _) in grid.iter().enumerate() {
                let xi = map.cell(i, i).unwrap();
                assert!((xi - 1.0).abs() < 1e-10, "{problem:?} diag cell {i}: {xi}");
            }
        }
    }

    #[test]
    fn advection_forward_superiority_region() {
        let map = superiority_map(
            MapProblem::Advection {
                gamma1: -3.0,
                train: AdvectionScheme::ImplicitUpwind,
                baseline: AdvectionScheme::ImplicitUpwind,
                test: AdvectionScheme::Analytic,
            },
            &default_mode_grid(),
            &default_mode_grid(),
            1,
            MetricKind::Magnitude,
        )
        .unwrap();
        let grid = default_mode_grid();
        let mut forward_below = 0;
        let mut backward_below = 0;
        let mut forward_strong = 0;
        let mut backward_strong = 0;
        for (i, &psi) in grid.iter().enumerate() {
            for (j, &phi) in grid.iter().enumerate() {
                let Some(xi) = map.cell(i, j) else { continue };
                if phi > psi {
                    forward_below += (xi < 1.0) as usize;
                    forward_strong += (xi < 0.5) as usize;
                } else if phi < psi {
                    backward_below += (xi < 1.0) as usize;
                    backward_strong += (xi < 0.5) as usize;
                }
            }
        }
        // superiority occurs forwardly: every deep cell sits at phi > psi
        assert!(
            forward_below > backward_below,
            "{forward_below} vs {backward_below}"
        );
        assert!(
            forward_strong >= 50,
            "only {forward_strong} strong forward cells"
        );
        assert_eq!(
            backward_strong, 0,
            "{backward_strong} strong backward cells"
        );
    }

    // The deep-superiority cells (xi < 0.25) of the Poisson map concentrate
    // at phi < psi; mild cells below 1 also appear forward of the trained
    // mode, so the count is restricted to the strong region.
    #[test]
    fn poisson_backward_superiority_concentration() {
        let map = superiority_map(
            MapProblem::Poisson {
                train: PoissonScheme::Richardson { iterations: 5 },
                baseline: PoissonScheme::Richardson { iterations: 5 },
                test: PoissonScheme::Analytic,
            },
            &default_mode_grid(),
            &default_mode_grid(),
            1,
            MetricKind::Magnitude,
        )
        .unwrap();
        let grid = default_mode_grid();
        let mut backward = 0;
        let mut forward = 0;
        for (i, &psi) in grid.iter().enumerate() {
            for (j, &phi) in grid.iter().enumerate() {
                if map.cell(i, j).is_some_and(|x| x < 0.25) {
                    if phi < psi {
                        backward += 1;
                    } else if phi > psi {
                        forward += 1;
                    }
                }
            }
        }
        assert!(
            backward > forward,
            "backward {backward} vs forward {forward}"
        );
    }

    #[test]
    fn map_has_no_negative_or_nan_cells() {
        let map = superiority_map(
            MapProblem::Diffusion {
                gamma2: 3.0,
                train: DiffusionScheme::Btcs,
                baseline: DiffusionScheme::Btcs,
                test: DiffusionScheme::Analytic,
            },
            &default_mode_grid(),
            &default_mode_grid(),
            1,
            MetricKind::Magnitude,
        )
        .unwrap();
        for row in &map.values {
            for cell in row.iter().flatten() {
                assert!(cell.is_finite() && *cell >= 0.0);
            }
        }
    }

    #[test]
    fn coinciding_baseline_and_test_rejected() {
        let err = superiority_map(
            MapProblem::Advection {
                gamma1: -1.0,
                train: AdvectionScheme::ImplicitUpwind,
                baseline: AdvectionScheme::Analytic,
                test: AdvectionScheme::Analytic,
            },
            &[0.1],
            &[0.2],
            1,
            MetricKind::Magnitude,
        );
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn nrmse_basics() {
        let r = GridState::new(vec![1.0, -1.0, 1.0, -1.0]).unwrap();
        assert_eq!(nrmse(&r, &r).unwrap(), 0.0);
        let double = GridState::new(r.values().iter().map(|v| 2.0 * v).collect()).unwrap();
        assert!((nrmse(&double, &r).unwrap() - 1.0).abs() < 1e-15);
        // unit-RMS reference shifted by a constant e
        let shifted = GridState::new(r.values().iter().map(|v| v + 0.3).collect()).unwrap();
        assert!((nrmse(&shifted, &r).unwrap() - 0.3).abs() < 1e-15);
        let zero = GridState::zeros(4);
        assert!(matches!(nrmse(&r, &zero), Err(Error::UndefinedMetric(_))));
    }

    fn single_mode_state(n: usize, mode: usize, amp: f64, phase: f64) -> GridState {
        GridState::new(
            (0..n)
                .map(|i| amp * (2.0 * PI * mode as f64 * i as f64 / n as f64 - phase).sin())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn trajectory_trivial_cases() {
        let ic = single_mode_state(16, 2, 1.0, 0.4);
        let mult: Vec<Complex64> = (0..=8)
            .map(|m| adv(AdvectionScheme::ImplicitUpwind, -1.0, m as f64 / 16.0))
            .collect();
        let a = TrajectorySet::new(vec![spectral_rollout(&ic, &mult, 5).unwrap()]).unwrap();
        let reference = TrajectorySet::new(vec![spectral_rollout(
            &ic,
            &(0..=8)
                .map(|m| adv(AdvectionScheme::Analytic, -1.0, m as f64 / 16.0))
                .collect::<Vec<_>>(),
            5,
        )
        .unwrap()])
        .unwrap();

        let same = trajectory_superiority(&a, &a, &reference).unwrap();
        assert!(same.steps.iter().all(|s| s.xi == Some(1.0)));

        let degenerate = trajectory_superiority(&a, &reference, &reference).unwrap();
        assert!(degenerate.steps.iter().all(|s| s.xi.is_none()));
    }

    #[test]
    fn trajectory_ratio_invariant_under_rescaling() {
        let n = 32;
        let ic = single_mode_state(n, 3, 1.3, 0.2);
        let g = -2.0;
        let fit = fit_advection_ansatz(
            adv(AdvectionScheme::ImplicitUpwind, g, 3.0 / n as f64),
            3.0 / n as f64,
        )
        .unwrap();
        let modes = |kind| {
            (0..=n / 2)
                .map(|m| adv(kind, g, m as f64 / n as f64))
                .collect::<Vec<_>>()
        };
        let scale = |set: &TrajectorySet, c: f64| {
            TrajectorySet::new(
                set.trajectories()
                    .iter()
                    .map(|traj| {
                        traj.iter()
                            .map(|s| {
                                GridState::new(s.values().iter().map(|v| c * v).collect()).unwrap()
                            })
                            .collect()
                    })
                    .collect(),
            )
            .unwrap()
        };
        let emu = TrajectorySet::new(vec![kernel_rollout(&ic, &fit.kernel(), 6)]).unwrap();
        let base = TrajectorySet::new(vec![spectral_rollout(
            &ic,
            &modes(AdvectionScheme::ImplicitUpwind),
            6,
        )
        .unwrap()])
        .unwrap();
        let refr = TrajectorySet::new(vec![spectral_rollout(
            &ic,
            &modes(AdvectionScheme::Analytic),
            6,
        )
        .unwrap()])
        .unwrap();
        let plain = trajectory_superiority(&emu, &base, &refr).unwrap();
        let scaled =
            trajectory_superiority(&scale(&emu, 4.5), &scale(&base, 4.5), &scale(&refr, 4.5))
                .unwrap();
        for (a, b) in plain.steps.iter().zip(&scaled.steps) {
            let (x, y) = (a.xi.unwrap(), b.xi.unwrap());
            assert!((x - y).abs() < 1e-12 * x.max(1.0));
        }
    }

    // Spectral-vs-state-space equivalence: for single-mode initial conditions
    // the trajectory ratio equals the per-mode complex-difference ratio
    // exactly; with real positive multipliers (diffusion) that coincides with
    // the Magnitude-metric multiplier superiority.
    #[test]
    fn trajectory_matches_multiplier_route() {
        let n = 40;
        let psi = 4.0 / n as f64; // train mode
        let mode = 7; // active (test) mode of the initial conditions
        let phi = mode as f64 / n as f64;
        let g = 1.0;
        let fit = fit_diffusion_ansatz(
            diffusion::multiplier(DiffusionScheme::Btcs, DiffusionParams::new(g, psi).unwrap()),
            psi,
        )
        .unwrap();
        let dmult = |kind| {
            (0..=n / 2)
                .map(|m| {
                    Complex64::from(diffusion::multiplier(
                        kind,
                        DiffusionParams::new(g, m as f64 / n as f64).unwrap(),
                    ))
                })
                .collect::<Vec<_>>()
        };
        let steps = 8;
        // several phases per set; the ratio is phase-independent
        let ics: Vec<GridState> = [0.0, 0.7, 2.1]
            .iter()
            .map(|&d| single_mode_state(n, mode, 1.0, d))
            .collect();
        let emu = TrajectorySet::new(
            ics.iter()
                .map(|ic| kernel_rollout(ic, &fit.kernel(), steps))
                .collect(),
        )
        .unwrap();
        let base = TrajectorySet::new(
            ics.iter()
                .map(|ic| spectral_rollout(ic, &dmult(DiffusionScheme::Btcs), steps).unwrap())
                .collect(),
        )
        .unwrap();
        let refr = TrajectorySet::new(
            ics.iter()
                .map(|ic| spectral_rollout(ic, &dmult(DiffusionScheme::Analytic), steps).unwrap())
                .collect(),
        )
        .unwrap();
        let traj = trajectory_superiority(&emu, &base, &refr).unwrap();
        assert!(
            traj.steps[0].xi.unwrap() < 1.0,
            "expected forward superiority"
        );
        for s in &traj.steps {
            let xi_mult = multiplier_superiority(
                fit.multiplier(phi).into(),
                dmult(DiffusionScheme::Btcs)[mode],
                dmult(DiffusionScheme::Analytic)[mode],
                s.t as u32,
                MetricKind::Magnitude,
            )
            .unwrap()
            .unwrap();
            assert!(
                (s.xi.unwrap() - xi_mult).abs() < 1e-8 * xi_mult.max(1.0),
                "t = {}: {} vs {xi_mult}",
                s.t,
                s.xi.unwrap()
            );
        }
    }

    // Advection variant of the equivalence: the trajectory ratio equals the
    // complex-difference ratio |q^t - alpha^t| / |iota^t - alpha^t| at the
    // active mode for every t.
    #[test]
    fn advection_trajectory_matches_complex_ratio() {
        let n = 50;
        let psi = 5.0 / n as f64; // train mode
        let mode = 10; // active (test) mode
        let phi = mode as f64 / n as f64;
        let g = -3.0;
        let fit = fit_advection_ansatz(adv(AdvectionScheme::ImplicitUpwind, g, psi), psi).unwrap();
        let modes = |kind| {
            (0..=n / 2)
                .map(|m| adv(kind, g, m as f64 / n as f64))
                .collect::<Vec<_>>()
        };
        let steps = 6;
        let ic = single_mode_state(n, mode, 1.0, 1.1);
        let emu = TrajectorySet::new(vec![kernel_rollout(&ic, &fit.kernel(), steps)]).unwrap();
        let base = TrajectorySet::new(vec![spectral_rollout(
            &ic,
            &modes(AdvectionScheme::ImplicitUpwind),
            steps,
        )
        .unwrap()])
        .unwrap();
        let refr = TrajectorySet::new(vec![spectral_rollout(
            &ic,
            &modes(AdvectionScheme::Analytic),
            steps,
        )
        .unwrap()])
        .unwrap();
        let traj = trajectory_superiority(&emu, &base, &refr).unwrap();
        let q = fit.multiplier(phi);
        let i = adv(AdvectionScheme::ImplicitUpwind, g, phi);
        let a = adv(AdvectionScheme::Analytic, g, phi);
        for s in &traj.steps {
            let t = s.t as i32;
            let expected = (q.powi(t) - a.powi(t)).norm() / (i.powi(t) - a.powi(t)).norm();
            assert!(
                (s.xi.unwrap() - expected).abs() < 1e-8 * expected.max(1.0),
                "t = {t}"
            );
        }
    }

    #[test]
    fn multi_step_superiority_fades_to_one() {
        let (g, psi, phi) = (-0.9, 0.1, 0.2);
        let fit = fit_advection_ansatz(adv(AdvectionScheme::ImplicitUpwind, g, psi), psi).unwrap();
        let xi_at = |t| {
            multiplier_superiority(
                fit.multiplier(phi),
                adv(AdvectionScheme::ImplicitUpwind, g, phi),
                adv(AdvectionScheme::Analytic, g, phi),
                t,
                MetricKind::Magnitude,
            )
            .unwrap()
            .unwrap()
        };
        assert!(xi_at(1) < 1.0);
        assert!((xi_at(1000) - 1.0).abs() < (xi_at(10) - 1.0).abs());
    }

    #[test]
    fn csv_serialization_leaves_sentinels_empty() {
        let map = SuperiorityMap {
            psi_grid: vec![0.1],
            phi_grid: vec![0.1, 0.2],
            values: vec![vec![Some(1.0), None]],
            meta: MapMeta {
                gamma: Some(-3.0),
                iterations: None,
                t: 1,
                metric: MetricKind::Magnitude,
                train_ref: "implicit".into(),
                baseline_ref: "implicit".into(),
                test_ref: "analytic".into(),
            },
        };
        let mut buf = Vec::new();
        map.write_csv(&mut buf, "cfg").unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# cfg");
        assert_eq!(
            lines[1],
            "psi,phi,gamma,q,t,metric,train_ref,baseline_ref,test_ref,xi"
        );
        assert_eq!(
            lines[2],
            "0.1,0.1,-3,,1,magnitude,implicit,implicit,analytic,1"
        );
        assert_eq!(
            lines[3],
            "0.1,0.2,-3,,1,magnitude,implicit,implicit,analytic,"
        );
    }
}
