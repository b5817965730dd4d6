//! Implicit upwind integrator for the 1D viscous Burgers equation on the
//! periodic unit interval: dense operator assembly, LU solves, and P1 /
//! truncated / tolerance-converged Picard stepping with shock-phase
//! diagnostics.
//!
//! The upwind matrix gates the backward difference with `max(wbar, 0)` and
//! the forward difference with `min(wbar, 0)`, so a negative wind selects the
//! forward stencil with its own (negative) coefficient. The printed variant
//! that applies `max` to both terms is kept as
//! [`upwind_matrix_as_printed`] for side-by-side comparison; it drops
//! negative winds entirely and does not reproduce `u du/dx` upwinding.

use nalgebra::{DMatrix, DVector};
use std::io::Write;

use crate::error::{Error, Result};
use crate::spectral::GridState;
use crate::superiority::nrmse;

/// Picard treatment of the nonlinear implicit step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PicardMode {
    /// Single assembly around the previous state, one solve.
    P1,
    /// Exactly `k` assemble/solve cycles re-linearizing around the latest
    /// iterate (constant right-hand side).
    Truncated(u32),
    /// Iterate until the max-norm nonlinear residual drops below tolerance.
    Converged,
}

/// Solver parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurgersConfig {
    pub n: usize,
    pub dt: f64,
    pub nu: f64,
    pub picard_tolerance: f64,
    pub max_picard_iters: u32,
    pub mode: PicardMode,
}

impl BurgersConfig {
    pub fn new(n: usize, dt: f64, nu: f64, mode: PicardMode) -> Result<Self> {
        let cfg = Self {
            n,
            dt,
            nu,
            picard_tolerance: 1e-5,
            max_picard_iters: 100,
            mode,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 8 {
            return Err(Error::Config(format!(
                "grid resolution must be >= 8, got {}",
                self.n
            )));
        }
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(Error::Config(format!(
                "time step must be positive, got {}",
                self.dt
            )));
        }
        if !self.nu.is_finite() || self.nu < 0.0 {
            return Err(Error::Config(format!(
                "viscosity must be nonnegative, got {}",
                self.nu
            )));
        }
        if self.picard_tolerance.is_nan() || self.picard_tolerance <= 0.0 {
            return Err(Error::Config("Picard tolerance must be positive".into()));
        }
        if self.max_picard_iters < 1 {
            return Err(Error::Config("need at least one Picard iteration".into()));
        }
        if let PicardMode::Truncated(k) = self.mode {
            if k < 1 {
                return Err(Error::Config("truncated Picard needs k >= 1".into()));
            }
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Shock-forming study preset: N = 60 and `2 nu N^2 dt = 0.2` as in the
    /// difficulty-based description of the experiment, with the time step
    /// sized so that a mode-1 state steepens into its shock around a third of
    /// the way into a 30-step rollout.
    pub fn shock_preset() -> Self {
        let n = 60usize;
        let dt = 1.0 / 60.0;
        let nu = 0.2 / (2.0 * (n * n) as f64 * dt);
        Self {
            n,
            dt,
            nu,
            picard_tolerance: 1e-5,
            max_picard_iters: 100,
            mode: PicardMode::Converged,
        }
    }

    /// Companion initial condition for [`Self::shock_preset`]:
    /// `u = 1/4 + sin(2 pi x)` on 60 nodes.
    pub fn shock_preset_ic() -> GridState {
        let n = 60;
        GridState::new(
            (0..n)
                .map(|i| 0.25 + (2.0 * std::f64::consts::PI * i as f64 / n as f64).sin())
                .collect(),
        )
        .expect("preset state is finite")
    }
}

/// Dense periodic difference operators, scaled by `1/dx^2` (Laplacian) and
/// `1/dx` (one-sided differences).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrices {
    pub laplacian: DMatrix<f64>,
    pub forward_diff: DMatrix<f64>,
    pub backward_diff: DMatrix<f64>,
    n: usize,
}

impl OperatorMatrices {
    pub fn n(&self) -> usize {
        self.n
    }
}

/// Second-derivative and one-sided first-derivative matrices with periodic
/// corner entries.
pub fn build_operator_matrices(n: usize, dx: f64) -> Result<OperatorMatrices> {
    if n < 3 {
        return Err(Error::Config(format!(
            "operator matrices need n >= 3, got {n}"
        )));
    }
    if !dx.is_finite() || dx <= 0.0 {
        return Err(Error::Config(format!(
            "grid spacing must be positive, got {dx}"
        )));
    }
    let mut laplacian = DMatrix::zeros(n, n);
    let mut forward = DMatrix::zeros(n, n);
    let mut backward = DMatrix::zeros(n, n);
    let inv_dx = 1.0 / dx;
    let inv_dx2 = inv_dx * inv_dx;
    for i in 0..n {
        let prev = (i + n - 1) % n;
        let next = (i + 1) % n;
        laplacian[(i, prev)] = inv_dx2;
        laplacian[(i, i)] = -2.0 * inv_dx2;
        laplacian[(i, next)] = inv_dx2;
        forward[(i, i)] = -inv_dx;
        forward[(i, next)] = inv_dx;
        backward[(i, i)] = inv_dx;
        backward[(i, prev)] = -inv_dx;
    }
    Ok(OperatorMatrices {
        laplacian,
        forward_diff: forward,
        backward_diff: backward,
        n,
    })
}

/// Upwind differentiation matrix
/// `diag(max(wbar_minus, 0)) B + diag(min(wbar_plus, 0)) F`, where
/// `wbar_minus` averages each node with its right neighbor and `wbar_plus`
/// with its left neighbor.
pub fn upwind_matrix(winds: &GridState, ops: &OperatorMatrices) -> DMatrix<f64> {
    let n = ops.n;
    debug_assert_eq!(winds.n(), n);
    let w = winds.values();
    let mut gamma = DMatrix::zeros(n, n);
    for i in 0..n {
        let wbar_minus = 0.5 * (w[(i + 1) % n] + w[i]);
        let wbar_plus = 0.5 * (w[(i + n - 1) % n] + w[i]);
        let pos = wbar_minus.max(0.0);
        let neg = wbar_plus.min(0.0);
        for j in 0..n {
            gamma[(i, j)] = pos * ops.backward_diff[(i, j)] + neg * ops.forward_diff[(i, j)];
        }
    }
    gamma
}

/// Literal transcription of the printed gating, which uses `max(., 0)` for
/// both terms; kept for comparison only.
pub fn upwind_matrix_as_printed(winds: &GridState, ops: &OperatorMatrices) -> DMatrix<f64> {
    let n = ops.n;
    let w = winds.values();
    let mut gamma = DMatrix::zeros(n, n);
    for i in 0..n {
        let wbar_minus = 0.5 * (w[(i + 1) % n] + w[i]);
        let wbar_plus = 0.5 * (w[(i + n - 1) % n] + w[i]);
        let pos = wbar_minus.max(0.0);
        let neg = wbar_plus.max(0.0);
        for j in 0..n {
            gamma[(i, j)] = pos * ops.backward_diff[(i, j)] + neg * ops.forward_diff[(i, j)];
        }
    }
    gamma
}

/// System matrix of one implicit step linearized around `linearization_state`:
/// `A = I + dt Gamma(w) - dt nu L`.
pub fn assemble_system(
    linearization_state: &GridState,
    cfg: &BurgersConfig,
    ops: &OperatorMatrices,
) -> DMatrix<f64> {
    let n = ops.n;
    let mut a = upwind_matrix(linearization_state, ops) * cfg.dt;
    a -= &ops.laplacian * (cfg.dt * cfg.nu);
    for i in 0..n {
        a[(i, i)] += 1.0;
    }
    a
}

fn inf_norm_matrix(a: &DMatrix<f64>) -> f64 {
    (0..a.nrows())
        .map(|i| a.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Direct dense solve with partial pivoting. The solution is verified against
/// the backward-stable residual bound
/// `||a x - rhs||_inf <= 1e-10 (||a||_inf ||x||_inf + ||rhs||_inf)`.
pub fn lu_solve(a: &DMatrix<f64>, rhs: &[f64]) -> Result<Vec<f64>> {
    if a.nrows() != a.ncols() || a.nrows() != rhs.len() {
        return Err(Error::ShapeMismatch(format!(
            "system is {}x{} with rhs of length {}",
            a.nrows(),
            a.ncols(),
            rhs.len()
        )));
    }
    let b = DVector::from_column_slice(rhs);
    let x = nalgebra::linalg::LU::new(a.clone())
        .solve(&b)
        .ok_or_else(|| Error::Factorization("matrix is singular to working precision".into()))?;
    let residual = (a * &x - &b).amax();
    let bound = 1e-10 * (inf_norm_matrix(a) * x.amax() + b.amax());
    if residual > bound.max(1e-300) {
        return Err(Error::Factorization(format!(
            "solve residual {residual:.3e} exceeds stability bound {bound:.3e}"
        )));
    }
    Ok(x.iter().copied().collect())
}

/// Result of one implicit time step.
#[derive(Debug, Clone, PartialEq)]
pub struct BurgersStepReport {
    pub new_state: GridState,
    pub picard_iterations: u32,
    /// Max-norm of the nonlinear residual `Lambda(u) u - u_prev` at the
    /// returned state.
    pub final_residual: f64,
    pub converged: bool,
}

fn nonlinear_residual(
    candidate: &GridState,
    rhs: &GridState,
    cfg: &BurgersConfig,
    ops: &OperatorMatrices,
) -> f64 {
    let a = assemble_system(candidate, cfg, ops);
    let u = DVector::from_column_slice(candidate.values());
    let r = a * u - DVector::from_column_slice(rhs.values());
    inf_norm(r.as_slice())
}

/// One implicit step of the configured Picard mode.
pub fn step(
    state: &GridState,
    cfg: &BurgersConfig,
    ops: &OperatorMatrices,
) -> Result<BurgersStepReport> {
    cfg.validate()?;
    if state.n() != ops.n {
        return Err(Error::ShapeMismatch(format!(
            "state has {} nodes but operators were built for {}",
            state.n(),
            ops.n
        )));
    }
    let cycle_budget = match cfg.mode {
        PicardMode::P1 => 1,
        PicardMode::Truncated(k) => k,
        PicardMode::Converged => cfg.max_picard_iters,
    };
    let mut current = state.clone();
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    while iterations < cycle_budget {
        let a = assemble_system(&current, cfg, ops);
        let next = GridState::new(lu_solve(&a, state.values())?)?;
        iterations += 1;
        residual = nonlinear_residual(&next, state, cfg, ops);
        current = next;
        if cfg.mode == PicardMode::Converged && residual < cfg.picard_tolerance {
            break;
        }
    }
    Ok(BurgersStepReport {
        new_state: current,
        picard_iterations: iterations,
        final_residual: residual,
        converged: residual < cfg.picard_tolerance,
    })
}

/// Sequential rollout; returns `steps + 1` states starting with the initial
/// condition.
pub fn rollout(ic: &GridState, cfg: &BurgersConfig, steps: usize) -> Result<Vec<GridState>> {
    let ops = build_operator_matrices(cfg.n, cfg.dx())?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(ic.clone());
    for _ in 0..steps {
        let report = step(out.last().unwrap(), cfg, &ops)?;
        out.push(report.new_state);
    }
    Ok(out)
}

/// Per-transition diagnostics along the converged trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct StepDiagnostics {
    /// Index of the transition (0 maps state 0 to state 1).
    pub step: usize,
    pub picard_iterations: u32,
    pub residual: f64,
    /// nRMSE between the P1 one-step result and the converged one-step
    /// result from the same predecessor state.
    pub one_step_nrmse: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PicardDiagnostics {
    pub steps: Vec<StepDiagnostics>,
}

impl PicardDiagnostics {
    pub fn write_csv<W: Write>(&self, mut w: W, config: &str) -> std::io::Result<()> {
        writeln!(w, "# {config}")?;
        writeln!(w, "step,picard_iterations,residual,one_step_nrmse")?;
        for s in &self.steps {
            writeln!(
                w,
                "{},{},{},{}",
                s.step, s.picard_iterations, s.residual, s.one_step_nrmse
            )?;
        }
        Ok(())
    }
}

/// Rolls out the converged solver and records, for every transition, the
/// converged Picard iteration count and the one-step error a P1 truncation
/// would have made from the same predecessor.
pub fn picard_diagnostics(
    ic: &GridState,
    cfg: &BurgersConfig,
    steps: usize,
) -> Result<PicardDiagnostics> {
    let ops = build_operator_matrices(cfg.n, cfg.dx())?;
    let converged_cfg = BurgersConfig {
        mode: PicardMode::Converged,
        ..*cfg
    };
    let p1_cfg = BurgersConfig {
        mode: PicardMode::P1,
        ..*cfg
    };
    let mut diagnostics = Vec::with_capacity(steps);
    let mut state = ic.clone();
    for t in 0..steps {
        let converged = step(&state, &converged_cfg, &ops)?;
        let p1 = step(&state, &p1_cfg, &ops)?;
        let err = if converged.new_state.values().iter().all(|&v| v == 0.0)
            && p1.new_state.values().iter().all(|&v| v == 0.0)
        {
            0.0
        } else {
            nrmse(&p1.new_state, &converged.new_state)?
        };
        diagnostics.push(StepDiagnostics {
            step: t,
            picard_iterations: converged.picard_iterations,
            residual: converged.final_residual,
            one_step_nrmse: err,
        });
        state = converged.new_state;
    }
    Ok(PicardDiagnostics { steps: diagnostics })
}

/// Trajectory dump, one row per (step, node).
pub fn write_trajectory_csv<W: Write>(
    trajectory: &[GridState],
    mut w: W,
    config: &str,
) -> std::io::Result<()> {
    writeln!(w, "# {config}")?;
    writeln!(w, "step,i,x,u")?;
    for (t, state) in trajectory.iter().enumerate() {
        let n = state.n() as f64;
        for (i, &u) in state.values().iter().enumerate() {
            writeln!(w, "{t},{i},{},{u}", i as f64 / n)?;
        }
    }
    Ok(())
}
