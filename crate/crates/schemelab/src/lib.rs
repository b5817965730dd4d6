//! A laboratory for the spectral analysis of classical 1D PDE schemes and the
//! linear emulators one can fit to their data.
//!
//! The crate diagonalizes the standard periodic finite-difference schemes for
//! advection, diffusion, and the Poisson problem into Fourier multipliers,
//! fits small linear emulator ansatzes to single- and multi-mode data in
//! closed form and by least squares, and measures "superiority ratios": the
//! rollout error of a fitted emulator divided by the rollout error of the
//! solver that generated its training data, both judged against a
//! higher-fidelity reference. A dense implicit Burgers integrator with
//! truncated Picard iteration provides the nonlinear counterpart.
//!
//! Entry points:
//! - [`spectral`]: real FFT, periodic cross-correlation, kernel/multiplier
//!   equivalence.
//! - [`advection`], [`diffusion`], [`poisson`]: scheme multipliers and their
//!   closed-form error functionals.
//! - [`fitting`]: closed-form and least-squares emulator fits, loss
//!   comparisons.
//! - [`superiority`]: ratio maps over (psi, phi) and trajectory-level ratios.
//! - [`initial_conditions`]: seeded IC generators.
//! - [`burgers`]: implicit upwind Burgers solver with Picard diagnostics.
//! - [`experiment`]: the CLI front end (config parsing, experiment dispatch,
//!   CSV emission).
//! - [`verify`]: the acceptance checks behind `schemelab verify`.

pub mod advection;
pub mod burgers;
pub mod diffusion;
pub mod error;
pub mod experiment;
pub mod fitting;
pub mod initial_conditions;
pub mod poisson;
pub mod spectral;
pub mod superiority;
pub mod verify;

pub use error::{Error, Result};
