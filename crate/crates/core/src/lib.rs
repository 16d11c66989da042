//! Exact and numerical dynamics of a non-Hermitian driven two-level system.
//!
//! The lab-frame Schrödinger equation `i d/dt |phi> = (sigma_z + i f(t) sigma_x) |phi>`
//! becomes, after a pi/4 rotation about `y`, a pair of first-order equations
//! whose decoupled second-order forms are SUSY partners. Choosing the constant
//! potential `V1 = k` fixes a complex superpotential `f(t)` and closed-form
//! amplitudes. This crate evaluates those closed forms, integrates the same
//! equations with fixed-step RK4 as an independent check, and computes the
//! population inversion `W` and total probability `P`.
//!
//! Module map:
//!
//! * [`params`], [`state`], [`trajectory`]: shared domain types
//! * [`superpotential`]: drivings, seed construction, partner potentials
//! * [`analytic`]: closed-form amplitudes and intertwining operators
//! * [`integrator`]: RK4 oracle and convergence reports
//! * [`observables`]: frame rotation, `W`, `P`, `dW/dt` identity
//! * [`scenario`], [`config`], [`csv`]: presets, configuration and CSV output

#![allow(clippy::approx_constant)]

pub mod analytic;
pub mod config;
pub mod csv;
pub mod error;
pub mod integrator;
pub mod observables;
pub mod params;
pub mod scenario;
pub mod state;
pub mod superpotential;
pub mod trajectory;

pub use num_complex::Complex64;

pub use analytic::{AnalyticSolution, SolutionCoefficients};
pub use error::{Error, Result};
pub use integrator::{ConvergenceLevel, IntegratorConfig};
pub use params::{classify_regime, ModelParams, Regime};
pub use scenario::{Method, RunOutput, Scenario};
pub use state::{Frame, SpinorState};
pub use superpotential::{Driving, DrivingSample, SeedBasis, SeedPair, Superpotential};
pub use trajectory::{TimeGrid, Trajectory, TrajectoryPoint};
