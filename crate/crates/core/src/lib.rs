//! Semi-analytic solutions of the 1D wave equation with one or two point
//! interactions, cross-checked by an independent finite-difference solver.
//!
//! The building block is an exact, closed class of causal time signals:
//! piecewise sums of `coeff * t^power * exp(rate*t)` terms. Shifting, linear
//! combination, multiplication by exponentials, running integration and
//! retarded exponential convolution all stay inside the class, so the wave
//! solvers built on top of it carry no time-discretization error.
//!
//! Modules:
//!
//! - [`signal`] — the piecewise poly-exp representation and its arithmetic.
//! - [`algebra`] — retarded convolution operators, their composition rules,
//!   and the delayed exponential family used to sum delay recursions.
//! - [`dalembert`] — free-field construction from initial data and field
//!   reconstruction from point-source response signals.
//! - [`models`] — the interaction solvers (pins and integral couplings),
//!   behind a common strategy trait with a name-based registry.
//! - [`fdtd`] — the finite-difference time-domain oracle.
//! - [`compare`] — side-by-side error summaries of the two paths.
//! - [`identities`] — a randomized self-check suite for the operator algebra.
//! - [`quad`] — adaptive quadrature, used as an independent reference path.

pub mod algebra;
pub mod compare;
pub mod dalembert;
pub mod fdtd;
pub mod identities;
pub mod models;
pub mod quad;
pub mod signal;

pub use dalembert::{Coupling, InitialData, ModelConfig};
pub use models::{SolutionBundle, SolverRegistry};
pub use signal::{Piecewise, PolyExpTerm, Segment, Signal};
