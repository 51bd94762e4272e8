//! Interaction-case solvers behind a common strategy interface.
//!
//! Every particular case (free field, one or two pins, one or two integral
//! couplings, mixed) is an [`InteractionSolver`]: given initial data, a model
//! configuration and a horizon it produces a [`SolutionBundle`] — the pair of
//! retarded source responses plus the point traces — from which the full
//! field is reconstructed. Solvers register by name in a [`SolverRegistry`]
//! and are selected at runtime, either explicitly or by matching the
//! configuration's coupling pattern.
//!
//! All series are truncated by support, never by magnitude: a term delayed by
//! `N*T` is identically zero before `t = N*T`, so results on `[0, horizon]`
//! are exact and increasing the horizon never changes earlier values.

mod cases;

pub use cases::{
    solve_free, solve_pin_damper, solve_pin_damper_exp_series, solve_single_damper,
    solve_single_pin, solve_two_dampers, solve_two_dampers_equal_gamma, solve_two_pins,
    unroll_recursion,
};

use crate::dalembert::{reconstruct_field, Coupling, InitialData, ModelConfig};
use crate::signal::{Signal, SignalError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("horizon must be positive and finite (got {0})")]
    BadHorizon(f64),
    #[error("no registered solver supports this coupling configuration")]
    NoSolver,
    #[error("unknown solver '{0}'")]
    UnknownSolver(String),
    #[error("solver '{0}' does not support this coupling configuration")]
    Unsupported(&'static str),
}

/// The retarded source responses of the two interaction points, valid on
/// `[0, horizon]`. Responses of absent couplings are zero signals.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcePair {
    pub f_a: Signal,
    pub f_b: Signal,
    pub horizon: f64,
}

/// A solved interaction case: responses, point traces `u(t, x_a)` and
/// `u(t, x_b)`, and the free traces they are measured against.
///
/// The traces satisfy `trace_a = f_a + f_b(t - T) + free_trace_a` (and the
/// mirrored relation at `x_b`) on `[0, horizon]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionBundle {
    pub config: ModelConfig,
    pub forces: ForcePair,
    pub trace_a: Signal,
    pub trace_b: Signal,
    pub free_trace_a: Signal,
    pub free_trace_b: Signal,
}

impl SolutionBundle {
    pub fn horizon(&self) -> f64 {
        self.forces.horizon
    }

    /// Field value at `(t, x)` reconstructed from the responses.
    pub fn field_at(&self, data: &InitialData, t: f64, x: f64) -> Result<f64, SignalError> {
        reconstruct_field(&self.forces.f_a, &self.forces.f_b, &self.config, data, t, x)
    }
}

/// One interaction case, solvable on a horizon. Implementations are pure:
/// independent solves may run concurrently.
pub trait InteractionSolver: Send + Sync {
    /// Registry key, e.g. `"two-dampers"`.
    fn name(&self) -> &'static str;

    /// Whether this strategy can handle the coupling pattern of `cfg`.
    fn supports(&self, cfg: &ModelConfig) -> bool;

    fn solve(
        &self,
        data: &InitialData,
        cfg: &ModelConfig,
        horizon: f64,
    ) -> Result<SolutionBundle, ModelError>;
}

macro_rules! strategy {
    ($ty:ident, $name:literal, $supports:expr, $solve:path) => {
        struct $ty;

        impl InteractionSolver for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn supports(&self, cfg: &ModelConfig) -> bool {
                let pattern: fn(&ModelConfig) -> bool = $supports;
                pattern(cfg)
            }

            fn solve(
                &self,
                data: &InitialData,
                cfg: &ModelConfig,
                horizon: f64,
            ) -> Result<SolutionBundle, ModelError> {
                $solve(data, cfg, horizon)
            }
        }
    };
}

fn is_pin(c: Coupling) -> bool {
    matches!(c, Coupling::Pin)
}

fn is_damper(c: Coupling) -> bool {
    matches!(c, Coupling::Damper { .. })
}

strategy!(
    FreeStrategy,
    "free",
    |cfg| !cfg.coupling_a().is_present() && !cfg.coupling_b().is_present(),
    solve_free
);
strategy!(
    SinglePinStrategy,
    "single-pin",
    |cfg| {
        (is_pin(cfg.coupling_a()) && !cfg.coupling_b().is_present())
            || (is_pin(cfg.coupling_b()) && !cfg.coupling_a().is_present())
    },
    solve_single_pin
);
strategy!(
    SingleDamperStrategy,
    "single-damper",
    |cfg| {
        (is_damper(cfg.coupling_a()) && !cfg.coupling_b().is_present())
            || (is_damper(cfg.coupling_b()) && !cfg.coupling_a().is_present())
    },
    solve_single_pin_damper_guard
);

fn solve_single_pin_damper_guard(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
) -> Result<SolutionBundle, ModelError> {
    solve_single_damper(data, cfg, horizon)
}

strategy!(
    TwoPinStrategy,
    "two-pins",
    |cfg| is_pin(cfg.coupling_a()) && is_pin(cfg.coupling_b()),
    solve_two_pins
);
strategy!(
    PinDamperStrategy,
    "pin-damper",
    |cfg| {
        (is_pin(cfg.coupling_a()) && is_damper(cfg.coupling_b()))
            || (is_damper(cfg.coupling_a()) && is_pin(cfg.coupling_b()))
    },
    solve_pin_damper
);
strategy!(
    TwoDamperStrategy,
    "two-dampers",
    |cfg| is_damper(cfg.coupling_a()) && is_damper(cfg.coupling_b()),
    solve_two_dampers
);
strategy!(
    EqualGammaStrategy,
    "two-dampers-equal-gamma",
    |cfg| {
        matches!(
            (cfg.coupling_a(), cfg.coupling_b()),
            (Coupling::Damper { gamma: ga }, Coupling::Damper { gamma: gb }) if ga == gb
        )
    },
    solve_two_dampers_equal_gamma
);
strategy!(
    PinDamperSeriesStrategy,
    "pin-damper-exp-series",
    |cfg| {
        (is_pin(cfg.coupling_a()) && is_damper(cfg.coupling_b()))
            || (is_damper(cfg.coupling_a()) && is_pin(cfg.coupling_b()))
    },
    solve_pin_damper_exp_series
);

/// Name-indexed collection of interaction strategies.
///
/// `select` picks the first registered solver supporting a configuration, so
/// registration order decides defaults: the general paths come before the
/// special-form alternatives (`two-dampers-equal-gamma`,
/// `pin-damper-exp-series`), which are chosen only by explicit name.
pub struct SolverRegistry {
    solvers: Vec<Box<dyn InteractionSolver>>,
}

impl SolverRegistry {
    /// Registry with every built-in strategy.
    pub fn with_builtin() -> Self {
        let mut reg = Self {
            solvers: Vec::new(),
        };
        reg.register(Box::new(FreeStrategy));
        reg.register(Box::new(SinglePinStrategy));
        reg.register(Box::new(SingleDamperStrategy));
        reg.register(Box::new(TwoPinStrategy));
        reg.register(Box::new(PinDamperStrategy));
        reg.register(Box::new(TwoDamperStrategy));
        reg.register(Box::new(EqualGammaStrategy));
        reg.register(Box::new(PinDamperSeriesStrategy));
        reg
    }

    pub fn register(&mut self, solver: Box<dyn InteractionSolver>) {
        self.solvers.push(solver);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn InteractionSolver> {
        self.solvers
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    /// First registered solver supporting `cfg`.
    pub fn select(&self, cfg: &ModelConfig) -> Result<&dyn InteractionSolver, ModelError> {
        self.solvers
            .iter()
            .find(|s| s.supports(cfg))
            .map(|s| s.as_ref())
            .ok_or(ModelError::NoSolver)
    }

    /// Solves with the named solver, or with the first supporting one when
    /// `name` is `None`.
    pub fn solve(
        &self,
        data: &InitialData,
        cfg: &ModelConfig,
        horizon: f64,
        name: Option<&str>,
    ) -> Result<SolutionBundle, ModelError> {
        let solver = match name {
            Some(n) => {
                let s = self
                    .get(n)
                    .ok_or_else(|| ModelError::UnknownSolver(n.to_string()))?;
                if !s.supports(cfg) {
                    return Err(ModelError::Unsupported(s.name()));
                }
                s
            }
            None => self.select(cfg)?,
        };
        solver.solve(data, cfg, horizon)
    }
}

pub(crate) fn check_horizon(horizon: f64) -> Result<(), ModelError> {
    if horizon.is_finite() && horizon > 0.0 {
        Ok(())
    } else {
        Err(ModelError::BadHorizon(horizon))
    }
}
