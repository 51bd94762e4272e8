//! Free-field construction from initial data and field reconstruction from
//! point-source response signals.
//!
//! The free field is the classical d'Alembert superposition of left- and
//! right-moving translates of the initial data. Point interactions enter the
//! full field only through two causal response signals, one per interaction
//! point, each evaluated at its retarded time:
//! `u(t,x) = F_a(t - |x-x_a|/c) + F_b(t - |x-x_b|/c) + u0(t,x)`.

use crate::signal::{Piecewise, Signal, SignalError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("model.c: wave speed must be positive and finite (got {0})")]
    InvalidSpeed(f64),
    #[error("model positions must satisfy x_a <= x_b (got x_a = {x_a}, x_b = {x_b})")]
    UnorderedPositions { x_a: f64, x_b: f64 },
    #[error("coupling strength must be nonnegative and finite (got {0})")]
    InvalidGamma(f64),
    #[error("two present couplings require distinct positions (x_a = x_b = {0})")]
    CoincidentPoints(f64),
    #[error("model parameter is not finite")]
    NonFinite,
}

/// Interaction type at one point: nothing, a clamped point, or an integral
/// coupling of strength `gamma` (the source responds with
/// `F(t) = -2 gamma * int_0^t u(tau, x_p) dtau`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Absent,
    Pin,
    Damper { gamma: f64 },
}

impl Coupling {
    pub fn is_present(&self) -> bool {
        !matches!(self, Coupling::Absent)
    }

    /// Coupling strength of a damper; pins and absent couplings have none.
    pub fn gamma(&self) -> Option<f64> {
        match self {
            Coupling::Damper { gamma } => Some(*gamma),
            _ => None,
        }
    }
}

/// Wave speed, interaction positions and coupling types. Positions are in
/// the same dimensionless units throughout; the inter-point travel time
/// `T = (x_b - x_a)/c` is derived.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    c: f64,
    x_a: f64,
    x_b: f64,
    coupling_a: Coupling,
    coupling_b: Coupling,
}

impl ModelConfig {
    pub fn new(
        c: f64,
        x_a: f64,
        x_b: f64,
        coupling_a: Coupling,
        coupling_b: Coupling,
    ) -> Result<Self, ConfigError> {
        if !c.is_finite() || c <= 0.0 {
            return Err(ConfigError::InvalidSpeed(c));
        }
        if !x_a.is_finite() || !x_b.is_finite() {
            return Err(ConfigError::NonFinite);
        }
        if x_a > x_b {
            return Err(ConfigError::UnorderedPositions { x_a, x_b });
        }
        for coupling in [&coupling_a, &coupling_b] {
            if let Coupling::Damper { gamma } = coupling {
                if !gamma.is_finite() || *gamma < 0.0 {
                    return Err(ConfigError::InvalidGamma(*gamma));
                }
            }
        }
        if coupling_a.is_present() && coupling_b.is_present() && x_a == x_b {
            return Err(ConfigError::CoincidentPoints(x_a));
        }
        Ok(Self {
            c,
            x_a,
            x_b,
            coupling_a,
            coupling_b,
        })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn x_a(&self) -> f64 {
        self.x_a
    }

    pub fn x_b(&self) -> f64 {
        self.x_b
    }

    pub fn coupling_a(&self) -> Coupling {
        self.coupling_a
    }

    pub fn coupling_b(&self) -> Coupling {
        self.coupling_b
    }

    /// Travel time between the two interaction points.
    pub fn delay(&self) -> f64 {
        (self.x_b - self.x_a) / self.c
    }
}

/// Initial displacement profile and a spatial primitive of the initial
/// velocity profile, both piecewise poly-exp in position.
///
/// Only differences of `velocity_primitive` enter any result, so the choice
/// of primitive (its additive constant) is immaterial.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InitialData {
    pub displacement: Piecewise,
    pub velocity_primitive: Piecewise,
}

impl InitialData {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(displacement: Piecewise, velocity_primitive: Piecewise) -> Self {
        Self {
            displacement,
            velocity_primitive,
        }
    }

    /// Data whose free field is the pure left-moving wave `profile(x + ct)`.
    pub fn traveling_left(profile: Piecewise, c: f64) -> Self {
        let velocity_primitive = profile.scale(c);
        Self::new(profile, velocity_primitive)
    }

    /// Data whose free field is the pure right-moving wave `profile(x - ct)`.
    pub fn traveling_right(profile: Piecewise, c: f64) -> Self {
        let velocity_primitive = profile.scale(-c);
        Self::new(profile, velocity_primitive)
    }

    /// Union of the supports of both profiles, if either is nonzero.
    pub fn support_bounds(&self) -> Option<(f64, f64)> {
        match (
            self.displacement.support_bounds(),
            self.velocity_primitive.support_bounds(),
        ) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            (Some(b), None) | (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }
}

/// The free field `u0(t,x)`: half the sum of the displacement translates
/// plus the difference of the velocity-primitive translates over `2c`.
pub fn free_field(data: &InitialData, c: f64, t: f64, x: f64) -> f64 {
    let plus = x + c * t;
    let minus = x - c * t;
    0.5 * (data.displacement.eval(plus) + data.displacement.eval(minus))
        + (data.velocity_primitive.eval(plus) - data.velocity_primitive.eval(minus)) / (2.0 * c)
}

/// The free field observed at a fixed position as a causal signal:
/// `t -> u0(t, x0)` for `t >= 0`, zero before.
///
/// Exact for all `t >= 0` (position pieces become finitely many time pieces
/// under the substitutions `x0 +- c t`), so no horizon is needed. At a
/// boundary instant where a left-moving piece expires the signal takes the
/// incoming piece's value (segments are closed on the left); `free_field`
/// evaluated exactly at such an instant may differ there, on a measure-zero
/// set.
pub fn free_trace(data: &InitialData, c: f64, x0: f64) -> Signal {
    let d_plus = data.displacement.compose_affine(c, x0, 0.0);
    let d_minus = data.displacement.compose_affine(-c, x0, 0.0);
    let v_plus = data.velocity_primitive.compose_affine(c, x0, 0.0);
    let v_minus = data.velocity_primitive.compose_affine(-c, x0, 0.0);
    let displacement_part = d_plus.add(&d_minus).scale(0.5);
    let velocity_part = v_plus.add_scaled(&v_minus, -1.0).scale(1.0 / (2.0 * c));
    Signal::from_piecewise(displacement_part.add(&velocity_part))
}

/// Full field from the two point-source response signals:
/// `F_a(t - |x-x_a|/c) + F_b(t - |x-x_b|/c) + u0(t,x)`.
///
/// Responses for absent couplings are zero signals. Fails with
/// `InsufficientHorizon` when a retarded argument exceeds a response
/// signal's validity bound.
pub fn reconstruct_field(
    f_a: &Signal,
    f_b: &Signal,
    cfg: &ModelConfig,
    data: &InitialData,
    t: f64,
    x: f64,
) -> Result<f64, SignalError> {
    debug_assert!(t >= 0.0, "field reconstruction is defined for t >= 0");
    let retarded_a = t - (x - cfg.x_a()).abs() / cfg.c();
    let retarded_b = t - (x - cfg.x_b()).abs() / cfg.c();
    Ok(f_a.try_eval(retarded_a)?
        + f_b.try_eval(retarded_b)?
        + free_field(data, cfg.c(), t, x))
}

/// Max over `n_samples` uniform points of `|F(t) + 2 gamma int_0^t F_src|`
/// on `[0, horizon]` — the defining relation between a source trace and its
/// response signal.
pub fn source_integral_check(
    f_src: &Signal,
    gamma: f64,
    f: &Signal,
    horizon: f64,
    n_samples: usize,
) -> f64 {
    let integral = f_src.integrate();
    let mut worst = 0.0f64;
    for j in 0..n_samples {
        let t = horizon * j as f64 / (n_samples - 1) as f64;
        worst = worst.max((f.eval(t) + 2.0 * gamma * integral.eval(t)).abs());
    }
    worst
}
