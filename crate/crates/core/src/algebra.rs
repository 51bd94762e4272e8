//! The algebra of retarded exponential-convolution operators and the delayed
//! exponential family.
//!
//! The generator is the operator taking `f` to
//! `t -> int_0^{t-T0} e^{-2 gamma (t - T0 - tau)} f(tau) dtau` for `t >= T0`.
//! These operators commute, compose by delay addition
//! (`op(gamma,T1) op(gamma,T2) = op(gamma,T1+T2) op(gamma,0)`), and their
//! N-th powers have the closed-form kernel
//! `(t - N*T0 - tau)^{N-1}/(N-1)! * e^{-2 gamma (t - N*T0 - tau)}`.
//!
//! Delay fixed-point equations `q = 2 gamma * op(gamma,T) q + g` are solved
//! exactly on a finite window by the truncated geometric (Neumann) sum: the
//! N-th power is supported on `t >= N*T`, so on `[0, horizon]` only finitely
//! many terms are alive and no tolerance-based truncation is involved.

use crate::quad::integrate_with_breakpoints;
use crate::signal::{PolyExpTerm, Signal};

/// Retarded exponential-convolution operator, identified by its decay
/// parameter and its delay.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RetardedOp {
    pub gamma: f64,
    pub delay: f64,
}

impl RetardedOp {
    pub fn new(gamma: f64, delay: f64) -> Self {
        assert!(delay >= 0.0, "operator delay must be nonnegative");
        Self { gamma, delay }
    }

    /// Applies the operator to a signal.
    pub fn apply(&self, f: &Signal) -> Signal {
        f.exp_convolve(self.gamma, self.delay)
    }
}

/// `n!` in floating point.
pub(crate) fn factorial(n: u32) -> f64 {
    let mut acc = 1.0;
    for j in 2..=(n as u64) {
        acc *= j as f64;
    }
    acc
}

/// The N-th operator power applied through its closed-form kernel:
/// `int_0^{t-N*T0} (t-N*T0-tau)^{N-1}/(N-1)! e^{-2 gamma (t-N*T0-tau)} f(tau) dtau`.
///
/// Must agree with N-fold repeated [`RetardedOp::apply`]; the two are kept as
/// genuinely distinct computation paths. `n = 0` is rejected: the identity is
/// not an integral operator, callers use `f` directly.
pub fn compose_power(gamma: f64, t0: f64, n: u32, f: &Signal) -> Signal {
    assert!(n >= 1, "compose_power requires n >= 1");
    assert!(t0 >= 0.0, "operator delay must be nonnegative");
    let kernel = [PolyExpTerm::new(
        1.0 / factorial(n - 1),
        n - 1,
        -2.0 * gamma,
    )];
    restrict_opt(
        Signal::from_piecewise(f.piecewise().convolve_kernel(&kernel).shift(n as f64 * t0)),
        f.valid_until().map(|h| h + n as f64 * t0),
    )
}

/// The composite `op(gamma,T0)^n op(gamma,0)` through its kernel
/// `(t-n*T0-tau)^n / n! * e^{-2 gamma (...)}`; `n = 0` gives `op(gamma,0)`.
pub fn compose_power_with_base(gamma: f64, t0: f64, n: u32, f: &Signal) -> Signal {
    assert!(t0 >= 0.0, "operator delay must be nonnegative");
    let kernel = [PolyExpTerm::new(1.0 / factorial(n), n, -2.0 * gamma)];
    restrict_opt(
        Signal::from_piecewise(f.piecewise().convolve_kernel(&kernel).shift(n as f64 * t0)),
        f.valid_until().map(|h| h + n as f64 * t0),
    )
}

fn restrict_opt(s: Signal, horizon: Option<f64>) -> Signal {
    match horizon {
        Some(h) => s.restrict_validity(h),
        None => s,
    }
}

#[derive(Clone, Copy)]
enum SeriesParity {
    All,
    Even,
    Odd,
}

/// Shared builder for the delayed power series
/// `sum_N lambda^N (t - N*T0)^N / N! * 1(t >= N*T0)` over the index subset
/// selected by `parity`. Exact on `[0, horizon]`; one segment per live term.
fn delayed_series(lambda: f64, t0: f64, horizon: f64, parity: SeriesParity) -> Signal {
    assert!(t0 > 0.0, "delayed series require a positive delay");
    assert!(horizon.is_finite() && horizon >= 0.0, "horizon must be finite");
    let n_max = (horizon / t0).floor() as u32;
    let mut segments = Vec::new();
    let mut terms: Vec<PolyExpTerm> = Vec::new();
    let mut coeff = 1.0; // lambda^n / n!
    let mut prev_start: Option<f64> = None;
    for n in 0..=n_max {
        let include = match parity {
            SeriesParity::All => true,
            SeriesParity::Even => n % 2 == 0,
            SeriesParity::Odd => n % 2 == 1,
        };
        if include {
            let start = n as f64 * t0;
            if let Some(prev) = prev_start {
                terms = crate::signal::reanchor_terms(&terms, start - prev);
            }
            terms.push(PolyExpTerm::new(coeff, n, 0.0));
            segments.push(crate::signal::Segment::new(start, terms.clone()));
            prev_start = Some(start);
        }
        coeff *= lambda / (n + 1) as f64;
    }
    Signal::from_piecewise(crate::signal::Piecewise::new(segments)).restrict_validity(horizon)
}

/// Delayed exponential: `sum_{N>=0} lambda^N (t-N*T0)^N/N! * 1(t >= N*T0)`,
/// exact on `[0, horizon]`. Equals 1 on `[0, T0)`.
pub fn delayed_exp(lambda: f64, t0: f64, horizon: f64) -> Signal {
    delayed_series(lambda, t0, horizon, SeriesParity::All)
}

/// Odd-index part of the delayed exponential; vanishes on `[0, T0)`.
pub fn delayed_sinh(lambda: f64, t0: f64, horizon: f64) -> Signal {
    delayed_series(lambda, t0, horizon, SeriesParity::Odd)
}

/// Even-index part of the delayed exponential; equals 1 on `[0, 2*T0)`.
pub fn delayed_cosh(lambda: f64, t0: f64, horizon: f64) -> Signal {
    delayed_series(lambda, t0, horizon, SeriesParity::Even)
}

/// Solves `q = 2 gamma * op(gamma, t_delay) q + g` by the finite geometric
/// sum `sum_{N=0}^{ceil(horizon/t_delay)} (2 gamma)^N op^N g`, exact on
/// `[0, horizon]` because the dropped terms are supported beyond it.
pub fn geometric_resolvent(gamma: f64, t_delay: f64, g: &Signal, horizon: f64) -> Signal {
    assert!(t_delay > 0.0, "resolvent requires a positive delay");
    assert!(horizon.is_finite() && horizon >= 0.0, "horizon must be finite");
    let op = RetardedOp::new(gamma, t_delay);
    let n_star = (horizon / t_delay).ceil() as usize;
    let mut sum = g.clone();
    let mut term = g.clone();
    for _ in 1..=n_star {
        term = op.apply(&term).scale(2.0 * gamma);
        if term.piecewise().is_zero() {
            break;
        }
        sum = sum.add(&term);
    }
    sum.restrict_validity(horizon)
}

/// Reference evaluation of the same resolvent series through the shifted
/// integral representation
/// `g(t) + sum_{N>=1} (2 gamma)^N int_{N*Td}^t (t-tau)^{N-1}/(N-1)!
/// e^{-2 gamma (t-tau)} g(tau - N*Td) dtau`,
/// computed by adaptive quadrature. Slow; used to cross-check
/// [`geometric_resolvent`].
pub fn summed_kernel_eval(gamma: f64, t_delay: f64, g: &Signal, t: f64) -> f64 {
    assert!(t_delay > 0.0, "resolvent requires a positive delay");
    let starts: Vec<f64> = g.segments().iter().map(|s| s.start).collect();
    let mut total = g.eval(t);
    let mut n = 1u32;
    while n as f64 * t_delay <= t {
        let offset = n as f64 * t_delay;
        let norm = (2.0 * gamma).powi(n as i32) / factorial(n - 1);
        let integrand = |tau: f64| {
            (t - tau).powi(n as i32 - 1) * (-2.0 * gamma * (t - tau)).exp() * g.eval(tau - offset)
        };
        let cuts: Vec<f64> = starts.iter().map(|s| s + offset).collect();
        total += norm * integrate_with_breakpoints(&integrand, offset, t, &cuts, 1e-13);
        n += 1;
    }
    total
}
