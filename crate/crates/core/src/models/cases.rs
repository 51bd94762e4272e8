//! Construction of the particular-case solutions.
//!
//! Conventions shared by all cases, with `T` the travel time between the two
//! interaction points:
//!
//! - a pinned point contributes the response that exactly cancels its trace,
//!   seeded by the free trace and echoed every `2T`;
//! - an integral coupling of strength `gamma` responds with
//!   `F = -2 gamma * int_0^t u(tau, x_p) dtau`, equivalently through the
//!   exponential convolution of its incoming trace;
//! - coupled cases are solved by support-truncated geometric sums of the
//!   retarded convolution operators, exact on the requested horizon.
//!
//! Cases stated for one orientation (pin at the left point, say) serve the
//! mirrored configuration by relabeling the two points; the relabeling is
//! part of the dispatch here and invisible to callers.

use crate::algebra::{compose_power, compose_power_with_base, geometric_resolvent, RetardedOp};
use crate::dalembert::{free_trace, Coupling, InitialData, ModelConfig};
use crate::signal::{PolyExpTerm, Signal};

use super::{check_horizon, ForcePair, ModelError, SolutionBundle};

fn point_traces(data: &InitialData, cfg: &ModelConfig) -> (Signal, Signal) {
    (
        free_trace(data, cfg.c(), cfg.x_a()),
        free_trace(data, cfg.c(), cfg.x_b()),
    )
}

fn bundle(
    cfg: &ModelConfig,
    horizon: f64,
    f_a: Signal,
    f_b: Signal,
    trace_a: Signal,
    trace_b: Signal,
    q0a: Signal,
    q0b: Signal,
) -> SolutionBundle {
    SolutionBundle {
        config: cfg.clone(),
        forces: ForcePair {
            f_a,
            f_b,
            horizon,
        },
        trace_a,
        trace_b,
        free_trace_a: q0a,
        free_trace_b: q0b,
    }
}

/// No couplings: the field is the free field.
pub fn solve_free(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
) -> Result<SolutionBundle, ModelError> {
    check_horizon(horizon)?;
    if cfg.coupling_a().is_present() || cfg.coupling_b().is_present() {
        return Err(ModelError::Unsupported("free"));
    }
    let (q0a, q0b) = point_traces(data, cfg);
    Ok(bundle(
        cfg,
        horizon,
        Signal::zero(),
        Signal::zero(),
        q0a.clone(),
        q0b.clone(),
        q0a,
        q0b,
    ))
}

/// One pinned point, no second coupling: the response is the negated free
/// trace, so the trace at the pin vanishes identically.
pub fn solve_single_pin(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
) -> Result<SolutionBundle, ModelError> {
    check_horizon(horizon)?;
    let (q0a, q0b) = point_traces(data, cfg);
    let t_ab = cfg.delay();
    match (cfg.coupling_a(), cfg.coupling_b()) {
        (Coupling::Pin, Coupling::Absent) => {
            let f_a = q0a.scale(-1.0);
            let trace_b = f_a.shift(t_ab).add(&q0b);
            Ok(bundle(
                cfg,
                horizon,
                f_a,
                Signal::zero(),
                Signal::zero(),
                trace_b,
                q0a,
                q0b,
            ))
        }
        (Coupling::Absent, Coupling::Pin) => {
            let f_b = q0b.scale(-1.0);
            let trace_a = f_b.shift(t_ab).add(&q0a);
            Ok(bundle(
                cfg,
                horizon,
                Signal::zero(),
                f_b,
                trace_a,
                Signal::zero(),
                q0a,
                q0b,
            ))
        }
        _ => Err(ModelError::Unsupported("single-pin")),
    }
}

/// One integral coupling, no second one: the response is the exponential
/// convolution of the free trace,
/// `F = -2 gamma int_0^t e^{-2 gamma (t-tau)} u0(tau, x_p) dtau`,
/// the unique solution of `F' = -2 gamma (F + u0(t, x_p))` with `F(0) = 0`.
pub fn solve_single_damper(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
) -> Result<SolutionBundle, ModelError> {
    check_horizon(horizon)?;
    let (q0a, q0b) = point_traces(data, cfg);
    let t_ab = cfg.delay();
    match (cfg.coupling_a(), cfg.coupling_b()) {
        (Coupling::Damper { gamma }, Coupling::Absent) => {
            let f_a = q0a.exp_convolve(gamma, 0.0).scale(-2.0 * gamma);
            let trace_a = f_a.add(&q0a);
            let trace_b = f_a.shift(t_ab).add(&q0b);
            Ok(bundle(cfg, horizon, f_a, Signal::zero(), trace_a, trace_b, q0a, q0b))
        }
        (Coupling::Absent, Coupling::Damper { gamma }) => {
            let f_b = q0b.exp_convolve(gamma, 0.0).scale(-2.0 * gamma);
            let trace_b = f_b.add(&q0b);
            let trace_a = f_b.shift(t_ab).add(&q0a);
            Ok(bundle(cfg, horizon, Signal::zero(), f_b, trace_a, trace_b, q0a, q0b))
        }
        _ => Err(ModelError::Unsupported("single-damper")),
    }
}

/// Both points pinned: the alternating image series. Each response is a
/// finite sum of delayed free traces with alternating signs, point labels
/// alternating with the echo count.
pub fn solve_two_pins(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
) -> Result<SolutionBundle, ModelError> {
    check_horizon(horizon)?;
    if !matches!(
        (cfg.coupling_a(), cfg.coupling_b()),
        (Coupling::Pin, Coupling::Pin)
    ) {
        return Err(ModelError::Unsupported("two-pins"));
    }
    let (q0a, q0b) = point_traces(data, cfg);
    let t_ab = cfg.delay();
    let n_star = (horizon / t_ab).ceil() as u32;
    let image_sum = |own: &Signal, other: &Signal| {
        let mut f = Signal::zero();
        for n in 0..=n_star {
            let source = if n % 2 == 0 { own } else { other };
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            f = f.add_scaled(&source.shift(n as f64 * t_ab), sign);
        }
        f.restrict_validity(horizon)
    };
    let f_a = image_sum(&q0a, &q0b);
    let f_b = image_sum(&q0b, &q0a);
    Ok(bundle(
        cfg,
        horizon,
        f_a,
        f_b,
        Signal::zero(),
        Signal::zero(),
        q0a,
        q0b,
    ))
}

/// The driving term of the damper-trace fixed-point equation in the
/// pin-plus-damper case: the retarded exponential average of the *increments*
/// of `g(t) = u0(t, x_d) - u0(t - T, x_p)`, plus the decaying memory of the
/// initial displacement at the damper point.
///
/// Evaluated by integration by parts, which turns the Stieltjes integral into
/// `g(t) - 2 gamma (I_{gamma,0} g)(t)` plus `e^{-2 gamma t}` times the
/// initial value; jumps of `g` contribute their exact exponential echoes
/// through the convolution term.
fn damper_drive(g: &Signal, gamma: f64, u0_at_damper: f64) -> Signal {
    let mut i0 = g.add_scaled(&g.exp_convolve(gamma, 0.0), -2.0 * gamma);
    let residue = u0_at_damper - g.eval(0.0);
    if residue != 0.0 {
        i0 = i0.add(&Signal::from_terms(
            0.0,
            vec![PolyExpTerm::new(residue, 0, -2.0 * gamma)],
        ));
    }
    i0
}

struct PinDamperParts {
    pin_is_a: bool,
    gamma: f64,
    q0_pin: Signal,
    q0_damp: Signal,
    drive: Signal,
}

fn pin_damper_parts(
    data: &InitialData,
    cfg: &ModelConfig,
) -> Result<PinDamperParts, ModelError> {
    let (pin_is_a, gamma) = match (cfg.coupling_a(), cfg.coupling_b()) {
        (Coupling::Pin, Coupling::Damper { gamma }) => (true, gamma),
        (Coupling::Damper { gamma }, Coupling::Pin) => (false, gamma),
        _ => return Err(ModelError::Unsupported("pin-damper")),
    };
    let (pin_pos, damp_pos) = if pin_is_a {
        (cfg.x_a(), cfg.x_b())
    } else {
        (cfg.x_b(), cfg.x_a())
    };
    let q0_pin = free_trace(data, cfg.c(), pin_pos);
    let q0_damp = free_trace(data, cfg.c(), damp_pos);
    let g = q0_damp.sub(&q0_pin.shift(cfg.delay()));
    let drive = damper_drive(&g, gamma, data.displacement.eval(damp_pos));
    Ok(PinDamperParts {
        pin_is_a,
        gamma,
        q0_pin,
        q0_damp,
        drive,
    })
}

fn pin_damper_bundle(
    cfg: &ModelConfig,
    horizon: f64,
    parts: PinDamperParts,
    q_damp: Signal,
) -> SolutionBundle {
    let t_ab = cfg.delay();
    let f_damp = q_damp
        .integrate()
        .scale(-2.0 * parts.gamma)
        .restrict_validity(horizon);
    // Pin response recursion with period 2T, unrolled over the horizon:
    // F_p(t) = -u0(t,x_p) - Q_d(t-T) + u0(t-T,x_d) + F_p(t-2T).
    let seed = parts
        .q0_damp
        .shift(t_ab)
        .sub(&q_damp.shift(t_ab))
        .sub(&parts.q0_pin);
    let mut f_pin = Signal::zero();
    let mut k = 0u32;
    while 2.0 * k as f64 * t_ab <= horizon {
        f_pin = f_pin.add(&seed.shift(2.0 * k as f64 * t_ab));
        k += 1;
    }
    f_pin = f_pin.restrict_validity(horizon);
    let (q0a, q0b, f_a, f_b, trace_a, trace_b) = if parts.pin_is_a {
        (
            parts.q0_pin,
            parts.q0_damp,
            f_pin,
            f_damp,
            Signal::zero(),
            q_damp,
        )
    } else {
        (
            parts.q0_damp,
            parts.q0_pin,
            f_damp,
            f_pin,
            q_damp,
            Signal::zero(),
        )
    };
    bundle(cfg, horizon, f_a, f_b, trace_a, trace_b, q0a, q0b)
}

/// Pinned point plus integral coupling. The damper trace solves the delay
/// fixed-point equation `Q_d = 2 gamma op(gamma, 2T) Q_d + drive`, summed by
/// the geometric resolvent; the pin response follows from its `2T`-periodic
/// echo recursion.
pub fn solve_pin_damper(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
) -> Result<SolutionBundle, ModelError> {
    check_horizon(horizon)?;
    let parts = pin_damper_parts(data, cfg)?;
    let q_damp = geometric_resolvent(parts.gamma, 2.0 * cfg.delay(), &parts.drive, horizon);
    Ok(pin_damper_bundle(cfg, horizon, parts, q_damp))
}

/// Same case as [`solve_pin_damper`], but the damper trace is summed through
/// the closed-form power kernels of the retarded operator (the delayed
/// exponential expansion) instead of repeated operator application. The two
/// paths must agree; keeping both makes each check the other.
pub fn solve_pin_damper_exp_series(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
) -> Result<SolutionBundle, ModelError> {
    check_horizon(horizon)?;
    let parts = pin_damper_parts(data, cfg)?;
    let two_t = 2.0 * cfg.delay();
    let mut q_damp = parts.drive.clone();
    let mut n = 1u32;
    let mut coeff = 2.0 * parts.gamma;
    while n as f64 * two_t <= horizon && coeff != 0.0 {
        let term = compose_power(parts.gamma, two_t, n, &parts.drive).scale(coeff);
        q_damp = q_damp.add(&term);
        coeff *= 2.0 * parts.gamma;
        n += 1;
    }
    q_damp = q_damp.restrict_validity(horizon);
    Ok(pin_damper_bundle(cfg, horizon, parts, q_damp))
}

/// Two integral couplings: the coupled response pair is summed by the
/// alternating geometric iteration
/// `F_a^{(k)} = -2 gamma_a op(gamma_a, T) F_b^{(k-1)}` (and mirrored), seeded
/// by the convolved free traces. Term `k` is supported on `t >= k T`, so the
/// iteration stops once past the horizon.
pub fn solve_two_dampers(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
) -> Result<SolutionBundle, ModelError> {
    check_horizon(horizon)?;
    let (gamma_a, gamma_b) = match (cfg.coupling_a(), cfg.coupling_b()) {
        (Coupling::Damper { gamma: ga }, Coupling::Damper { gamma: gb }) => (ga, gb),
        _ => return Err(ModelError::Unsupported("two-dampers")),
    };
    let (q0a, q0b) = point_traces(data, cfg);
    let t_ab = cfg.delay();
    let op_a = RetardedOp::new(gamma_a, t_ab);
    let op_b = RetardedOp::new(gamma_b, t_ab);
    let mut term_a = q0a.exp_convolve(gamma_a, 0.0).scale(-2.0 * gamma_a);
    let mut term_b = q0b.exp_convolve(gamma_b, 0.0).scale(-2.0 * gamma_b);
    let mut f_a = term_a.clone();
    let mut f_b = term_b.clone();
    let n_star = (horizon / t_ab).ceil() as u32;
    for _ in 1..=n_star {
        let next_a = op_a.apply(&term_b).scale(-2.0 * gamma_a);
        let next_b = op_b.apply(&term_a).scale(-2.0 * gamma_b);
        if next_a.piecewise().is_zero() && next_b.piecewise().is_zero() {
            break;
        }
        f_a = f_a.add(&next_a);
        f_b = f_b.add(&next_b);
        term_a = next_a;
        term_b = next_b;
    }
    f_a = f_a.restrict_validity(horizon);
    f_b = f_b.restrict_validity(horizon);
    let trace_a = f_a.add(&f_b.shift(t_ab)).add(&q0a);
    let trace_b = f_a.shift(t_ab).add(&f_b).add(&q0b);
    Ok(bundle(cfg, horizon, f_a, f_b, trace_a, trace_b, q0a, q0b))
}

/// Two integral couplings of equal strength: closed-form summation through
/// the even/odd delayed-exponential kernels. The even-index part of the
/// geometric sum acts on a point's own convolved trace, the odd-index part on
/// the other point's, with signs from the alternating iteration. Must agree
/// with [`solve_two_dampers`].
pub fn solve_two_dampers_equal_gamma(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
) -> Result<SolutionBundle, ModelError> {
    check_horizon(horizon)?;
    let gamma = match (cfg.coupling_a(), cfg.coupling_b()) {
        (Coupling::Damper { gamma: ga }, Coupling::Damper { gamma: gb }) if ga == gb => ga,
        _ => return Err(ModelError::Unsupported("two-dampers-equal-gamma")),
    };
    let (q0a, q0b) = point_traces(data, cfg);
    let t_ab = cfg.delay();
    let own_a = q0a.scale(2.0 * gamma);
    let own_b = q0b.scale(2.0 * gamma);
    let summed = |own: &Signal, other: &Signal| {
        let mut f = Signal::zero();
        let mut n = 0u32;
        let mut coeff = 1.0; // (2 gamma)^n
        while n as f64 * t_ab <= horizon {
            let (source, sign) = if n % 2 == 0 { (own, -1.0) } else { (other, 1.0) };
            if coeff != 0.0 {
                f = f.add(&compose_power_with_base(gamma, t_ab, n, source).scale(sign * coeff));
            } else if n > 0 {
                break;
            }
            coeff *= 2.0 * gamma;
            n += 1;
        }
        f.restrict_validity(horizon)
    };
    let f_a = summed(&own_a, &own_b);
    let f_b = summed(&own_b, &own_a);
    let trace_a = f_a.add(&f_b.shift(t_ab)).add(&q0a);
    let trace_b = f_a.shift(t_ab).add(&f_b).add(&q0b);
    Ok(bundle(cfg, horizon, f_a, f_b, trace_a, trace_b, q0a, q0b))
}

/// Recomputes the response pair directly from the raw alternating recurrences
/// in the solved traces: `depth` unrollings of period `2T`, i.e. `2*depth`
/// delayed `(trace - free trace)` differences per response. Exact on
/// `[0, min(horizon, 2*depth*T))`; for `depth * T >= horizon` it must
/// reproduce the solver's responses. Used as an internal cross-check.
pub fn unroll_recursion(bundle_in: &SolutionBundle, depth: u32) -> ForcePair {
    assert!(depth >= 1, "unrolling depth must be at least 1");
    let t_ab = bundle_in.config.delay();
    assert!(t_ab > 0.0, "unrolling requires distinct interaction points");
    let dq_a = bundle_in.trace_a.sub(&bundle_in.free_trace_a);
    let dq_b = bundle_in.trace_b.sub(&bundle_in.free_trace_b);
    let horizon = bundle_in.horizon().min(2.0 * depth as f64 * t_ab);
    let unrolled = |own: &Signal, other: &Signal| {
        let mut f = Signal::zero();
        for k in 0..2 * depth {
            let source = if k % 2 == 0 { own } else { other };
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            f = f.add_scaled(&source.shift(k as f64 * t_ab), sign);
        }
        f.restrict_validity(horizon)
    };
    ForcePair {
        f_a: unrolled(&dq_a, &dq_b),
        f_b: unrolled(&dq_b, &dq_a),
        horizon,
    }
}
