//! Causal time signals closed under the operations the wave solvers need.
//!
//! A [`Signal`] is a [`Piecewise`] function restricted to `t >= 0`: it
//! vanishes for every negative argument, which is exactly the step-function
//! convention the delay recurrences rely on to be causally well-founded.
//! All operations are pure and return new values; signals are safe to share
//! across threads.
//!
//! Signals produced by series constructors are exact only up to a finite
//! horizon and carry it as a validity bound; [`Signal::eval`] panics past the
//! bound while [`Signal::try_eval`] reports [`SignalError::InsufficientHorizon`].

mod piecewise;

pub use piecewise::{Piecewise, PolyExpTerm, Segment};
pub(crate) use piecewise::reanchor_terms;

use std::io::{self, Write};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SignalError {
    #[error("insufficient horizon: t = {t} exceeds validity bound {valid_until}")]
    InsufficientHorizon { t: f64, valid_until: f64 },
}

/// A causal piecewise poly-exp function of time.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Signal {
    inner: Piecewise,
    valid_until: Option<f64>,
    label: Option<String>,
}

fn min_validity(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Signal {
    /// The identically-zero signal.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit step: 0 for `t < 0`, 1 for `t >= 0`.
    pub fn heaviside() -> Self {
        Self::from_piecewise(Piecewise::step(0.0, 1.0))
    }

    /// Wraps a piecewise function, forcing the value to zero for `t < 0`.
    pub fn from_piecewise(pw: Piecewise) -> Self {
        Self {
            inner: pw.clip_left(0.0),
            valid_until: None,
            label: None,
        }
    }

    /// Single-segment signal starting at `start >= 0`.
    pub fn from_terms(start: f64, terms: Vec<PolyExpTerm>) -> Self {
        assert!(start >= 0.0, "signal segments must start at t >= 0");
        Self::from_piecewise(Piecewise::from_terms(start, terms))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn piecewise(&self) -> &Piecewise {
        &self.inner
    }

    pub fn segments(&self) -> &[Segment] {
        self.inner.segments()
    }

    pub fn segment_count(&self) -> usize {
        self.inner.segments().len()
    }

    /// Upper bound of guaranteed validity, if the signal was built from a
    /// horizon-truncated series.
    pub fn valid_until(&self) -> Option<f64> {
        self.valid_until
    }

    /// Tightens the validity bound to at most `horizon`.
    pub fn restrict_validity(mut self, horizon: f64) -> Self {
        self.valid_until = min_validity(self.valid_until, Some(horizon));
        self
    }

    fn carry_validity(&self, inner: Piecewise) -> Self {
        Self {
            inner,
            valid_until: self.valid_until,
            label: None,
        }
    }

    /// Pointwise evaluation; zero for `t < 0`.
    ///
    /// Panics when `t` lies beyond the validity bound of a horizon-truncated
    /// signal; use [`Signal::try_eval`] where that must be recoverable.
    pub fn eval(&self, t: f64) -> f64 {
        self.try_eval(t).expect("signal evaluated past its horizon")
    }

    pub fn try_eval(&self, t: f64) -> Result<f64, SignalError> {
        if let Some(h) = self.valid_until {
            if t > h {
                return Err(SignalError::InsufficientHorizon { t, valid_until: h });
            }
        }
        Ok(self.inner.eval(t))
    }

    /// Retardation by `delay >= 0`: `result(t) = self(t - delay)`.
    pub fn shift(&self, delay: f64) -> Self {
        assert!(
            delay >= 0.0,
            "only nonnegative shifts preserve causality (got {delay})"
        );
        Self {
            inner: self.inner.shift(delay),
            valid_until: self.valid_until.map(|h| h + delay),
            label: None,
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        self.carry_validity(self.inner.scale(k))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -1.0)
    }

    pub fn add_scaled(&self, other: &Self, k: f64) -> Self {
        Self {
            inner: self.inner.add_scaled(&other.inner, k),
            valid_until: min_validity(self.valid_until, other.valid_until),
            label: None,
        }
    }

    /// Pointwise multiplication by `exp(mu * t)`.
    pub fn mul_exp(&self, mu: f64) -> Self {
        self.carry_validity(self.inner.mul_exp(mu))
    }

    /// Running integral from zero: `result(t) = int_0^t self(tau) dtau`.
    pub fn integrate(&self) -> Self {
        self.carry_validity(self.inner.convolve_kernel(&[PolyExpTerm::constant(1.0)]))
    }

    /// Retarded exponential convolution
    /// `result(t) = int_0^{t-delay} e^{-2 gamma (t - delay - tau)} self(tau) dtau`
    /// for `t >= delay`, zero before. Requires `delay >= 0`.
    ///
    /// A term whose rate equals `-2 gamma` is resonant with the kernel; its
    /// antiderivative gains a polynomial degree instead of dividing by the
    /// vanishing rate difference. Rate coincidence is exact equality of the
    /// stored rates.
    pub fn exp_convolve(&self, gamma: f64, delay: f64) -> Self {
        assert!(delay >= 0.0, "convolution delay must be nonnegative");
        let conv = self
            .inner
            .convolve_kernel(&[PolyExpTerm::new(1.0, 0, -2.0 * gamma)]);
        Self {
            inner: conv.shift(delay),
            valid_until: self.valid_until.map(|h| h + delay),
            label: None,
        }
    }

    /// Piecewise classical derivative of the signal for `t >= 0` (jumps at
    /// segment boundaries are ignored).
    pub fn derivative(&self) -> Self {
        self.carry_validity(self.inner.derivative())
    }

    /// Writes `n_points` rows `t,value` sampled uniformly on
    /// `[t_start, t_end]`, full double precision (17 significant digits).
    pub fn write_csv_samples<W: Write>(
        &self,
        t_start: f64,
        t_end: f64,
        n_points: usize,
        out: &mut W,
    ) -> io::Result<()> {
        assert!(n_points >= 2, "sampling needs at least two points");
        writeln!(out, "t,value")?;
        for j in 0..n_points {
            let t = sample_point(t_start, t_end, j, n_points);
            let v = self
                .try_eval(t)
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e.to_string()))?;
            writeln!(out, "{},{}", format_float(t), format_float(v))?;
        }
        Ok(())
    }
}

/// `j`-th of `n` uniform sample points on `[a, b]`, endpoints included.
pub fn sample_point(a: f64, b: f64, j: usize, n: usize) -> f64 {
    a + (b - a) * (j as f64) / ((n - 1) as f64)
}

/// Full-precision decimal rendering: 17 significant digits survive a
/// round-trip through `f64` exactly.
pub fn format_float(x: f64) -> String {
    format!("{:.16e}", x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_heaviside_examples() {
        assert_eq!(Signal::zero().eval(5.0), 0.0);
        assert_eq!(Signal::heaviside().eval(-0.1), 0.0);
        assert_eq!(Signal::heaviside().eval(0.0), 1.0);
    }

    #[test]
    fn shift_delays_the_step() {
        let shifted = Signal::heaviside().shift(3.0);
        assert_eq!(shifted.eval(2.9), 0.0);
        assert_eq!(shifted.eval(3.1), 1.0);
    }

    #[test]
    #[should_panic(expected = "nonnegative")]
    fn negative_shift_is_rejected() {
        let _ = Signal::heaviside().shift(-0.5);
    }

    #[test]
    fn scale_and_additive_inverse() {
        let h = Signal::heaviside();
        assert_eq!(h.scale(2.5).eval(1.0), 2.5);
        let zero = h.add(&h.scale(-1.0));
        for j in 0..100 {
            let t = 0.07 * j as f64 - 1.0;
            assert_eq!(zero.eval(t), 0.0);
        }
    }

    #[test]
    fn mul_exp_examples() {
        let h = Signal::heaviside();
        let e = h.mul_exp(-1.0);
        assert!((e.eval(2.0) - (-2.0f64).exp()).abs() < 1e-15);
        let back = e.mul_exp(1.0);
        for &t in &[0.0, 0.4, 1.7, 6.0] {
            assert!((back.eval(t) - h.eval(t)).abs() < 1e-12);
        }
        assert!(Signal::zero().mul_exp(7.0).piecewise().is_zero());
    }

    #[test]
    fn integrate_examples() {
        let ramp = Signal::heaviside().integrate();
        for &t in &[0.0, 1.0, 2.5] {
            assert!((ramp.eval(t) - t).abs() < 1e-15);
        }
        assert!(Signal::zero().integrate().piecewise().is_zero());
        let decay = Signal::from_terms(0.0, vec![PolyExpTerm::new(1.0, 0, -1.0)]);
        let integral = decay.integrate();
        assert!((integral.eval(1.0) - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn exp_convolve_examples() {
        assert!(Signal::zero().exp_convolve(0.7, 1.0).piecewise().is_zero());
        let h = Signal::heaviside();
        let conv = h.exp_convolve(0.5, 0.0);
        assert!((conv.eval(1.0) - (1.0 - (-1.0f64).exp())).abs() < 1e-14);
        let delayed = h.exp_convolve(0.5, 2.0);
        for &t in &[0.0, 1.0, 1.999] {
            assert_eq!(delayed.eval(t), 0.0);
        }
        assert!(delayed.eval(3.0) > 0.0);
    }

    #[test]
    #[should_panic(expected = "delay")]
    fn negative_convolution_delay_is_rejected() {
        let _ = Signal::heaviside().exp_convolve(0.5, -1.0);
    }

    #[test]
    fn causality_of_constructed_signals() {
        let s = Signal::from_piecewise(Piecewise::from_terms(
            -2.0,
            vec![PolyExpTerm::new(3.0, 1, 0.2)],
        ));
        assert_eq!(s.eval(-0.5), 0.0);
        assert!(s.eval(0.0) != 0.0 || s.segments()[0].start == 0.0);
        assert!(s.segments().iter().all(|seg| seg.start >= 0.0));
    }

    #[test]
    fn validity_bound_is_enforced() {
        let s = Signal::heaviside().restrict_validity(2.0);
        assert_eq!(s.eval(1.5), 1.0);
        assert!(matches!(
            s.try_eval(2.5),
            Err(SignalError::InsufficientHorizon { .. })
        ));
        let shifted = s.shift(1.0);
        assert_eq!(shifted.valid_until(), Some(3.0));
    }

    #[test]
    fn csv_sampling_format() {
        let mut buf = Vec::new();
        Signal::heaviside()
            .write_csv_samples(0.0, 1.0, 3, &mut buf)
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,value"));
        let first = lines.next().unwrap();
        assert!(first.starts_with("0.0000000000000000e0,"));
        assert_eq!(text.matches('\n').count(), 4);
    }

    #[test]
    fn format_float_round_trips() {
        for &x in &[0.1, -3.5e-7, 123456.789, 1.0 / 3.0] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }
}
