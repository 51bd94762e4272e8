//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use pointwave::signal::Signal;

/// Max of `|a(t) - b(t)|` over `n` uniform samples on `[t0, t1]`.
pub fn max_diff(a: &Signal, b: &Signal, t0: f64, t1: f64, n: usize) -> f64 {
    (0..n)
        .map(|j| {
            let t = t0 + (t1 - t0) * j as f64 / (n - 1) as f64;
            (a.eval(t) - b.eval(t)).abs()
        })
        .fold(0.0, f64::max)
}

/// Max of `|s(t)|` over `n` uniform samples on `[t0, t1]`.
pub fn max_abs(s: &Signal, t0: f64, t1: f64, n: usize) -> f64 {
    (0..n)
        .map(|j| {
            let t = t0 + (t1 - t0) * j as f64 / (n - 1) as f64;
            s.eval(t).abs()
        })
        .fold(0.0, f64::max)
}

/// Uniform sample grid, endpoints included.
pub fn grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| t0 + (t1 - t0) * j as f64 / (n - 1) as f64)
        .collect()
}
