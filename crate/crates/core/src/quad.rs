//! Adaptive Simpson quadrature.
//!
//! Used as an implementation-independent reference path: the exact signal
//! operations are cross-checked against direct numerical integration of
//! their defining integrals.

/// Integrates `f` over `[a, b]` to (roughly) absolute tolerance `tol` by
/// recursive Simpson subdivision. Subdivision also stops at the rounding
/// floor of the interval estimates, so a tolerance below what f64 supports
/// degrades gracefully instead of recursing forever.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    adaptive_simpson_with_ends(f, a, b, f(a), f(b), tol)
}

fn adaptive_simpson_with_ends<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    tol: f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 24)
}

/// Integrates `f` over `[a, b]` splitting first at the given interior
/// breakpoints, so that integrand kinks and jumps do not defeat the error
/// estimate. Right-continuous integrands are sampled one ulp inside each
/// piece's right end, so a jump exactly at a breakpoint contributes its
/// left limit there.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> f64 {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > a && x < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.push(b);
    let mut total = 0.0;
    let mut lo = a;
    let piece_tol = tol / cuts.len() as f64;
    for cut in cuts {
        if cut > lo {
            total += adaptive_simpson_with_ends(f, lo, cut, f(lo), f(cut.next_down()), piece_tol);
        }
        lo = cut;
    }
    total
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    let rounding_floor = 1e-14 * (left.abs() + right.abs());
    if depth == 0 || delta.abs() <= (15.0 * tol).max(rounding_floor) {
        left + right + delta / 15.0
    } else {
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_smooth_functions() {
        let val = adaptive_simpson(&|x: f64| x.exp(), 0.0, 1.0, 1e-12);
        assert!((val - (1f64.exp() - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn breakpoints_handle_kinks() {
        // |x - 0.3| over [0, 1]; exact: 0.3^2/2 + 0.7^2/2.
        let f = |x: f64| (x - 0.3).abs();
        let val = integrate_with_breakpoints(&f, 0.0, 1.0, &[0.3], 1e-12);
        assert!((val - (0.045 + 0.245)).abs() < 1e-11);
    }
}
