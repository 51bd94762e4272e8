//! Piecewise polynomial-times-exponential functions on the real line.
//!
//! A [`Piecewise`] is an ordered list of segments. Each segment owns a list
//! of [`PolyExpTerm`]s evaluated in *local* coordinates `s = t - start`, and
//! is in effect from its start up to the start of the next segment (the last
//! segment extends to infinity). Before the first segment the value is zero.
//!
//! Local anchoring keeps coefficients well-conditioned far from the origin;
//! the binomial re-anchoring needed when segment boundaries are merged is
//! done by [`reanchor_terms`].

/// Coefficients smaller than this in magnitude are dropped during
/// consolidation.
const COEFF_FLOOR: f64 = 1e-300;

/// One additive term `coeff * s^power * exp(rate * s)` in the local
/// coordinate `s` of the segment that owns it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyExpTerm {
    pub coeff: f64,
    pub power: u32,
    pub rate: f64,
}

impl PolyExpTerm {
    pub fn new(coeff: f64, power: u32, rate: f64) -> Self {
        Self { coeff, power, rate }
    }

    pub fn constant(coeff: f64) -> Self {
        Self::new(coeff, 0, 0.0)
    }

    fn eval_local(&self, s: f64) -> f64 {
        self.coeff * s.powi(self.power as i32) * (self.rate * s).exp()
    }
}

/// A run of terms in effect from `start` until the next segment begins.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub terms: Vec<PolyExpTerm>,
}

impl Segment {
    pub fn new(start: f64, terms: Vec<PolyExpTerm>) -> Self {
        Self { start, terms }
    }

    fn eval_at(&self, t: f64) -> f64 {
        eval_terms(&self.terms, t - self.start)
    }
}

pub(crate) fn eval_terms(terms: &[PolyExpTerm], s: f64) -> f64 {
    terms.iter().map(|term| term.eval_local(s)).sum()
}

/// Rewrites `terms` anchored at some point `a` so they are anchored at
/// `a + delta` instead, leaving the represented function unchanged:
/// `c (s+delta)^p e^{r(s+delta)}` expanded binomially in the new local `s`.
pub(crate) fn reanchor_terms(terms: &[PolyExpTerm], delta: f64) -> Vec<PolyExpTerm> {
    if delta == 0.0 {
        return terms.to_vec();
    }
    let mut out = Vec::new();
    for term in terms {
        let base = term.coeff * (term.rate * delta).exp();
        let p = term.power;
        // k counts down from power p: coefficient C(p,k) * delta^k on s^{p-k}.
        let mut binom = 1.0;
        let mut delta_pow = 1.0;
        for k in 0..=p {
            out.push(PolyExpTerm::new(base * binom * delta_pow, p - k, term.rate));
            if k < p {
                binom *= (p - k) as f64 / (k + 1) as f64;
                delta_pow *= delta;
            }
        }
    }
    out
}

/// Merges terms with identical `(power, rate)` and drops negligible
/// coefficients; sorts for a deterministic layout.
fn consolidate_terms(mut terms: Vec<PolyExpTerm>) -> Vec<PolyExpTerm> {
    terms.sort_by(|a, b| {
        a.power
            .cmp(&b.power)
            .then_with(|| a.rate.total_cmp(&b.rate))
    });
    let mut out: Vec<PolyExpTerm> = Vec::with_capacity(terms.len());
    for term in terms {
        match out.last_mut() {
            Some(last) if last.power == term.power && last.rate == term.rate => {
                last.coeff += term.coeff;
            }
            _ => out.push(term),
        }
    }
    out.retain(|t| t.coeff.abs() >= COEFF_FLOOR);
    out
}

/// Piecewise poly-exp function of one real variable. Zero before the first
/// segment; segment starts are strictly increasing.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Piecewise {
    segments: Vec<Segment>,
}

impl Piecewise {
    /// The identically-zero function.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from raw segments: sorts by start, merges coincident starts,
    /// consolidates terms and prunes redundant zero segments.
    pub fn new(segments: Vec<Segment>) -> Self {
        let mut pw = Self { segments };
        pw.normalize();
        pw
    }

    /// Single segment starting at `start`, extending to infinity.
    pub fn from_terms(start: f64, terms: Vec<PolyExpTerm>) -> Self {
        Self::new(vec![Segment::new(start, terms)])
    }

    /// The unit step `1(x >= at) * height`.
    pub fn step(at: f64, height: f64) -> Self {
        Self::from_terms(at, vec![PolyExpTerm::constant(height)])
    }

    /// Compactly supported polynomial bump
    /// `amplitude * (1 - ((x-center)/half_width)^2)^exponent` on
    /// `[center - half_width, center + half_width)`, zero elsewhere.
    pub fn polynomial_bump(center: f64, half_width: f64, amplitude: f64, exponent: u32) -> Self {
        assert!(half_width > 0.0, "bump half_width must be positive");
        // (1 - xi^2)^m expanded in xi, then substituted xi = (s - w)/w with s
        // the local coordinate from the left edge.
        let m = exponent as usize;
        let mut poly_xi = vec![0.0; 2 * m + 1];
        let mut binom = 1.0;
        for k in 0..=m {
            poly_xi[2 * k] = if k % 2 == 0 { binom } else { -binom };
            binom *= (m - k) as f64 / (k + 1) as f64;
        }
        // Substitute xi = s/w - 1 by Horner composition with the affine map.
        let w = half_width;
        let mut coeffs: Vec<f64> = vec![0.0];
        for &c in poly_xi.iter().rev() {
            // coeffs <- coeffs * (s/w - 1) + c
            let mut next = vec![0.0; coeffs.len() + 1];
            for (j, &a) in coeffs.iter().enumerate() {
                next[j + 1] += a / w;
                next[j] -= a;
            }
            next[0] += c;
            coeffs = next;
        }
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| PolyExpTerm::new(amplitude * c, j as u32, 0.0))
            .collect();
        Self::new(vec![
            Segment::new(center - half_width, terms),
            Segment::new(center + half_width, Vec::new()),
        ])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_zero(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn first_start(&self) -> Option<f64> {
        self.segments.first().map(|s| s.start)
    }

    /// `(lower, upper)` bounds outside which the function is identically
    /// zero; `upper` is `+inf` when the last segment carries terms.
    pub fn support_bounds(&self) -> Option<(f64, f64)> {
        let lower = self.first_start()?;
        let mut upper = f64::INFINITY;
        for seg in self.segments.iter().rev() {
            if seg.terms.is_empty() {
                upper = seg.start;
            } else {
                break;
            }
        }
        Some((lower, upper))
    }

    fn normalize(&mut self) {
        debug_assert!(self.segments.iter().all(|s| !s.start.is_nan()));
        self.segments
            .sort_by(|a, b| a.start.total_cmp(&b.start));
        let mut merged: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for seg in self.segments.drain(..) {
            match merged.last_mut() {
                Some(last) if last.start == seg.start => last.terms.extend(seg.terms),
                _ => merged.push(seg),
            }
        }
        for seg in &mut merged {
            seg.terms = consolidate_terms(std::mem::take(&mut seg.terms));
        }
        // Leading zero segments carry no information; collapse runs of
        // consecutive zero segments to their first representative.
        let mut out: Vec<Segment> = Vec::with_capacity(merged.len());
        for seg in merged {
            let empty = seg.terms.is_empty();
            match out.last() {
                None if empty => continue,
                Some(last) if empty && last.terms.is_empty() => continue,
                _ => out.push(seg),
            }
        }
        self.segments = out;
    }

    /// Index of the segment in effect at `t`, if any.
    fn active_index(&self, t: f64) -> Option<usize> {
        let idx = self.segments.partition_point(|s| s.start <= t);
        idx.checked_sub(1)
    }

    /// Pointwise evaluation. Zero before the first segment.
    pub fn eval(&self, t: f64) -> f64 {
        match self.active_index(t) {
            Some(i) => self.segments[i].eval_at(t),
            None => 0.0,
        }
    }

    /// Terms in effect at `t`, re-anchored to `t` as local origin.
    fn active_terms_at(&self, t: f64) -> Vec<PolyExpTerm> {
        match self.active_index(t) {
            Some(i) => reanchor_terms(&self.segments[i].terms, t - self.segments[i].start),
            None => Vec::new(),
        }
    }

    /// Translation: `result(t) = self(t - delta)`.
    pub fn shift(&self, delta: f64) -> Self {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment::new(s.start + delta, s.terms.clone()))
            .collect();
        Self { segments }
    }

    pub fn scale(&self, k: f64) -> Self {
        if k == 0.0 {
            return Self::zero();
        }
        let segments = self
            .segments
            .iter()
            .map(|s| {
                Segment::new(
                    s.start,
                    s.terms
                        .iter()
                        .map(|t| PolyExpTerm::new(t.coeff * k, t.power, t.rate))
                        .collect(),
                )
            })
            .collect();
        Self::new(segments)
    }

    /// `self + k * other`, on the merged segment grid.
    pub fn add_scaled(&self, other: &Self, k: f64) -> Self {
        let mut starts: Vec<f64> = self
            .segments
            .iter()
            .chain(other.segments.iter())
            .map(|s| s.start)
            .collect();
        starts.sort_by(f64::total_cmp);
        starts.dedup();
        let segments = starts
            .into_iter()
            .map(|start| {
                let mut terms = self.active_terms_at(start);
                for t in other.active_terms_at(start) {
                    terms.push(PolyExpTerm::new(t.coeff * k, t.power, t.rate));
                }
                Segment::new(start, terms)
            })
            .collect();
        Self::new(segments)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, 1.0)
    }

    /// Pointwise multiplication by `exp(mu * t)`; exact (each term's rate
    /// shifts by `mu` and its coefficient absorbs `exp(mu * start)`).
    pub fn mul_exp(&self, mu: f64) -> Self {
        let segments = self
            .segments
            .iter()
            .map(|s| {
                let gain = (mu * s.start).exp();
                Segment::new(
                    s.start,
                    s.terms
                        .iter()
                        .map(|t| PolyExpTerm::new(t.coeff * gain, t.power, t.rate + mu))
                        .collect(),
                )
            })
            .collect();
        Self::new(segments)
    }

    /// Piecewise classical derivative (jump discontinuities are ignored).
    pub fn derivative(&self) -> Self {
        let segments = self
            .segments
            .iter()
            .map(|s| {
                let mut terms = Vec::with_capacity(2 * s.terms.len());
                for t in &s.terms {
                    if t.power > 0 {
                        terms.push(PolyExpTerm::new(
                            t.coeff * t.power as f64,
                            t.power - 1,
                            t.rate,
                        ));
                    }
                    if t.rate != 0.0 {
                        terms.push(PolyExpTerm::new(t.coeff * t.rate, t.power, t.rate));
                    }
                }
                Segment::new(s.start, terms)
            })
            .collect();
        Self::new(segments)
    }

    /// Restriction to `[t_min, inf)`: the value for `t < t_min` becomes zero,
    /// values at and after `t_min` are unchanged.
    pub fn clip_left(&self, t_min: f64) -> Self {
        match self.first_start() {
            None => Self::zero(),
            Some(first) if first >= t_min => self.clone(),
            _ => {
                let mut segments = vec![Segment::new(t_min, self.active_terms_at(t_min))];
                for seg in &self.segments {
                    if seg.start > t_min {
                        segments.push(seg.clone());
                    }
                }
                Self::new(segments)
            }
        }
    }

    /// Composition with an affine map: `result(t) = self(alpha*t + beta)`,
    /// represented on `[t_min, inf)`. `alpha` may be negative (the piece
    /// order reverses); it must be nonzero.
    pub fn compose_affine(&self, alpha: f64, beta: f64, t_min: f64) -> Self {
        assert!(alpha != 0.0, "compose_affine requires a nonzero slope");
        if self.segments.is_empty() {
            return Self::zero();
        }
        let map = |x: f64| (x - beta) / alpha;
        // Spans of t in ascending order: (start, source piece index or None
        // for the implicit zero region before the first piece).
        let mut spans: Vec<(f64, Option<usize>)> = Vec::with_capacity(self.segments.len() + 1);
        if alpha > 0.0 {
            spans.push((f64::NEG_INFINITY, None));
            for (k, seg) in self.segments.iter().enumerate() {
                spans.push((map(seg.start), Some(k)));
            }
        } else {
            spans.push((f64::NEG_INFINITY, Some(self.segments.len() - 1)));
            for k in (1..self.segments.len()).rev() {
                spans.push((map(self.segments[k].start), Some(k - 1)));
            }
            spans.push((map(self.segments[0].start), None));
        }
        let cut = spans.partition_point(|(lo, _)| *lo <= t_min) - 1;
        let mut segments = Vec::with_capacity(spans.len() - cut);
        for (i, (lo, piece)) in spans.iter().enumerate().skip(cut) {
            let start = if i == cut { t_min } else { *lo };
            let terms = match piece {
                None => Vec::new(),
                Some(k) => {
                    let seg = &self.segments[*k];
                    // xi - s_k = alpha*s + d in the new local coordinate s.
                    let d = alpha * start + beta - seg.start;
                    let mut out = Vec::new();
                    for term in &seg.terms {
                        let base = term.coeff * (term.rate * d).exp();
                        let p = term.power;
                        let mut binom = 1.0;
                        let mut d_pow = 1.0;
                        let mut alpha_pow = vec![1.0];
                        for _ in 0..p {
                            alpha_pow.push(alpha_pow.last().unwrap() * alpha);
                        }
                        for k2 in 0..=p {
                            out.push(PolyExpTerm::new(
                                base * binom * d_pow * alpha_pow[(p - k2) as usize],
                                p - k2,
                                term.rate * alpha,
                            ));
                            if k2 < p {
                                binom *= (p - k2) as f64 / (k2 + 1) as f64;
                                d_pow *= d;
                            }
                        }
                    }
                    out
                }
            };
            segments.push(Segment::new(start, terms));
        }
        Self::new(segments)
    }

    /// Exact causal convolution `(K * self)(t) = int_0^t K(t-tau) self(tau) dtau`
    /// for a poly-exp kernel `K` given as a term list in its own argument.
    /// The input must vanish for negative times (first start >= 0).
    pub fn convolve_kernel(&self, kernel: &[PolyExpTerm]) -> Self {
        if let Some(first) = self.first_start() {
            assert!(first >= 0.0, "convolution input must be causal");
        } else {
            return Self::zero();
        }
        let segs = &self.segments;
        let mut out = Vec::with_capacity(segs.len());
        // Contribution of all completed segments, anchored at the current
        // segment's start.
        let mut hist: Vec<PolyExpTerm> = Vec::new();
        for m in 0..segs.len() {
            let mut terms = hist.clone();
            for kt in kernel {
                for ft in &segs[m].terms {
                    conv_monomials(kt, ft, &mut terms);
                }
            }
            out.push(Segment::new(segs[m].start, terms));
            if m + 1 < segs.len() {
                let len = segs[m + 1].start - segs[m].start;
                for kt in kernel {
                    for ft in &segs[m].terms {
                        segment_tail_terms(kt, ft, len, &mut hist);
                    }
                }
                hist = reanchor_terms(&consolidate_terms(hist), len);
            }
        }
        Self::new(out)
    }
}

/// Coefficients `d_l` with
/// `int s^n e^{rho s} ds = e^{rho s} * sum_l d_l s^{n-l} + C`, `rho != 0`.
fn antideriv_coeffs(n: u32, rho: f64) -> Vec<f64> {
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut cur = 1.0 / rho;
    d.push(cur);
    for l in 1..=n {
        cur = -cur * (n - l + 1) as f64 / rho;
        d.push(cur);
    }
    d
}

/// `int_0^len s^n e^{rho s} ds`.
fn moment(n: u32, rho: f64, len: f64) -> f64 {
    if rho == 0.0 {
        len.powi(n as i32 + 1) / (n as f64 + 1.0)
    } else {
        let d = antideriv_coeffs(n, rho);
        let mut poly = 0.0;
        for (l, dl) in d.iter().enumerate() {
            poly += dl * len.powi((n as usize - l) as i32);
        }
        (rho * len).exp() * poly - d[n as usize]
    }
}

/// Running part of the convolution of a kernel monomial with a segment
/// monomial: `kc * int_0^s (s-u)^q e^{nu (s-u)} u^p e^{r u} du` appended to
/// `out` as terms in the segment-local coordinate `s`.
fn conv_monomials(kt: &PolyExpTerm, ft: &PolyExpTerm, out: &mut Vec<PolyExpTerm>) {
    let kc = kt.coeff * ft.coeff;
    if kc == 0.0 {
        return;
    }
    let (q, nu) = (kt.power, kt.rate);
    let (p, r) = (ft.power, ft.rate);
    let rho = r - nu;
    if rho == 0.0 {
        // Beta integral: int_0^s (s-u)^q u^p du = q! p! / (p+q+1)! * s^{p+q+1}.
        let mut c = kc;
        for j in 1..=(q as u64) {
            c *= j as f64;
        }
        for j in 1..=(p as u64) {
            c *= j as f64;
        }
        for j in 1..=((p + q + 1) as u64) {
            c /= j as f64;
        }
        out.push(PolyExpTerm::new(c, p + q + 1, nu));
        return;
    }
    let mut binom = 1.0;
    for i in 0..=q {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let pref = kc * binom * sign;
        let n = p + i;
        let d = antideriv_coeffs(n, rho);
        for (l, dl) in d.iter().enumerate() {
            out.push(PolyExpTerm::new(pref * dl, (q - i) + (n - l as u32), r));
        }
        out.push(PolyExpTerm::new(-pref * d[n as usize], q - i, nu));
        if i < q {
            binom *= (q - i) as f64 / (i + 1) as f64;
        }
    }
}

/// Contribution of a completed segment of length `len` to the convolution at
/// later times, appended to `out` as terms anchored at the segment's start
/// (argument `w = t - start`, valid for `w >= len`).
fn segment_tail_terms(kt: &PolyExpTerm, ft: &PolyExpTerm, len: f64, out: &mut Vec<PolyExpTerm>) {
    let kc = kt.coeff * ft.coeff;
    if kc == 0.0 {
        return;
    }
    let (q, nu) = (kt.power, kt.rate);
    let (p, r) = (ft.power, ft.rate);
    let rho = r - nu;
    let mut binom = 1.0;
    for i in 0..=q {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let m = moment(p + i, rho, len);
        out.push(PolyExpTerm::new(kc * binom * sign * m, q - i, nu));
        if i < q {
            binom *= (q - i) as f64 / (i + 1) as f64;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heaviside() -> Piecewise {
        Piecewise::step(0.0, 1.0)
    }

    #[test]
    fn eval_respects_segment_bounds() {
        let pw = Piecewise::new(vec![
            Segment::new(1.0, vec![PolyExpTerm::constant(2.0)]),
            Segment::new(3.0, Vec::new()),
        ]);
        assert_eq!(pw.eval(0.5), 0.0);
        assert_eq!(pw.eval(1.0), 2.0);
        assert_eq!(pw.eval(2.9), 2.0);
        assert_eq!(pw.eval(3.0), 0.0);
        assert_eq!(pw.eval(100.0), 0.0);
    }

    #[test]
    fn step_value_convention_is_closed_left() {
        let h = heaviside();
        assert_eq!(h.eval(0.0), 1.0);
        assert_eq!(h.eval(-1e-12), 0.0);
    }

    #[test]
    fn reanchoring_preserves_values() {
        let terms = vec![
            PolyExpTerm::new(1.5, 3, -0.7),
            PolyExpTerm::new(-0.25, 1, 0.4),
        ];
        let moved = reanchor_terms(&terms, 2.5);
        for &s in &[0.0, 0.3, 1.7, 4.0] {
            let direct = eval_terms(&terms, s + 2.5);
            let anchored = eval_terms(&moved, s);
            assert!((direct - anchored).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn add_merges_boundaries() {
        let a = Piecewise::step(0.0, 1.0);
        let b = Piecewise::step(1.0, 2.0);
        let sum = a.add(&b);
        assert_eq!(sum.eval(0.5), 1.0);
        assert_eq!(sum.eval(1.5), 3.0);
        let cancel = sum.add_scaled(&sum, -1.0);
        for &t in &[0.0, 0.5, 1.0, 2.0, 7.5] {
            assert_eq!(cancel.eval(t), 0.0);
        }
    }

    #[test]
    fn mul_exp_matches_pointwise_product() {
        let pw = Piecewise::from_terms(2.0, vec![PolyExpTerm::new(1.2, 2, -0.3)]);
        let scaled = pw.mul_exp(0.9);
        for &t in &[2.0, 2.7, 5.5] {
            let expect = pw.eval(t) * (0.9f64 * t).exp();
            assert!((scaled.eval(t) - expect).abs() < 1e-12 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn derivative_of_poly_exp_term() {
        let pw = Piecewise::from_terms(0.0, vec![PolyExpTerm::new(2.0, 2, -1.0)]);
        let dv = pw.derivative();
        for &t in &[0.1, 0.9, 2.3] {
            let expect = 2.0 * (2.0 * t - t * t) * (-t as f64).exp();
            assert!((dv.eval(t) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn convolution_with_exponential_kernel() {
        // Unit step against e^{-s}: (1 - e^{-t}).
        let conv = heaviside().convolve_kernel(&[PolyExpTerm::new(1.0, 0, -1.0)]);
        let expect = 1.0 - (-1.0f64).exp();
        assert!((conv.eval(1.0) - expect).abs() < 1e-14);
        assert_eq!(conv.eval(0.0), 0.0);
    }

    #[test]
    fn convolution_resonant_case_raises_degree() {
        // e^{-t} step against kernel e^{-s}: t e^{-t}.
        let f = Piecewise::from_terms(0.0, vec![PolyExpTerm::new(1.0, 0, -1.0)]);
        let conv = f.convolve_kernel(&[PolyExpTerm::new(1.0, 0, -1.0)]);
        for &t in &[0.0, 0.5, 1.0, 3.0] {
            assert!((conv.eval(t) - t * (-t).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn convolution_accumulates_across_segments() {
        // Box pulse on [0,1): running integral is t, then frozen at 1.
        let pulse = Piecewise::new(vec![
            Segment::new(0.0, vec![PolyExpTerm::constant(1.0)]),
            Segment::new(1.0, Vec::new()),
        ]);
        let integral = pulse.convolve_kernel(&[PolyExpTerm::constant(1.0)]);
        assert!((integral.eval(0.5) - 0.5).abs() < 1e-15);
        assert!((integral.eval(1.0) - 1.0).abs() < 1e-15);
        assert!((integral.eval(4.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn compose_affine_forward_and_reflected() {
        let bump = Piecewise::polynomial_bump(0.0, 1.0, 1.0, 2);
        let forward = bump.compose_affine(2.0, -0.5, -10.0);
        let backward = bump.compose_affine(-2.0, 0.5, -10.0);
        for &t in &[-0.7, -0.2, 0.0, 0.3, 0.8] {
            let expect_f = bump.eval(2.0 * t - 0.5);
            let expect_b = bump.eval(-2.0 * t + 0.5);
            assert!((forward.eval(t) - expect_f).abs() < 1e-12);
            assert!((backward.eval(t) - expect_b).abs() < 1e-12);
        }
    }

    #[test]
    fn clip_left_zeroes_earlier_values() {
        let pw = Piecewise::from_terms(-2.0, vec![PolyExpTerm::new(1.0, 1, 0.0)]);
        let clipped = pw.clip_left(0.0);
        assert_eq!(clipped.eval(-1.0), 0.0);
        // Value continues the original function, not a re-started ramp.
        assert!((clipped.eval(1.0) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn bump_profile_shape() {
        let bump = Piecewise::polynomial_bump(1.0, 0.5, 2.0, 3);
        assert!((bump.eval(1.0) - 2.0).abs() < 1e-13);
        assert_eq!(bump.eval(0.4), 0.0);
        assert_eq!(bump.eval(1.6), 0.0);
        let xi: f64 = 0.6;
        let expect = 2.0 * (1.0 - xi * xi).powi(3);
        assert!((bump.eval(1.0 + 0.5 * xi) - expect).abs() < 1e-13);
    }

    #[test]
    fn support_bounds_reports_compact_support() {
        let bump = Piecewise::polynomial_bump(0.0, 1.0, 1.0, 2);
        let (lo, hi) = bump.support_bounds().unwrap();
        assert_eq!(lo, -1.0);
        assert_eq!(hi, 1.0);
        assert_eq!(
            Piecewise::step(2.0, 1.0).support_bounds(),
            Some((2.0, f64::INFINITY))
        );
    }
}
