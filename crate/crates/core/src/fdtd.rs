//! Finite-difference time-domain oracle.
//!
//! Independent leapfrog discretization of the wave equation with the point
//! couplings, used solely to validate the semi-analytic solutions. Point
//! terms are realized as single-node loads of weight `1/dx` (the coupling
//! positions are snapped onto grid nodes by construction); pins clamp their
//! node to zero every step. Plain Dirichlet ends plus a no-reflection time
//! window stand in for absorbing boundaries: the grid is sized so nothing
//! reflected can reach a probe or coupling point within the horizon.

use crate::dalembert::{Coupling, InitialData, ModelConfig};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("oracle run unstable: max |u| = {max_abs:.3e} at step {step}")]
    Unstable { step: usize, max_abs: f64 },
    #[error("grid construction failed: {0}")]
    BadGrid(String),
    #[error("explicit coupling too stiff for the step: gamma*dt = {0:.3e} > 0.1")]
    StiffCoupling(f64),
}

/// Discretization derived from a model configuration, probe set and horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub dx: f64,
    pub dt: f64,
    pub n_steps: usize,
    pub courant: f64,
    pub c: f64,
    pin_nodes: Vec<usize>,
    damper_nodes: Vec<(usize, f64)>,
    /// Earliest time a wall reflection could reach the active region.
    pub cutoff_time: f64,
}

impl GridSpec {
    /// Sizes the domain so that no boundary reflection can reach any probe or
    /// coupling point before `horizon`, snaps the coupling positions onto
    /// grid nodes (adjusting `dx` so both land exactly), and derives the time
    /// step from the Courant number.
    pub fn build(
        cfg: &ModelConfig,
        data: &InitialData,
        probes: &[f64],
        horizon: f64,
        n_cells_hint: usize,
        courant: f64,
    ) -> Result<Self, OracleError> {
        if !(courant > 0.0 && courant <= 1.0) {
            return Err(OracleError::BadGrid(format!(
                "courant number must lie in (0, 1], got {courant}"
            )));
        }
        if n_cells_hint < 16 {
            return Err(OracleError::BadGrid(format!(
                "n_cells too small ({n_cells_hint})"
            )));
        }
        let c = cfg.c();
        let mut relevant: Vec<f64> = probes.to_vec();
        if cfg.coupling_a().is_present() {
            relevant.push(cfg.x_a());
        }
        if cfg.coupling_b().is_present() {
            relevant.push(cfg.x_b());
        }
        if relevant.is_empty() {
            relevant.push(0.5 * (cfg.x_a() + cfg.x_b()));
        }
        let rel_lo = relevant.iter().copied().fold(f64::INFINITY, f64::min);
        let rel_hi = relevant.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (supp_lo, supp_hi) = match data.support_bounds() {
            Some((lo, hi)) => {
                if !lo.is_finite() || !hi.is_finite() {
                    return Err(OracleError::BadGrid(
                        "initial data must be compactly supported for the oracle".into(),
                    ));
                }
                (lo, hi)
            }
            None => (rel_lo, rel_hi),
        };
        let guard = c * horizon;
        let lo0 = (rel_lo - guard).min(supp_lo);
        let hi0 = (rel_hi + guard).max(supp_hi);
        let margin = 0.02 * (hi0 - lo0) + 4.0 * (hi0 - lo0) / n_cells_hint as f64;
        let x_min_raw = lo0 - margin;
        let x_max_raw = hi0 + margin;
        let span = x_max_raw - x_min_raw;

        let both = cfg.coupling_a().is_present() && cfg.coupling_b().is_present();
        let dx0 = span / n_cells_hint as f64;
        let (anchor, dx) = if both {
            let gap = cfg.x_b() - cfg.x_a();
            let n_ab = ((gap / dx0).round() as usize).max(1);
            (cfg.x_a(), gap / n_ab as f64)
        } else if cfg.coupling_a().is_present() {
            (cfg.x_a(), dx0)
        } else if cfg.coupling_b().is_present() {
            (cfg.x_b(), dx0)
        } else {
            (x_min_raw, dx0)
        };
        let left_cells = ((anchor - x_min_raw) / dx).ceil().max(0.0) as usize;
        let x_min = anchor - left_cells as f64 * dx;
        let n_cells = ((x_max_raw - x_min) / dx).ceil() as usize;
        let x_max = x_min + n_cells as f64 * dx;

        let node_of = |x: f64| -> Result<usize, OracleError> {
            let i = ((x - x_min) / dx).round() as usize;
            if i == 0 || i >= n_cells {
                return Err(OracleError::BadGrid(format!(
                    "point {x} falls on or outside the grid boundary"
                )));
            }
            Ok(i)
        };
        let mut pin_nodes = Vec::new();
        let mut damper_nodes = Vec::new();
        for (pos, coupling) in [(cfg.x_a(), cfg.coupling_a()), (cfg.x_b(), cfg.coupling_b())] {
            match coupling {
                Coupling::Absent => {}
                Coupling::Pin => pin_nodes.push(node_of(pos)?),
                Coupling::Damper { gamma } => damper_nodes.push((node_of(pos)?, gamma)),
            }
        }

        let dt = courant * dx / c;
        for &(_, gamma) in &damper_nodes {
            if gamma * dt > 0.1 {
                return Err(OracleError::StiffCoupling(gamma * dt));
            }
        }
        let n_steps = (horizon / dt).ceil() as usize;
        let mut active_lo = supp_lo;
        let mut active_hi = supp_hi;
        for (pos, coupling) in [(cfg.x_a(), cfg.coupling_a()), (cfg.x_b(), cfg.coupling_b())] {
            if coupling.is_present() {
                active_lo = active_lo.min(pos);
                active_hi = active_hi.max(pos);
            }
        }
        let cutoff_time = ((active_lo - x_min).min(x_max - active_hi) / c).max(0.0);

        Ok(Self {
            x_min,
            x_max,
            n_cells,
            dx,
            dt,
            n_steps,
            courant,
            c,
            pin_nodes,
            damper_nodes,
            cutoff_time,
        })
    }

    pub fn node_position(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    /// Nearest grid node to `x`; errors when it lands on the boundary.
    pub fn snap_to_node(&self, x: f64) -> Result<usize, OracleError> {
        let i = ((x - self.x_min) / self.dx).round();
        if !(i >= 1.0) || i >= self.n_cells as f64 {
            return Err(OracleError::BadGrid(format!(
                "probe {x} falls on or outside the grid boundary"
            )));
        }
        Ok(i as usize)
    }

    pub fn pin_nodes(&self) -> &[usize] {
        &self.pin_nodes
    }

    pub fn damper_nodes(&self) -> &[(usize, f64)] {
        &self.damper_nodes
    }
}

/// Two consecutive displacement levels of the leapfrog march.
#[derive(Debug, Clone)]
pub struct GridState {
    pub u_prev: Vec<f64>,
    pub u_curr: Vec<f64>,
    pub step_index: usize,
}

impl GridState {
    /// Initializes levels 0 and 1 from the initial data: exact node values at
    /// `t = 0`, a second-order Taylor half step (including the coupling load)
    /// for `t = dt`.
    pub fn init(spec: &GridSpec, data: &InitialData) -> Self {
        let n = spec.n_cells + 1;
        let velocity = data.velocity_primitive.derivative();
        let mut u0 = vec![0.0; n];
        let mut v0 = vec![0.0; n];
        for i in 0..n {
            let x = spec.node_position(i);
            u0[i] = data.displacement.eval(x);
            v0[i] = velocity.eval(x);
        }
        u0[0] = 0.0;
        u0[n - 1] = 0.0;
        for &i in &spec.pin_nodes {
            u0[i] = 0.0;
        }
        let r2 = spec.courant * spec.courant;
        let mut u1 = vec![0.0; n];
        for i in 1..n - 1 {
            let lap = (u0[i + 1] + u0[i - 1]) - 2.0 * u0[i];
            u1[i] = u0[i] + spec.dt * v0[i] + 0.5 * r2 * lap;
        }
        for &(i, gamma) in &spec.damper_nodes {
            u1[i] -= 0.5 * spec.dt * spec.dt * 4.0 * gamma * spec.c / spec.dx * u0[i];
        }
        for &i in &spec.pin_nodes {
            u1[i] = 0.0;
        }
        Self {
            u_prev: u0,
            u_curr: u1,
            step_index: 1,
        }
    }

    /// Advances one leapfrog step, returning the newly computed level.
    /// The spatial stencil is written symmetrically so mirror-symmetric
    /// setups stay symmetric to rounding.
    pub fn step(&mut self, spec: &GridSpec) -> Vec<f64> {
        let n = self.u_curr.len();
        let r2 = spec.courant * spec.courant;
        let mut next = vec![0.0; n];
        for i in 1..n - 1 {
            let lap = (self.u_curr[i + 1] + self.u_curr[i - 1]) - 2.0 * self.u_curr[i];
            next[i] = 2.0 * self.u_curr[i] - self.u_prev[i] + r2 * lap;
        }
        for &(i, gamma) in &spec.damper_nodes {
            next[i] -= spec.dt * spec.dt * 4.0 * gamma * spec.c / spec.dx * self.u_curr[i];
        }
        for &i in &spec.pin_nodes {
            next[i] = 0.0;
        }
        self.u_prev = std::mem::replace(&mut self.u_curr, next.clone());
        self.step_index += 1;
        next
    }
}

/// Output of an oracle run: per-probe time series at every step and the
/// discrete energy log.
#[derive(Debug, Clone)]
pub struct OracleRun {
    pub spec: GridSpec,
    pub times: Vec<f64>,
    pub probe_nodes: Vec<usize>,
    pub probe_positions: Vec<f64>,
    /// `series[p][j]` is the displacement at probe `p`, time `times[j]`.
    pub series: Vec<Vec<f64>>,
    /// `(t, E)` with `E` the trapezoidal field energy plus the point terms
    /// `2 gamma c u(t, x_p)^2`; logged at interior time levels.
    pub energy: Vec<(f64, f64)>,
    pub cutoff_time: f64,
}

impl OracleRun {
    /// Relative drift of the energy log over `t <= t_limit`.
    pub fn energy_drift(&self, t_limit: f64) -> f64 {
        let window: Vec<f64> = self
            .energy
            .iter()
            .filter(|(t, _)| *t <= t_limit)
            .map(|(_, e)| *e)
            .collect();
        let first = match window.first() {
            Some(&e) if e.abs() > 1e-300 => e,
            _ => return 0.0,
        };
        window
            .iter()
            .map(|e| (e - first).abs() / first.abs())
            .fold(0.0, f64::max)
    }
}

/// Runs the oracle to the spec's horizon, recording every step at the probe
/// nodes. Aborts with [`OracleError::Unstable`] if the field blows up.
pub fn run_probes(
    data: &InitialData,
    spec: &GridSpec,
    probes: &[f64],
) -> Result<OracleRun, OracleError> {
    let probe_nodes: Vec<usize> = probes
        .iter()
        .map(|&x| spec.snap_to_node(x))
        .collect::<Result<_, _>>()?;
    let probe_positions: Vec<f64> = probe_nodes.iter().map(|&i| spec.node_position(i)).collect();

    let mut state = GridState::init(spec, data);
    let scale = state
        .u_prev
        .iter()
        .chain(state.u_curr.iter())
        .fold(1e-30_f64, |m, &v| m.max(v.abs()));
    let blowup = 1e6 * scale;

    let mut times = Vec::with_capacity(spec.n_steps + 1);
    let mut series: Vec<Vec<f64>> = vec![Vec::with_capacity(spec.n_steps + 1); probe_nodes.len()];
    let record = |level: &[f64], t: f64, times: &mut Vec<f64>, series: &mut Vec<Vec<f64>>| {
        times.push(t);
        for (p, &node) in probe_nodes.iter().enumerate() {
            series[p].push(level[node]);
        }
    };
    record(&state.u_prev, 0.0, &mut times, &mut series);
    record(&state.u_curr, spec.dt, &mut times, &mut series);

    let mut energy = Vec::with_capacity(spec.n_steps);
    for n in 1..spec.n_steps {
        let prev = state.u_prev.clone();
        let next = state.step(spec);
        let max_abs = next.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
        if !max_abs.is_finite() || max_abs > blowup {
            return Err(OracleError::Unstable { step: n + 1, max_abs });
        }
        // state.u_prev now holds level n, bracketed by prev and next.
        energy.push((n as f64 * spec.dt, discrete_energy(spec, &prev, &state.u_prev, &next)));
        record(&next, (n + 1) as f64 * spec.dt, &mut times, &mut series);
    }

    Ok(OracleRun {
        spec: spec.clone(),
        times,
        probe_nodes,
        probe_positions,
        series,
        energy,
        cutoff_time: spec.cutoff_time,
    })
}

/// `int (u_t^2 + c^2 u_x^2)/2 dx` plus the point terms `2 gamma c u^2` at
/// the damper nodes. Kinetic part: nodal trapezoid with time-centered
/// `u_t`. Gradient part: one difference per cell — the couplings kink the
/// slope exactly at grid nodes, i.e. at cell boundaries, so per-cell
/// gradients never straddle a kink.
fn discrete_energy(spec: &GridSpec, prev: &[f64], curr: &[f64], next: &[f64]) -> f64 {
    let n = curr.len();
    let c2 = spec.c * spec.c;
    let mut kinetic = 0.0;
    for i in 0..n {
        let ut = (next[i] - prev[i]) / (2.0 * spec.dt);
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        kinetic += w * 0.5 * ut * ut;
    }
    let mut gradient = 0.0;
    for i in 0..n - 1 {
        let ux = (curr[i + 1] - curr[i]) / spec.dx;
        gradient += 0.5 * c2 * ux * ux;
    }
    let mut energy = (kinetic + gradient) * spec.dx;
    for &(i, gamma) in &spec.damper_nodes {
        energy += 2.0 * gamma * spec.c * curr[i] * curr[i];
    }
    energy
}
