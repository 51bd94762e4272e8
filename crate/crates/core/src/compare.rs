//! Side-by-side runs of the semi-analytic path and the finite-difference
//! oracle, with per-probe error summaries.

use crate::dalembert::InitialData;
use crate::fdtd::{run_probes, GridSpec, OracleError, OracleRun};
use crate::models::SolutionBundle;
use crate::signal::SignalError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompareError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Horizon(#[from] SignalError),
}

/// Error summary for one probe over the compared window.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeComparison {
    pub position: f64,
    /// Peak magnitude of the semi-analytic reference at this probe.
    pub reference_peak: f64,
    pub linf_abs: f64,
    /// `linf_abs` over the reference peak (absolute when the peak vanishes).
    pub linf_rel: f64,
    /// Discrete L2 error over the reference L2 norm.
    pub l2_rel: f64,
}

/// One oracle resolution compared against a solved bundle.
#[derive(Debug, Clone)]
pub struct ComparisonLevel {
    pub n_cells: usize,
    pub dx: f64,
    pub dt: f64,
    pub probes: Vec<ProbeComparison>,
    /// Relative drift of the oracle's conserved energy over the window.
    pub energy_drift: f64,
    pub oracle: OracleRun,
}

/// Runs the oracle at one resolution and measures it against the bundle's
/// reconstruction at every recorded step up to the bundle horizon.
pub fn compare_with_oracle(
    data: &InitialData,
    bundle: &SolutionBundle,
    probes: &[f64],
    n_cells: usize,
    courant: f64,
) -> Result<ComparisonLevel, CompareError> {
    let horizon = bundle.horizon();
    let spec = GridSpec::build(&bundle.config, data, probes, horizon, n_cells, courant)?;
    let run = run_probes(data, &spec, probes)?;
    struct Raw {
        position: f64,
        peak: f64,
        linf: f64,
        sum_sq_diff: f64,
        sum_sq_ref: f64,
    }
    let mut raws = Vec::with_capacity(probes.len());
    for (p, &position) in run.probe_positions.iter().enumerate() {
        let mut raw = Raw {
            position,
            peak: 0.0,
            linf: 0.0,
            sum_sq_diff: 0.0,
            sum_sq_ref: 0.0,
        };
        for (j, &t) in run.times.iter().enumerate() {
            if t > horizon {
                break;
            }
            let exact = bundle.field_at(data, t, position)?;
            let diff = (run.series[p][j] - exact).abs();
            raw.linf = raw.linf.max(diff);
            raw.peak = raw.peak.max(exact.abs());
            raw.sum_sq_diff += diff * diff;
            raw.sum_sq_ref += exact * exact;
        }
        raws.push(raw);
    }
    // Probes where the reference is numerically zero (e.g. behind a pin)
    // are normalized against the field scale across all probes instead.
    let global_peak = raws.iter().map(|r| r.peak).fold(0.0, f64::max);
    let floor = (1e-3 * global_peak).max(1e-30);
    let comparisons = raws
        .into_iter()
        .map(|raw| ProbeComparison {
            position: raw.position,
            reference_peak: raw.peak,
            linf_abs: raw.linf,
            linf_rel: raw.linf / raw.peak.max(floor),
            l2_rel: (raw.sum_sq_diff / raw.sum_sq_ref.max(floor * floor)).sqrt(),
        })
        .collect();
    let energy_drift = run.energy_drift(run.cutoff_time.min(horizon));
    Ok(ComparisonLevel {
        n_cells: run.spec.n_cells,
        dx: run.spec.dx,
        dt: run.spec.dt,
        probes: comparisons,
        energy_drift,
        oracle: run,
    })
}
