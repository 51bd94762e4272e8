//! Scenario files: the TOML schema, validation, and conversion into the
//! library's model types.
//!
//! Initial profiles are lists of piece descriptors that are *summed*:
//! `poly` pieces carry raw poly-exp terms in the local coordinate
//! `x - start`, `step` and `bump` are common shapes expanded exactly.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use pointwave::dalembert::{Coupling, InitialData, ModelConfig};
use pointwave::signal::{Piecewise, PolyExpTerm, Segment};

use crate::error::CliError;

fn default_sample_points() -> usize {
    801
}

fn default_n_cells() -> usize {
    2000
}

fn default_courant() -> f64 {
    0.9
}

fn default_levels() -> usize {
    3
}

fn default_linf_tolerance() -> f64 {
    2e-2
}

fn default_energy_drift_tolerance() -> f64 {
    1e-3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub model: ModelSection,
    pub horizon: f64,
    #[serde(default)]
    pub probes: Vec<f64>,
    /// Explicit solver name; omitted means dispatch on the coupling pattern.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default = "default_sample_points")]
    pub sample_points: usize,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot: Option<SnapshotSection>,
    pub initial: InitialSection,
    #[serde(default)]
    pub oracle: OracleSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub c: f64,
    pub x_a: f64,
    pub x_b: f64,
    pub coupling_a: CouplingSpec,
    pub coupling_b: CouplingSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum CouplingSpec {
    Absent,
    Pin,
    Damper { gamma: f64 },
}

impl From<&CouplingSpec> for Coupling {
    fn from(spec: &CouplingSpec) -> Coupling {
        match spec {
            CouplingSpec::Absent => Coupling::Absent,
            CouplingSpec::Pin => Coupling::Pin,
            CouplingSpec::Damper { gamma } => Coupling::Damper { gamma: *gamma },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    #[serde(default)]
    pub displacement: Vec<PieceSpec>,
    #[serde(default)]
    pub velocity_primitive: Vec<PieceSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PieceSpec {
    /// Raw poly-exp terms on `[start, end)` (open-ended without `end`),
    /// evaluated in the local coordinate `x - start`.
    Poly {
        start: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        end: Option<f64>,
        terms: Vec<TermSpec>,
    },
    /// `height` for `x >= at`.
    Step { at: f64, height: f64 },
    /// `amplitude * (1 - ((x-center)/half_width)^2)^exponent` on
    /// `[center - half_width, center + half_width)`.
    Bump {
        center: f64,
        half_width: f64,
        amplitude: f64,
        exponent: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: f64,
    #[serde(default)]
    pub power: u32,
    #[serde(default)]
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnapshotSection {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    #[serde(default = "default_n_cells")]
    pub n_cells: usize,
    #[serde(default = "default_courant")]
    pub courant: f64,
    #[serde(default = "default_levels")]
    pub refinement_levels: usize,
    #[serde(default = "default_linf_tolerance")]
    pub linf_tolerance: f64,
    #[serde(default = "default_energy_drift_tolerance")]
    pub energy_drift_tolerance: f64,
}

impl Default for OracleSection {
    fn default() -> Self {
        Self {
            n_cells: default_n_cells(),
            courant: default_courant(),
            refinement_levels: default_levels(),
            linf_tolerance: default_linf_tolerance(),
            energy_drift_tolerance: default_energy_drift_tolerance(),
        }
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let scenario: Scenario =
            toml::from_str(text).map_err(|e| CliError::Config(format!("config parse: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    fn validate(&self) -> Result<(), CliError> {
        let fail = |field: &str, why: String| Err(CliError::Config(format!("{field}: {why}")));
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return fail("horizon", format!("must be positive and finite, got {}", self.horizon));
        }
        if self.sample_points < 2 {
            return fail("sample_points", format!("must be at least 2, got {}", self.sample_points));
        }
        if self.probes.iter().any(|p| !p.is_finite()) {
            return fail("probes", "all probe positions must be finite".into());
        }
        if let Some(snap) = &self.snapshot {
            if !(snap.x_min < snap.x_max) || snap.points < 2 {
                return fail("snapshot", "needs x_min < x_max and points >= 2".into());
            }
        }
        if self.snapshot_times.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return fail("snapshot_times", "must be finite and nonnegative".into());
        }
        let oracle = &self.oracle;
        if oracle.n_cells < 16 {
            return fail("oracle.n_cells", format!("must be at least 16, got {}", oracle.n_cells));
        }
        if !(oracle.courant > 0.0 && oracle.courant <= 1.0) {
            return fail("oracle.courant", format!("must lie in (0, 1], got {}", oracle.courant));
        }
        if !(1..=8).contains(&oracle.refinement_levels) {
            return fail(
                "oracle.refinement_levels",
                format!("must lie in 1..=8, got {}", oracle.refinement_levels),
            );
        }
        if !(oracle.linf_tolerance > 0.0) || !(oracle.energy_drift_tolerance > 0.0) {
            return fail("oracle", "tolerances must be positive".into());
        }
        for (name, pieces) in [
            ("initial.displacement", &self.initial.displacement),
            ("initial.velocity_primitive", &self.initial.velocity_primitive),
        ] {
            for piece in pieces {
                piece.validate().map_err(|why| {
                    CliError::Config(format!("{name}: {why}"))
                })?;
            }
        }
        // Surfaces coupling/geometry problems at parse time.
        self.model_config()?;
        Ok(())
    }

    pub fn model_config(&self) -> Result<ModelConfig, CliError> {
        ModelConfig::new(
            self.model.c,
            self.model.x_a,
            self.model.x_b,
            (&self.model.coupling_a).into(),
            (&self.model.coupling_b).into(),
        )
        .map_err(|e| CliError::Config(format!("model: {e}")))
    }

    pub fn initial_data(&self) -> InitialData {
        InitialData::new(
            build_profile(&self.initial.displacement),
            build_profile(&self.initial.velocity_primitive),
        )
    }
}

impl PieceSpec {
    fn validate(&self) -> Result<(), String> {
        match self {
            PieceSpec::Poly { start, end, terms } => {
                if !start.is_finite() {
                    return Err("piece start must be finite".into());
                }
                if let Some(end) = end {
                    if !(end > start) {
                        return Err(format!("piece end {end} must exceed start {start}"));
                    }
                }
                if terms.iter().any(|t| !t.coeff.is_finite() || !t.rate.is_finite()) {
                    return Err("term coefficients and rates must be finite".into());
                }
                if terms.iter().any(|t| t.power > 60) {
                    return Err("term powers above 60 are not supported".into());
                }
                Ok(())
            }
            PieceSpec::Step { at, height } => {
                if at.is_finite() && height.is_finite() {
                    Ok(())
                } else {
                    Err("step parameters must be finite".into())
                }
            }
            PieceSpec::Bump {
                center,
                half_width,
                amplitude,
                exponent,
            } => {
                if !center.is_finite() || !amplitude.is_finite() {
                    Err("bump parameters must be finite".into())
                } else if !(half_width.is_finite() && *half_width > 0.0) {
                    Err(format!("bump half_width must be positive, got {half_width}"))
                } else if *exponent > 20 {
                    Err("bump exponents above 20 are not supported".into())
                } else {
                    Ok(())
                }
            }
        }
    }

    fn to_piecewise(&self) -> Piecewise {
        match self {
            PieceSpec::Poly { start, end, terms } => {
                let poly_terms = terms
                    .iter()
                    .map(|t| PolyExpTerm::new(t.coeff, t.power, t.rate))
                    .collect();
                let mut segments = vec![Segment::new(*start, poly_terms)];
                if let Some(end) = end {
                    segments.push(Segment::new(*end, Vec::new()));
                }
                Piecewise::new(segments)
            }
            PieceSpec::Step { at, height } => Piecewise::step(*at, *height),
            PieceSpec::Bump {
                center,
                half_width,
                amplitude,
                exponent,
            } => Piecewise::polynomial_bump(*center, *half_width, *amplitude, *exponent),
        }
    }
}

fn build_profile(pieces: &[PieceSpec]) -> Piecewise {
    pieces
        .iter()
        .fold(Piecewise::zero(), |acc, piece| acc.add(&piece.to_piecewise()))
}
