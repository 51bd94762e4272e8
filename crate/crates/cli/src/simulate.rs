//! `simulate`: solve the scenario semi-analytically and write the trace,
//! probe and snapshot CSV artifacts.

use std::path::Path;

use pointwave::models::{SolutionBundle, SolverRegistry};
use pointwave::signal::sample_point;

use crate::error::CliError;
use crate::output::{time_tag, CsvWriter};
use crate::scenario::Scenario;

pub fn run(scenario: &Scenario, out_dir: &Path) -> Result<(), CliError> {
    let cfg = scenario.model_config()?;
    let data = scenario.initial_data();
    let registry = SolverRegistry::with_builtin();
    let bundle = registry.solve(&data, &cfg, scenario.horizon, scenario.solver.as_deref())?;
    let writer = CsvWriter::new(out_dir)?;

    write_traces(&writer, scenario, &bundle)?;
    write_probes(&writer, scenario, &data, &bundle)?;
    for &t in &scenario.snapshot_times {
        write_snapshot(&writer, scenario, &data, &bundle, t)?;
    }
    Ok(())
}

fn write_traces(
    writer: &CsvWriter,
    scenario: &Scenario,
    bundle: &SolutionBundle,
) -> Result<(), CliError> {
    let n = scenario.sample_points;
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let t = sample_point(0.0, scenario.horizon, j, n);
        rows.push(vec![
            t,
            bundle.trace_a.try_eval(t)?,
            bundle.trace_b.try_eval(t)?,
            bundle.forces.f_a.try_eval(t)?,
            bundle.forces.f_b.try_eval(t)?,
        ]);
    }
    writer.write("traces.csv", "t,Q_a,Q_b,F_a,F_b", rows.into_iter())?;
    Ok(())
}

fn write_probes(
    writer: &CsvWriter,
    scenario: &Scenario,
    data: &pointwave::InitialData,
    bundle: &SolutionBundle,
) -> Result<(), CliError> {
    if scenario.probes.is_empty() {
        return Ok(());
    }
    let n = scenario.sample_points;
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let t = sample_point(0.0, scenario.horizon, j, n);
        let mut row = Vec::with_capacity(1 + scenario.probes.len());
        row.push(t);
        for &x in &scenario.probes {
            row.push(bundle.field_at(data, t, x)?);
        }
        rows.push(row);
    }
    let header: Vec<String> = std::iter::once("t".to_string())
        .chain((1..=scenario.probes.len()).map(|k| format!("probe_{k}")))
        .collect();
    writer.write("field_probes.csv", &header.join(","), rows.into_iter())?;
    Ok(())
}

fn write_snapshot(
    writer: &CsvWriter,
    scenario: &Scenario,
    data: &pointwave::InitialData,
    bundle: &SolutionBundle,
    t: f64,
) -> Result<(), CliError> {
    if t > scenario.horizon {
        return Err(CliError::Horizon(format!(
            "snapshot time {t} exceeds the horizon {}",
            scenario.horizon
        )));
    }
    let cfg = &bundle.config;
    let (x_min, x_max, points) = match &scenario.snapshot {
        Some(s) => (s.x_min, s.x_max, s.points),
        None => (
            cfg.x_a() - cfg.c() * scenario.horizon / 2.0,
            cfg.x_b() + cfg.c() * scenario.horizon / 2.0,
            401,
        ),
    };
    let mut rows = Vec::with_capacity(points);
    for j in 0..points {
        let x = sample_point(x_min, x_max, j, points);
        rows.push(vec![x, bundle.field_at(data, t, x)?]);
    }
    writer.write(
        &format!("snapshot_{}.csv", time_tag(t)),
        "x,u",
        rows.into_iter(),
    )?;
    Ok(())
}
