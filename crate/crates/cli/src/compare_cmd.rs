//! `compare`: run the semi-analytic path against the finite-difference
//! oracle over a refinement ladder, write the error report, and check the
//! scenario's acceptance thresholds.

use std::path::Path;

use pointwave::compare::{compare_with_oracle, ComparisonLevel};
use pointwave::models::SolverRegistry;

use crate::error::CliError;
use crate::output::CsvWriter;
use crate::scenario::Scenario;

pub fn run(scenario: &Scenario, out_dir: &Path) -> Result<(), CliError> {
    if scenario.probes.is_empty() {
        return Err(CliError::Config(
            "probes: compare mode needs at least one probe".into(),
        ));
    }
    let cfg = scenario.model_config()?;
    let data = scenario.initial_data();
    let registry = SolverRegistry::with_builtin();
    let bundle = registry.solve(&data, &cfg, scenario.horizon, scenario.solver.as_deref())?;
    let writer = CsvWriter::new(out_dir)?;

    let oracle = &scenario.oracle;
    let n_levels = scenario.oracle.refinement_levels;
    let cells: Vec<usize> = (0..n_levels)
        .map(|i| oracle.n_cells >> (n_levels - 1 - i))
        .collect();

    let mut levels: Vec<ComparisonLevel> = Vec::with_capacity(cells.len());
    for (i, &n) in cells.iter().enumerate() {
        let level = compare_with_oracle(&data, &bundle, &scenario.probes, n, oracle.courant)?;
        write_level_outputs(&writer, i, &level)?;
        levels.push(level);
    }

    let mut rows = Vec::new();
    for (i, level) in levels.iter().enumerate() {
        for (p, probe) in level.probes.iter().enumerate() {
            rows.push(vec![
                i as f64,
                level.n_cells as f64,
                level.dx,
                (p + 1) as f64,
                probe.position,
                probe.reference_peak,
                probe.linf_abs,
                probe.linf_rel,
                probe.l2_rel,
            ]);
        }
    }
    writer.write(
        "compare.csv",
        "level,n_cells,dx,probe,position,reference_peak,linf_abs,linf_rel,l2_rel",
        rows.into_iter(),
    )?;

    check_thresholds(scenario, &levels)
}

fn write_level_outputs(
    writer: &CsvWriter,
    index: usize,
    level: &ComparisonLevel,
) -> Result<(), CliError> {
    let run = &level.oracle;
    let header: Vec<String> = std::iter::once("t".to_string())
        .chain((1..=run.series.len()).map(|k| format!("probe_{k}")))
        .collect();
    let probe_rows = run.times.iter().enumerate().map(|(j, &t)| {
        let mut row = Vec::with_capacity(1 + run.series.len());
        row.push(t);
        for series in &run.series {
            row.push(series[j]);
        }
        row
    });
    writer.write(
        &format!("oracle_probes_level{index}.csv"),
        &header.join(","),
        probe_rows,
    )?;
    writer.write(
        &format!("energy_level{index}.csv"),
        "t,E",
        run.energy.iter().map(|&(t, e)| vec![t, e]),
    )?;
    Ok(())
}

fn check_thresholds(scenario: &Scenario, levels: &[ComparisonLevel]) -> Result<(), CliError> {
    let oracle = &scenario.oracle;
    let finest = levels.last().expect("at least one level");
    let mut failures = Vec::new();
    for (p, probe) in finest.probes.iter().enumerate() {
        let ok = probe.linf_rel <= oracle.linf_tolerance;
        println!(
            "check probe-linf [{} cells] probe_{} @ {:.6}: {:.3e} <= {:.1e} {}",
            finest.n_cells,
            p + 1,
            probe.position,
            probe.linf_rel,
            oracle.linf_tolerance,
            verdict(ok)
        );
        if !ok {
            failures.push(format!("probe_{} linf_rel {:.3e}", p + 1, probe.linf_rel));
        }
    }
    let drift_ok = finest.energy_drift <= oracle.energy_drift_tolerance;
    println!(
        "check energy-drift [{} cells]: {:.3e} <= {:.1e} {}",
        finest.n_cells,
        finest.energy_drift,
        oracle.energy_drift_tolerance,
        verdict(drift_ok)
    );
    if !drift_ok {
        failures.push(format!("energy drift {:.3e}", finest.energy_drift));
    }
    if levels.len() >= 2 {
        let worst = |level: &ComparisonLevel| {
            level
                .probes
                .iter()
                .map(|p| p.linf_rel)
                .fold(0.0f64, f64::max)
        };
        let coarse = worst(&levels[0]);
        let fine = worst(finest);
        let improving = fine < coarse;
        println!(
            "check refinement-improves: {:.3e} ({} cells) -> {:.3e} ({} cells) {}",
            coarse,
            levels[0].n_cells,
            fine,
            finest.n_cells,
            verdict(improving)
        );
        if !improving {
            failures.push(format!("no improvement under refinement ({coarse:.3e} -> {fine:.3e})"));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Threshold(failures.join("; ")))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
