//! Semi-analytic solutions against the finite-difference oracle.

mod common;

use pointwave::compare::compare_with_oracle;
use pointwave::dalembert::{Coupling, InitialData, ModelConfig};
use pointwave::models::SolverRegistry;
use pointwave::signal::Piecewise;

const COURANT: f64 = 0.9;

fn incident_pulse(c: f64) -> InitialData {
    // Smooth right-moving pulse approaching the couplings from the left.
    InitialData::traveling_right(Piecewise::polynomial_bump(-3.5, 1.0, 1.0, 3), c)
}

fn config(a: Coupling, b: Coupling) -> ModelConfig {
    ModelConfig::new(1.0, -1.0, 1.0, a, b).unwrap()
}

fn solve(data: &InitialData, cfg: &ModelConfig, horizon: f64) -> pointwave::SolutionBundle {
    SolverRegistry::with_builtin()
        .solve(data, cfg, horizon, None)
        .unwrap()
}

fn run_levels(
    data: &InitialData,
    cfg: &ModelConfig,
    horizon: f64,
    probes: &[f64],
    cells: &[usize],
) -> Vec<(usize, f64, f64)> {
    let bundle = solve(data, cfg, horizon);
    cells
        .iter()
        .map(|&n| {
            let level = compare_with_oracle(data, &bundle, probes, n, COURANT).unwrap();
            let worst = level
                .probes
                .iter()
                .map(|p| p.linf_rel)
                .fold(0.0, f64::max);
            println!(
                "  {:>5} cells (dx {:.4}): worst probe linf_rel {:.3e}, energy drift {:.3e}",
                level.n_cells, level.dx, worst, level.energy_drift
            );
            (level.n_cells, worst, level.energy_drift)
        })
        .collect()
}

#[test]
fn single_damper_field_matches_oracle() {
    let data = incident_pulse(1.0);
    let cfg = config(Coupling::Damper { gamma: 0.6 }, Coupling::Absent);
    println!("single damper:");
    let levels = run_levels(&data, &cfg, 6.0, &[-2.0, 0.5], &[500, 1000, 2000]);
    let (_, worst, _) = levels.last().unwrap();
    assert!(*worst <= 2e-2, "linf_rel {worst} at 2000 cells");
    assert!(levels.last().unwrap().1 < levels.first().unwrap().1, "not improving");
}

#[test]
fn single_pin_field_matches_oracle() {
    let data = incident_pulse(1.0);
    let cfg = config(Coupling::Pin, Coupling::Absent);
    println!("single pin:");
    let levels = run_levels(&data, &cfg, 6.0, &[-2.0, 0.5], &[500, 1000, 2000]);
    let (_, worst, _) = levels.last().unwrap();
    assert!(*worst <= 2e-2, "linf_rel {worst} at 2000 cells");
    assert!(levels.last().unwrap().1 < levels.first().unwrap().1, "not improving");
}

#[test]
fn two_pins_confinement_matches_oracle() {
    // Interior data rings between the clamped points.
    let data = InitialData::new(
        Piecewise::polynomial_bump(0.0, 0.6, 1.0, 3),
        Piecewise::zero(),
    );
    let cfg = config(Coupling::Pin, Coupling::Pin);
    println!("two pins:");
    let levels = run_levels(&data, &cfg, 6.0, &[-0.5, 0.3], &[500, 1000, 2000]);
    let (_, worst, _) = levels.last().unwrap();
    assert!(*worst <= 2e-2, "linf_rel {worst} at 2000 cells");
    assert!(levels.last().unwrap().1 < levels.first().unwrap().1, "not improving");
}

#[test]
fn two_dampers_field_and_energy_match_oracle() {
    let data = incident_pulse(1.0);
    let cfg = config(
        Coupling::Damper { gamma: 0.5 },
        Coupling::Damper { gamma: 0.8 },
    );
    println!("two dampers:");
    let levels = run_levels(&data, &cfg, 6.0, &[-2.0, 0.0, 2.0], &[500, 1000, 2000]);
    let (_, worst, drift) = levels.last().unwrap();
    assert!(*worst <= 2e-2, "linf_rel {worst} at 2000 cells");
    assert!(*drift < 1e-3, "energy drift {drift}");
}

#[test]
fn pin_damper_field_matches_oracle() {
    let data = incident_pulse(1.0);
    let cfg = config(Coupling::Pin, Coupling::Damper { gamma: 0.6 });
    println!("pin + damper:");
    let levels = run_levels(&data, &cfg, 6.0, &[-2.0, 0.0, 2.0], &[500, 1000, 2000]);
    let (_, worst, drift) = levels.last().unwrap();
    assert!(*worst <= 2e-2, "linf_rel {worst} at 2000 cells");
    assert!(*drift < 1e-3, "energy drift {drift}");
}
