//! Command dispatch: turn a validated [`RunConfig`] into output files.

use std::fs;
use std::path::{Path, PathBuf};

use crate::config::{Command, InitialStateSpec, PotentialSpec, RunConfig, VortexSpec};
use crate::csv::{
    emit_correlation_csv, emit_energies_csv, emit_spectrum_csv, emit_trajectory_csv, emit_vortex_csv,
    write_atomic, CsvTable,
};
use crate::error::{Error, Result};
use crate::field::{normalize, VectorField};
use crate::grid::Grid1D;
use crate::potential::Potential;
use crate::propagator::{propagate, Trajectory};
use crate::representation::{box_energy, box_state, plane_wave, WaveParams};
use crate::spectral::{autocorrelation, spectrum};
use crate::units::UnitSystem;
use crate::vortex::{compton_radius, magnetic_moment, spin_energy, total_spin, VortexModel};
use crate::verify;

/// Build the configured initial field at t = 0, normalized to unit norm for
/// box superpositions.
pub fn build_initial_state(
    spec: &InitialStateSpec,
    grid: &Grid1D,
    t: f64,
    units: &UnitSystem,
) -> Result<VectorField> {
    match spec {
        InitialStateSpec::BoxStates { modes, weights, helicity } => {
            let mut acc = VectorField::zero(*grid);
            for (&n, &w) in modes.iter().zip(weights) {
                let state = box_state(n, *helicity, grid, t, units)?;
                acc = acc.linear_combination(1.0, &state, w)?;
            }
            normalize(&acc)
        }
        InitialStateSpec::PlaneWave { amplitude, k, omega, helicity } => {
            let omega = omega.unwrap_or(units.hbar() * k * k / (2.0 * units.mass()));
            let params = WaveParams::new(*amplitude, *k, omega, *helicity)?;
            plane_wave(&params, grid, t)
        }
    }
}

/// Materialize the configured potential on the grid.
pub fn build_potential(spec: &PotentialSpec, grid: &Grid1D) -> Result<Potential> {
    match spec {
        PotentialSpec::Zero => Ok(Potential::zero(grid)),
        PotentialSpec::ConstantOffset(v) => Potential::zero(grid).with_offset(*v),
        PotentialSpec::File { path, offset } => {
            let text = fs::read_to_string(path)?;
            let mut values = Vec::new();
            for raw in text.lines() {
                let line = match raw.find('#') {
                    Some(pos) => &raw[..pos],
                    None => raw,
                };
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let v: f64 = line.parse().map_err(|_| {
                    Error::validation("potential_file", format!("bad value `{line}`"))
                })?;
                values.push(v);
            }
            if values.len() != grid.n_points() {
                return Err(Error::validation(
                    "potential_file",
                    format!("{} values for a {}-point grid", values.len(), grid.n_points()),
                ));
            }
            Potential::new(values, grid)?.with_offset(*offset)
        }
    }
}

/// Eigenvalue of the discrete Dirichlet Hamiltonian for mode n at V = 0.
pub fn discrete_box_energy(n: usize, grid: &Grid1D, units: &UnitSystem) -> f64 {
    let dz = grid.spacing();
    let arg = n as f64 * std::f64::consts::PI * dz / grid.length();
    units.hbar() * units.hbar() / (units.mass() * dz * dz) * (1.0 - arg.cos())
}

/// (n, ω, E, E_disc) table for the eigen command.
pub fn eigen_energies_table(modes: &[usize], grid: &Grid1D, units: &UnitSystem) -> Result<CsvTable> {
    let max = grid.n_points() - 2;
    let mut rows = Vec::with_capacity(modes.len());
    for &n in modes {
        if n < 1 || n > max {
            return Err(Error::BadQuantumNumber { n, max });
        }
        let energy = box_energy(n, grid.length(), units)?;
        rows.push((n, energy / units.hbar(), energy, discrete_box_energy(n, grid, units)));
    }
    Ok(emit_energies_csv(&rows))
}

/// The five closed-form quantities of the vortex command.
pub fn vortex_table(spec: &VortexSpec, units: &UnitSystem) -> Result<CsvTable> {
    let radius = spec.radius.unwrap_or_else(|| compton_radius(units));
    let omega = spec.omega.unwrap_or_else(|| units.rest_energy() / units.hbar());
    let model = VortexModel::new(*units, spec.n_vortices, radius, omega, spec.packing)?;
    let energy = spin_energy(&model);
    Ok(emit_vortex_csv(
        total_spin(&model),
        magnetic_moment(&model),
        energy.direct,
        energy.paper_stated,
        compton_radius(units),
    ))
}

fn output_dir(config: &RunConfig, output_override: Option<&Path>) -> PathBuf {
    output_override
        .map(Path::to_path_buf)
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from("."))
}

fn write_table(dir: &Path, name: &str, table: &CsvTable) -> Result<PathBuf> {
    let path = dir.join(name);
    table.write(&path)?;
    Ok(path)
}

/// Execute the configured command, writing outputs into the resolved
/// directory. Returns the list of files written.
pub fn run(config: &RunConfig, output_override: Option<&Path>) -> Result<Vec<PathBuf>> {
    let units = config.units();
    let dir = output_dir(config, output_override);
    match config.command {
        Command::Propagate => {
            let grid = config.grid.as_ref().expect("validated").build()?;
            let state = config.initial_state.as_ref().expect("validated");
            let v0 = build_initial_state(state, &grid, 0.0, &units)?;
            let potential = build_potential(&config.potential, &grid)?;
            let traj = propagate(
                &v0,
                &potential,
                config.dt.expect("validated"),
                config.n_steps.expect("validated"),
                config.record_every,
                &units,
            )?;
            Ok(vec![write_table(&dir, "trajectory.csv", &emit_trajectory_csv(&traj))?])
        }
        Command::Spectrum => {
            let grid = config.grid.as_ref().expect("validated").build()?;
            let state = config.initial_state.as_ref().expect("validated");
            let v0 = build_initial_state(state, &grid, 0.0, &units)?;
            let potential = build_potential(&config.potential, &grid)?;
            let traj = propagate(
                &v0,
                &potential,
                config.dt.expect("validated"),
                config.n_steps.expect("validated"),
                config.record_every,
                &units,
            )?;
            let corr = autocorrelation(&traj)?;
            let result = spectrum(&corr)?;
            Ok(vec![
                write_table(&dir, "correlation.csv", &emit_correlation_csv(&corr))?,
                write_table(&dir, "spectrum.csv", &emit_spectrum_csv(&result))?,
            ])
        }
        Command::Eigen => {
            let grid = config.grid.as_ref().expect("validated").build()?;
            let state = config.initial_state.as_ref().expect("validated");
            let InitialStateSpec::BoxStates { modes, .. } = state else {
                return Err(Error::validation("initial_state", "eigen needs box states"));
            };
            let energies = eigen_energies_table(modes, &grid, &units)?;
            let field = build_initial_state(state, &grid, config.time, &units)?;
            let snapshot = Trajectory::new(vec![config.time], vec![field], 1)?;
            Ok(vec![
                write_table(&dir, "energies.csv", &energies)?,
                write_table(&dir, "state.csv", &emit_trajectory_csv(&snapshot))?,
            ])
        }
        Command::Vortex => {
            let table = vortex_table(&config.vortex, &units)?;
            Ok(vec![write_table(&dir, "vortex.csv", &table)?])
        }
        Command::Verify => {
            let results = verify::run_all();
            print!("{}", verify::render_lines(&results));
            let report_path = dir.join("verify_report.csv");
            write_atomic(&report_path, &verify::render_report(&results))?;
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Error::invalid(format!("{failed} acceptance criteria failed")));
            }
            Ok(vec![report_path])
        }
    }
}
