//! Browser bindings for the demo page: an animated propagator, an
//! autocorrelation spectrum run, and the vortex calculator. All physics
//! lives in the `phasorqm` crate; this layer only shuttles arrays across
//! the JS boundary.

use js_sys::Float64Array;
use wasm_bindgen::prelude::*;

use phasorqm::config::VortexSpec;
use phasorqm::error::Error;
use phasorqm::field::{normalize, VectorField};
use phasorqm::grid::{Boundary, Grid1D};
use phasorqm::potential::Potential;
use phasorqm::propagator::{propagate, stability_limit, Propagation};
use phasorqm::representation::{box_energy, box_state, Helicity};
use phasorqm::spectral::{autocorrelation, spectrum, spectrum_curve};
use phasorqm::units::UnitSystem;
use phasorqm::vortex::{compton_radius, magnetic_moment, spin_energy, total_spin, VortexModel};
use phasorqm::verify::{box_superposition, gaussian_packet};

fn js_err(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn to_js(data: &[f64]) -> Float64Array {
    Float64Array::from(data)
}

/// Build the initial field for a demo preset. Box presets live on a
/// Dirichlet grid of length π; traveling presets on a periodic grid of
/// length 2π.
fn preset_state(preset: &str, n_points: usize, mode_a: usize, mode_b: usize) -> Result<VectorField, Error> {
    let units = UnitSystem::natural();
    match preset {
        "box" => {
            let grid = Grid1D::new(std::f64::consts::PI, n_points, Boundary::Dirichlet)?;
            let modes: Vec<usize> = if mode_a == mode_b { vec![mode_a] } else { vec![mode_a, mode_b] };
            Ok(box_superposition(&modes, &grid, &units))
        }
        "eigenstate" => {
            let grid = Grid1D::new(std::f64::consts::PI, n_points, Boundary::Dirichlet)?;
            box_state(mode_a, Helicity::Plus, &grid, 0.0, &units)
        }
        "packet" => {
            let length = 2.0 * std::f64::consts::PI;
            let grid = Grid1D::new(length, n_points, Boundary::Periodic)?;
            let packet = gaussian_packet(&grid, 0.5 * length, length / 16.0, mode_a as f64);
            normalize(&packet)
        }
        other => Err(Error::invalid(format!("unknown preset `{other}`"))),
    }
}

/// An in-flight staggered-leapfrog run the page animates frame by frame.
#[wasm_bindgen]
pub struct Simulation {
    run: Propagation,
    initial_norm: f64,
    coordinates: Vec<f64>,
    steps_per_unit_time: f64,
}

#[wasm_bindgen]
impl Simulation {
    /// `preset`: "box" (superposition of two modes), "eigenstate" (single
    /// mode) or "packet" (Gaussian with carrier `mode_a`). `offset` is the
    /// uniform potential shift; `dt_fraction` scales the stability limit.
    #[wasm_bindgen(constructor)]
    pub fn new(
        preset: &str,
        n_points: u32,
        mode_a: u32,
        mode_b: u32,
        offset: f64,
        dt_fraction: f64,
    ) -> Result<Simulation, JsValue> {
        if !(0.0 < dt_fraction && dt_fraction <= 0.9) {
            return Err(JsValue::from_str("dt_fraction must lie in (0, 0.9]"));
        }
        let units = UnitSystem::natural();
        let v0 = preset_state(preset, n_points as usize, mode_a as usize, mode_b as usize)
            .map_err(js_err)?;
        let grid = *v0.grid();
        let potential = Potential::zero(&grid).with_offset(offset).map_err(js_err)?;
        let dt = dt_fraction * stability_limit(&potential, &grid, &units);
        let run = Propagation::new(&v0, &potential, dt, &units).map_err(js_err)?;
        let initial_norm = run.discrete_norm();
        let coordinates = (0..grid.n_points()).map(|j| grid.z(j)).collect();
        Ok(Simulation { run, initial_norm, coordinates, steps_per_unit_time: 1.0 / dt })
    }

    /// Advance by `sim_time` units of simulated time (whole steps).
    pub fn advance_time(&mut self, sim_time: f64) -> Result<(), JsValue> {
        let steps = (sim_time * self.steps_per_unit_time).round().max(1.0) as usize;
        self.run.advance(steps).map_err(js_err)
    }

    pub fn time(&self) -> f64 {
        self.run.t()
    }

    pub fn dt(&self) -> f64 {
        self.run.dt()
    }

    pub fn n_points(&self) -> u32 {
        self.coordinates.len() as u32
    }

    pub fn coordinates(&self) -> Float64Array {
        to_js(&self.coordinates)
    }

    pub fn psi_x(&self) -> Float64Array {
        to_js(self.run.colocated().psi_x())
    }

    pub fn psi_y(&self) -> Float64Array {
        to_js(self.run.colocated().psi_y())
    }

    pub fn magnitude(&self) -> Float64Array {
        to_js(&self.run.colocated().magnitude())
    }

    /// Relative drift of the conserved staggered norm since t = 0.
    pub fn norm_drift(&self) -> f64 {
        (self.run.discrete_norm() - self.initial_norm).abs() / self.initial_norm
    }
}

/// Everything the spectrum panel plots.
#[wasm_bindgen]
pub struct SpectrumOutput {
    times: Vec<f64>,
    c_re: Vec<f64>,
    c_im: Vec<f64>,
    curve_omegas: Vec<f64>,
    curve_amplitudes: Vec<f64>,
    peak_omegas: Vec<f64>,
    peak_amplitudes: Vec<f64>,
    expected_omegas: Vec<f64>,
    bin_width: f64,
}

#[wasm_bindgen]
impl SpectrumOutput {
    pub fn times(&self) -> Float64Array {
        to_js(&self.times)
    }

    pub fn c_re(&self) -> Float64Array {
        to_js(&self.c_re)
    }

    pub fn c_im(&self) -> Float64Array {
        to_js(&self.c_im)
    }

    pub fn curve_omegas(&self) -> Float64Array {
        to_js(&self.curve_omegas)
    }

    pub fn curve_amplitudes(&self) -> Float64Array {
        to_js(&self.curve_amplitudes)
    }

    pub fn peak_omegas(&self) -> Float64Array {
        to_js(&self.peak_omegas)
    }

    pub fn peak_amplitudes(&self) -> Float64Array {
        to_js(&self.peak_amplitudes)
    }

    /// Analytic ω_n = E_n/ħ + offset for the requested modes.
    pub fn expected_omegas(&self) -> Float64Array {
        to_js(&self.expected_omegas)
    }

    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }
}

/// Propagate an equal superposition of box modes and extract its spectrum.
#[wasm_bindgen]
pub fn box_spectrum(
    n_points: u32,
    modes: Vec<u32>,
    offset: f64,
    duration: f64,
) -> Result<SpectrumOutput, JsValue> {
    if !(10.0..=2000.0).contains(&duration) {
        return Err(JsValue::from_str("duration must lie in [10, 2000]"));
    }
    if n_points > 1001 {
        return Err(JsValue::from_str("n_points capped at 1001 for the demo"));
    }
    let units = UnitSystem::natural();
    let length = std::f64::consts::PI;
    let grid = Grid1D::new(length, n_points as usize, Boundary::Dirichlet).map_err(js_err)?;
    let modes: Vec<usize> = modes.iter().map(|&n| n as usize).collect();
    let v0 = box_superposition(&modes, &grid, &units);
    let potential = Potential::zero(&grid).with_offset(offset).map_err(js_err)?;

    let dt = 0.9 * stability_limit(&potential, &grid, &units);
    // aim for ~4096 samples over the requested duration
    let record_every = ((duration / dt) / 4096.0).ceil().max(1.0) as usize;
    let n_steps = (duration / dt / record_every as f64).ceil() as usize * record_every;
    let traj = propagate(&v0, &potential, dt, n_steps, record_every, &units).map_err(js_err)?;
    let corr = autocorrelation(&traj).map_err(js_err)?;
    let result = spectrum(&corr).map_err(js_err)?;
    let (curve_omegas, curve_amplitudes) = spectrum_curve(&corr).map_err(js_err)?;

    let expected_omegas = modes
        .iter()
        .map(|&n| box_energy(n, length, &units).map(|e| e / units.hbar() + offset))
        .collect::<Result<Vec<f64>, Error>>()
        .map_err(js_err)?;

    Ok(SpectrumOutput {
        times: corr.times().to_vec(),
        c_re: corr.c_re().to_vec(),
        c_im: corr.c_im().to_vec(),
        curve_omegas,
        curve_amplitudes,
        peak_omegas: result.peaks.iter().map(|p| p.omega).collect(),
        peak_amplitudes: result.peaks.iter().map(|p| p.amplitude).collect(),
        expected_omegas,
        bin_width: result.peaks.first().map(|p| p.bin_width).unwrap_or(0.0),
    })
}

/// Closed-form vortex quantities for the calculator panel.
#[wasm_bindgen]
pub struct VortexOutput {
    total_spin: f64,
    spin_energy_direct: f64,
    spin_energy_paper: f64,
    magnetic_moment: f64,
    rim_speed_over_c: f64,
    compton_radius: f64,
    half_hbar: f64,
    bohr_magneton: f64,
    rest_energy: f64,
}

#[wasm_bindgen]
impl VortexOutput {
    pub fn total_spin(&self) -> f64 {
        self.total_spin
    }

    pub fn spin_energy_direct(&self) -> f64 {
        self.spin_energy_direct
    }

    pub fn spin_energy_paper(&self) -> f64 {
        self.spin_energy_paper
    }

    pub fn magnetic_moment(&self) -> f64 {
        self.magnetic_moment
    }

    pub fn rim_speed_over_c(&self) -> f64 {
        self.rim_speed_over_c
    }

    pub fn compton_radius(&self) -> f64 {
        self.compton_radius
    }

    /// ħ/2 in the active units, for comparison against `total_spin`.
    pub fn half_hbar(&self) -> f64 {
        self.half_hbar
    }

    /// eħ/2m in the active units, for comparison against `magnetic_moment`.
    pub fn bohr_magneton(&self) -> f64 {
        self.bohr_magneton
    }

    pub fn rest_energy(&self) -> f64 {
        self.rest_energy
    }
}

/// Evaluate the vortex model with radius and rotation rate given as
/// fractions of their defaults (Compton radius, rest-mass rate).
#[wasm_bindgen]
pub fn vortex_quantities(
    n_vortices: u32,
    radius_scale: f64,
    omega_scale: f64,
    packing: f64,
    si_units: bool,
) -> Result<VortexOutput, JsValue> {
    let units = if si_units { UnitSystem::si_electron() } else { UnitSystem::natural() };
    let spec = VortexSpec {
        n_vortices: n_vortices as usize,
        radius: Some(radius_scale * compton_radius(&units)),
        omega: Some(omega_scale * units.rest_energy() / units.hbar()),
        packing,
    };
    let model = VortexModel::new(
        units,
        spec.n_vortices,
        spec.radius.expect("set above"),
        spec.omega.expect("set above"),
        spec.packing,
    )
    .map_err(js_err)?;
    let energy = spin_energy(&model);
    Ok(VortexOutput {
        total_spin: total_spin(&model),
        spin_energy_direct: energy.direct,
        spin_energy_paper: energy.paper_stated,
        magnetic_moment: magnetic_moment(&model),
        rim_speed_over_c: model.rim_speed() / units.c(),
        compton_radius: compton_radius(&units),
        half_hbar: units.hbar() / 2.0,
        bohr_magneton: units.charge() * units.hbar() / (2.0 * units.mass()),
        rest_energy: units.rest_energy(),
    })
}
