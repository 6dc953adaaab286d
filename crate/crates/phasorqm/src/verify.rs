//! The toolkit's central claims as executable checks.
//!
//! Each criterion runs at a pinned tolerance and reports pass/fail plus the
//! measured numbers. The report text is deterministic: it never contains
//! timings or anything else that varies between runs of the same binary.

use std::f64::consts::PI;
use std::time::Instant;

use crate::field::{normalize, norm_squared, VectorField};
use crate::grid::{Boundary, Grid1D};
use crate::oracle::complex_oracle_propagate;
use crate::potential::Potential;
use crate::propagator::{discrete_hamiltonian, propagate, stability_limit, Propagation};
use crate::representation::{box_state, complex_from_vector, Helicity};
use crate::spectral::{autocorrelation, spectrum, SpectrumResult};
use crate::units::UnitSystem;
use crate::vortex::{
    compton_radius, magnetic_moment, scaling_report, spin_energy, total_spin, VortexModel,
};
use crate::{config, csv, runner};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Deterministic measurement summary (no commas, no timings).
    pub details: String,
}

impl CriterionResult {
    fn new(id: usize, name: &'static str, passed: bool, details: String) -> Self {
        Self { id, name, passed, details: details.replace(',', ";") }
    }
}

/// Gaussian wavepacket envelope with carrier wavenumber `k0`:
/// exp(−(z−center)²/4σ²)·(cos k0 z, sin k0 z). Dirichlet endpoints are
/// clamped to zero. Not normalized.
pub fn gaussian_packet(grid: &Grid1D, center: f64, sigma: f64, k0: f64) -> VectorField {
    let n = grid.n_points();
    let mut psi_x = Vec::with_capacity(n);
    let mut psi_y = Vec::with_capacity(n);
    for j in 0..n {
        let z = grid.z(j);
        let arg = (z - center) / (2.0 * sigma);
        let env = (-arg * arg).exp();
        psi_x.push(env * (k0 * z).cos());
        psi_y.push(env * (k0 * z).sin());
    }
    if grid.boundary() == Boundary::Dirichlet {
        psi_x[0] = 0.0;
        psi_y[0] = 0.0;
        psi_x[n - 1] = 0.0;
        psi_y[n - 1] = 0.0;
    }
    VectorField::new(psi_x, psi_y, *grid).expect("gaussian packet entries are finite")
}

/// Equal-weight normalized superposition of box states at t = 0.
pub fn box_superposition(modes: &[usize], grid: &Grid1D, units: &UnitSystem) -> VectorField {
    let mut acc = VectorField::zero(*grid);
    for &n in modes {
        let state = box_state(n, Helicity::Plus, grid, 0.0, units)
            .expect("verification modes fit the grid");
        acc = acc.linear_combination(1.0, &state, 1.0).expect("same grid");
    }
    normalize(&acc).expect("superposition is nonzero")
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Criteria 1, 2 and 5 share one run: 512-point periodic grid, Gaussian
/// packet, V ≡ 0, dt = 0.5 × stability limit, 10⁴ steps.
fn group_equivalence() -> Vec<CriterionResult> {
    let started = Instant::now();
    let units = UnitSystem::natural();
    let grid = Grid1D::new(2.0 * PI, 512, Boundary::Periodic).expect("valid grid");
    let potential = Potential::zero(&grid);
    let v0 = normalize(&gaussian_packet(&grid, PI, 2.0 * PI / 16.0, 8.0)).expect("nonzero");
    let dt = 0.5 * stability_limit(&potential, &grid, &units);
    let n_steps = 10_000;
    let record_every = 1_000;

    // vector run with per-step norm tracking and periodic co-located samples
    let mut run = Propagation::new(&v0, &potential, dt, &units).expect("stable dt");
    let norm0 = run.discrete_norm();
    let mut max_drift = 0.0f64;
    let mut vector_samples = vec![v0.clone()];
    for step in 1..=n_steps {
        run.advance(1).expect("stable run");
        max_drift = max_drift.max((run.discrete_norm() - norm0).abs());
        if step % record_every == 0 {
            vector_samples.push(run.colocated());
        }
    }

    // independent complex oracle on the same initial data
    let c0 = complex_from_vector(&v0);
    let oracle = complex_oracle_propagate(&c0, &potential, dt, n_steps, record_every, &units)
        .expect("oracle run");
    let mut max_equiv = 0.0f64;
    for (v, c) in vector_samples.iter().zip(oracle.samples()) {
        max_equiv = max_equiv.max(max_abs_diff(v.psi_x(), c.re()));
        max_equiv = max_equiv.max(max_abs_diff(v.psi_y(), c.im()));
    }

    // criterion 5: conjugate-pair duality. Flipping Ψy and reversing the
    // staggered trajectory is an exact symmetry of the scheme, so the
    // flipped end state propagates back onto the flipped initial data.
    let reversed_x = run.x().to_vec();
    let reversed_y: Vec<f64> = run.y_half_behind().iter().map(|y| -y).collect();
    let mut reversed =
        Propagation::from_staggered(reversed_x, reversed_y, &potential, dt, grid, &units)
            .expect("stable dt");
    reversed.advance(n_steps).expect("stable run");
    let mut max_duality = max_abs_diff(reversed.x(), v0.psi_x());
    let hx = discrete_hamiltonian(v0.psi_x(), &potential, &grid, &units).expect("shapes match");
    let half = 0.5 * dt / units.hbar();
    for ((&y0, &h), &y_rev) in v0.psi_y().iter().zip(&hx).zip(reversed.y_half_ahead()) {
        let y_behind_start = y0 + half * h;
        max_duality = max_duality.max((y_rev + y_behind_start).abs());
    }

    let elapsed = started.elapsed().as_secs_f64();
    let within_budget = elapsed < 10.0;
    vec![
        CriterionResult::new(
            1,
            "representation equivalence (vector vs complex oracle)",
            max_equiv <= 1e-12 && within_budget,
            format!("max-abs difference {max_equiv:.3e}; tolerance 1e-12; budget 10 s"),
        ),
        CriterionResult::new(
            2,
            "staggered norm conservation over 1e4 steps",
            max_drift / norm0 <= 1e-10 && within_budget,
            format!("relative drift {:.3e}; tolerance 1e-10", max_drift / norm0),
        ),
        CriterionResult::new(
            5,
            "helicity flip + time reversal duality",
            max_duality <= 1e-12,
            format!("max-abs return difference {max_duality:.3e}; tolerance 1e-12"),
        ),
    ]
}

struct SpectrumRun {
    result: SpectrumResult,
    bin_width: f64,
}

fn box_spectrum_run(
    v0: &VectorField,
    potential: &Potential,
    dt: f64,
    n_steps: usize,
    record_every: usize,
    units: &UnitSystem,
) -> SpectrumRun {
    let traj = propagate(v0, potential, dt, n_steps, record_every, units).expect("stable run");
    let corr = autocorrelation(&traj).expect("uniform trajectory");
    let result = spectrum(&corr).expect("enough samples");
    let bin_width = result.peaks.first().map(|p| p.bin_width).unwrap_or(f64::NAN);
    SpectrumRun { result, bin_width }
}

fn nearest_peak(result: &SpectrumResult, omega: f64) -> Option<f64> {
    result
        .peaks
        .iter()
        .map(|p| p.omega)
        .min_by(|a, b| {
            (a - omega)
                .abs()
                .partial_cmp(&(b - omega).abs())
                .expect("finite")
        })
}

/// Criteria 3 and 4: box spectrum and its uniform-offset shift.
fn group_spectrum() -> Vec<CriterionResult> {
    let units = UnitSystem::natural();
    let grid = Grid1D::new(PI, 401, Boundary::Dirichlet).expect("valid grid");
    let v0 = box_superposition(&[1, 2, 3], &grid, &units);
    let offset_value = 3.0;
    let base_potential = Potential::zero(&grid);
    let offset_potential = Potential::zero(&grid).with_offset(offset_value).expect("finite");

    // one dt for both runs, inside the margin of the tighter (offset) bound
    let dt = 0.9 * stability_limit(&offset_potential, &grid, &units);
    let record_every = 3_600;
    let n_steps = 3_200 * record_every;
    let expected = [0.5, 2.0, 4.5];

    // criterion 3
    let started3 = Instant::now();
    let base = box_spectrum_run(&v0, &base_potential, dt, n_steps, record_every, &units);
    let resolution_ok = base.bin_width <= 0.01;
    let mut peak_errors = Vec::new();
    let mut measured = Vec::new();
    for &omega in &expected {
        match nearest_peak(&base.result, omega) {
            Some(found) => {
                peak_errors.push((found - omega).abs());
                measured.push(found);
            }
            None => {
                peak_errors.push(f64::INFINITY);
                measured.push(f64::NAN);
            }
        }
    }
    let peaks_ok = peak_errors.iter().all(|&e| e <= base.bin_width);
    let ratio_ok = measured.len() == 3
        && ((measured[1] / measured[0]) / 4.0 - 1.0).abs() <= 0.02
        && ((measured[2] / measured[0]) / 9.0 - 1.0).abs() <= 0.02;
    let elapsed3 = started3.elapsed().as_secs_f64();
    let c3 = CriterionResult::new(
        3,
        "box spectrum at 0.5 / 2.0 / 4.5",
        resolution_ok && peaks_ok && ratio_ok && elapsed3 < 60.0,
        format!(
            "bin_width {:.3e}; peak errors {:.3e} {:.3e} {:.3e}; ratios {:.4} {:.4}; budget 60 s",
            base.bin_width,
            peak_errors[0],
            peak_errors[1],
            peak_errors[2],
            measured[1] / measured[0],
            measured[2] / measured[0],
        ),
    );

    // criterion 4: repeat with the uniform offset
    let started4 = Instant::now();
    let offs = box_spectrum_run(&v0, &offset_potential, dt, n_steps, record_every, &units);
    let mut shift_errors = Vec::new();
    for &omega in &expected {
        match nearest_peak(&offs.result, omega + offset_value) {
            Some(found) => shift_errors.push((found - (omega + offset_value)).abs()),
            None => shift_errors.push(f64::INFINITY),
        }
    }
    let shift_tol = base.bin_width.max(offs.bin_width);
    let shifts_ok = shift_errors.iter().all(|&e| e <= shift_tol);

    // magnitude invariance needs a finer dt than the spectral runs: the
    // co-location average wobbles at O((ωdt)²) which at the stability-scale
    // dt sits near 1e-8; the gauge property itself is dt-independent
    let dt_mag = 1e-6;
    let n_mag = 20_000;
    let rec_mag = 2_000;
    let tb = propagate(&v0, &base_potential, dt_mag, n_mag, rec_mag, &units).expect("stable");
    let to = propagate(&v0, &offset_potential, dt_mag, n_mag, rec_mag, &units).expect("stable");
    let mut max_mag_diff = 0.0f64;
    for (a, b) in tb.samples().iter().zip(to.samples()) {
        max_mag_diff = max_mag_diff.max(max_abs_diff(&a.magnitude(), &b.magnitude()));
    }
    let elapsed4 = started4.elapsed().as_secs_f64();
    let c4 = CriterionResult::new(
        4,
        "uniform offset shifts every peak by V0/hbar and keeps |psi|",
        shifts_ok && max_mag_diff <= 1e-9 && elapsed4 < 60.0,
        format!(
            "shift errors {:.3e} {:.3e} {:.3e} (tol {:.3e}); max |psi| change {:.3e} (tol 1e-9); budget 60 s",
            shift_errors[0], shift_errors[1], shift_errors[2], shift_tol, max_mag_diff,
        ),
    );
    vec![c3, c4]
}

/// Criteria 6 and 7: vortex closed forms.
fn group_vortex() -> Vec<CriterionResult> {
    let natural = UnitSystem::natural();
    let si = UnitSystem::si_electron();

    let mut spin_worst = 0.0f64;
    for &n in &[1usize, 7, 100, 1_000_000] {
        for units in [natural, si] {
            let model = VortexModel::with_defaults(units, n).expect("defaults are physical");
            let expected = units.hbar() / 2.0;
            let rel = (total_spin(&model) - expected).abs() / expected;
            spin_worst = spin_worst.max(rel);
        }
    }

    let si_model = VortexModel::with_defaults(si, 12).expect("defaults are physical");
    let mu = magnetic_moment(&si_model);
    let mu_exact = si.charge() * si.hbar() / (2.0 * si.mass());
    let mu_rel = (mu - mu_exact).abs() / mu_exact;
    let mu_lit = (mu - 9.274e-24).abs() / 9.274e-24;

    let rc = compton_radius(&si);
    let rc_rel = (rc - 3.8616e-13).abs() / 3.8616e-13;

    // scaling by 2 is evaluated at half the Compton radius so the scaled
    // configuration sits exactly at the rim-speed bound
    let natural_small = VortexModel::new(
        natural,
        4,
        0.5 * compton_radius(&natural),
        natural.rest_energy() / natural.hbar(),
        1.0,
    )
    .expect("half-radius model");
    let scaling = scaling_report(&natural_small, 2.0).expect("rim speed exactly c");
    let scaling_ok = scaling.vortex_mass_ratio == 4.0
        && scaling.vortex_angular_momentum_ratio == 16.0
        && scaling.total_angular_momentum_ratio == 4.0
        && scaling.vortex_count_ratio == 0.25;

    let c6 = CriterionResult::new(
        6,
        "vortex closed forms: spin / moment / Compton radius / scaling",
        spin_worst <= 1e-12 && mu_rel <= 1e-12 && mu_lit <= 1e-3 && rc_rel <= 1e-3 && scaling_ok,
        format!(
            "spin rel err {spin_worst:.3e}; moment rel err {mu_rel:.3e}; moment vs 9.274e-24 {mu_lit:.3e}; \
             Compton vs 3.8616e-13 {rc_rel:.3e}; scaling exact {scaling_ok}"
        ),
    );

    let energy = spin_energy(&VortexModel::with_defaults(natural, 1).expect("defaults"));
    let c7 = CriterionResult::new(
        7,
        "spin energy reported both ways (mc^2/4 direct; mc^2/2 as stated)",
        energy.direct == 0.25 && energy.paper_stated == 0.5,
        format!("direct {}; stated {}", energy.direct, energy.paper_stated),
    );
    vec![c6, c7]
}

/// Criterion 8: second-order convergence against the semi-discrete solution.
fn group_convergence() -> Vec<CriterionResult> {
    let started = Instant::now();
    let units = UnitSystem::natural();
    let grid = Grid1D::new(PI, 101, Boundary::Dirichlet).expect("valid grid");
    let potential = Potential::zero(&grid);
    let v0 = box_state(1, Helicity::Plus, &grid, 0.0, &units).expect("mode fits");

    let dz = grid.spacing();
    let omega_d = (1.0 - (PI * dz / grid.length()).cos()) / (dz * dz); // ħ = m = 1
    let period = 2.0 * PI / 0.5;

    let mut errors = Vec::new();
    for level in 0..4 {
        let dt = 8e-4 / (1 << level) as f64;
        let n = (period / dt).round() as usize;
        let traj = propagate(&v0, &potential, dt, n, n, &units).expect("stable run");
        let end = &traj.samples()[1];
        let t = traj.sample_times()[1];
        let (c, s) = ((omega_d * t).cos(), (omega_d * t).sin());
        let mut err2 = 0.0;
        for j in 0..grid.n_points() {
            let sx = v0.psi_x()[j];
            let dx = end.psi_x()[j] - sx * c;
            let dy = end.psi_y()[j] + sx * s;
            err2 += (dx * dx + dy * dy) * grid.weight(j);
        }
        errors.push(err2.sqrt() / norm_squared(&v0).sqrt());
    }
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    let ratios_ok = ratios.iter().all(|&r| (3.5..=4.5).contains(&r));
    let elapsed = started.elapsed().as_secs_f64();
    vec![CriterionResult::new(
        8,
        "second-order convergence in dt (one box period)",
        ratios_ok && elapsed < 30.0,
        format!(
            "errors {:.3e} {:.3e} {:.3e} {:.3e}; ratios {:.3} {:.3} {:.3}; budget 30 s",
            errors[0], errors[1], errors[2], errors[3], ratios[0], ratios[1], ratios[2],
        ),
    )]
}

/// Criterion 9: the emission pipeline is deterministic — rebuilding every
/// command output from scratch yields byte-identical text.
fn group_determinism() -> Vec<CriterionResult> {
    let render_all = || -> crate::error::Result<String> {
        let units = UnitSystem::natural();
        let grid = Grid1D::new(2.0 * PI, 64, Boundary::Periodic)?;
        let potential = Potential::zero(&grid);
        let v0 = normalize(&gaussian_packet(&grid, PI, PI / 4.0, 4.0))?;
        let dt = 0.5 * stability_limit(&potential, &grid, &units);
        let traj = propagate(&v0, &potential, dt, 2_000, 20, &units)?;
        let corr = autocorrelation(&traj)?;
        let spec = spectrum(&corr)?;

        let mut text = String::new();
        text.push_str(&csv::emit_trajectory_csv(&traj).to_text());
        text.push_str(&csv::emit_correlation_csv(&corr).to_text());
        text.push_str(&csv::emit_spectrum_csv(&spec).to_text());
        text.push_str(&runner::vortex_table(&config::VortexSpec {
            n_vortices: 3,
            radius: None,
            omega: None,
            packing: 1.0,
        }, &units)?.to_text());
        text.push_str(
            &runner::eigen_energies_table(&[1, 2, 3], &grid_for_eigen()?, &units)?.to_text(),
        );
        Ok(text)
    };

    let result = match (render_all(), render_all()) {
        (Ok(a), Ok(b)) => {
            let identical = a == b;
            CriterionResult::new(
                9,
                "byte-identical outputs across repeated runs",
                identical,
                format!("{} bytes rendered twice; identical {identical}", a.len()),
            )
        }
        (Err(e), _) | (_, Err(e)) => CriterionResult::new(
            9,
            "byte-identical outputs across repeated runs",
            false,
            format!("pipeline error: {e}"),
        ),
    };
    vec![result]
}

fn grid_for_eigen() -> crate::error::Result<Grid1D> {
    Grid1D::new(PI, 64, Boundary::Dirichlet)
}

/// Run all acceptance criteria. Independent groups run on their own
/// threads; results come back ordered by criterion id.
pub fn run_all() -> Vec<CriterionResult> {
    let mut results: Vec<CriterionResult> = std::thread::scope(|scope| {
        let handles = vec![
            scope.spawn(group_equivalence),
            scope.spawn(group_spectrum),
            scope.spawn(group_vortex),
            scope.spawn(group_convergence),
            scope.spawn(group_determinism),
        ];
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("criterion group panicked"))
            .collect()
    });
    results.sort_by_key(|r| r.id);
    results
}

/// One human-readable line per criterion.
pub fn render_lines(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("criterion {}: {status} - {} ({})\n", r.id, r.name, r.details));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    out
}

/// CSV report: criterion,name,status,details.
pub fn render_report(results: &[CriterionResult]) -> String {
    let mut out = String::from("criterion,name,status,details\n");
    for r in results {
        let status = if r.passed { "pass" } else { "fail" };
        out.push_str(&format!(
            "{},{},{status},{}\n",
            r.id,
            r.name.replace(',', ";"),
            r.details
        ));
    }
    out
}
