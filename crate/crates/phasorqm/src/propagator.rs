//! Staggered leapfrog integration of the real two-component wave equation
//!
//!   ħ ∂Ψx/∂t =  H Ψy
//!   ħ ∂Ψy/∂t = −H Ψx,      H = (−ħ²/2m)∇² + V(z)
//!
//! Ψx lives on integer time steps and Ψy on half steps, which makes the
//! update explicit and keeps every number real. The scheme conserves the
//! staggered quadratic form returned by [`discrete_norm`] exactly (up to
//! roundoff) and is second-order accurate in dt below [`stability_limit`].

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::grid::{Boundary, Grid1D};
use crate::potential::Potential;
use crate::units::UnitSystem;

/// Fraction of [`stability_limit`] that [`propagate`] will actually accept.
pub const STABILITY_MARGIN: f64 = 0.9;

/// Apply H = (−ħ²/2m)∇² + V to one real component.
///
/// `v_total` must hold V(z_j) + offset per point. Dirichlet endpoints of the
/// output are forced to zero; periodic grids wrap the stencil.
fn apply_hamiltonian(out: &mut [f64], f: &[f64], v_total: &[f64], grid: &Grid1D, units: &UnitSystem) {
    let n = grid.n_points();
    let dz = grid.spacing();
    let kin = -units.hbar() * units.hbar() / (2.0 * units.mass() * dz * dz);
    match grid.boundary() {
        Boundary::Dirichlet => {
            out[0] = 0.0;
            out[n - 1] = 0.0;
            for ((o, w), v) in out[1..n - 1]
                .iter_mut()
                .zip(f.windows(3))
                .zip(&v_total[1..n - 1])
            {
                *o = kin * (w[0] - 2.0 * w[1] + w[2]) + v * w[1];
            }
        }
        Boundary::Periodic => {
            out[0] = kin * (f[n - 1] - 2.0 * f[0] + f[1]) + v_total[0] * f[0];
            for ((o, w), v) in out[1..n - 1]
                .iter_mut()
                .zip(f.windows(3))
                .zip(&v_total[1..n - 1])
            {
                *o = kin * (w[0] - 2.0 * w[1] + w[2]) + v * w[1];
            }
            out[n - 1] = kin * (f[n - 2] - 2.0 * f[n - 1] + f[0]) + v_total[n - 1] * f[n - 1];
        }
    }
}

fn total_potential(potential: &Potential) -> Vec<f64> {
    potential.values().iter().map(|v| v + potential.offset()).collect()
}

/// H applied to a single component sampling.
pub fn discrete_hamiltonian(
    f: &[f64],
    potential: &Potential,
    grid: &Grid1D,
    units: &UnitSystem,
) -> Result<Vec<f64>> {
    if f.len() != grid.n_points() || potential.values().len() != grid.n_points() {
        return Err(Error::invalid("component/potential length does not match the grid"));
    }
    let v_total = total_potential(potential);
    let mut out = vec![0.0; f.len()];
    apply_hamiltonian(&mut out, f, &v_total, grid, units);
    Ok(out)
}

/// Largest stable timestep for the explicit staggered scheme:
/// ħ / (ħ²/(m·Δz²) + max|V + offset|).
pub fn stability_limit(potential: &Potential, grid: &Grid1D, units: &UnitSystem) -> f64 {
    let dz = grid.spacing();
    let kinetic_scale = units.hbar() * units.hbar() / (units.mass() * dz * dz);
    units.hbar() / (kinetic_scale + potential.max_abs_total())
}

/// State of the staggered integration: Ψx at time t, Ψy at t + dt/2.
#[derive(Debug, Clone)]
pub struct StaggeredState {
    psi_x: Vec<f64>,
    psi_y: Vec<f64>,
    step_index: usize,
    dt: f64,
    grid: Grid1D,
}

impl StaggeredState {
    /// Ψx, sampled at time [`StaggeredState::t`].
    pub fn psi_x(&self) -> &[f64] {
        &self.psi_x
    }

    /// Ψy, sampled at t + dt/2.
    pub fn psi_y(&self) -> &[f64] {
        &self.psi_y
    }

    pub fn t(&self) -> f64 {
        self.step_index as f64 * self.dt
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn step_index(&self) -> usize {
        self.step_index
    }
}

/// Seed the staggered scheme from a co-located field at t = 0.
///
/// Ψy is advanced to t = dt/2 by a half Euler step of the governing pair:
/// Ψy(dt/2) = Ψy(0) − (dt/2ħ)·H·Ψx(0).
pub fn init_staggered(
    v: &VectorField,
    potential: &Potential,
    dt: f64,
    units: &UnitSystem,
) -> Result<StaggeredState> {
    let grid = *v.grid();
    let limit = stability_limit(potential, &grid, units);
    if !(dt.is_finite() && dt > 0.0) || dt > limit {
        return Err(Error::UnstableTimestep { dt, limit });
    }
    let hx = discrete_hamiltonian(v.psi_x(), potential, &grid, units)?;
    let half = 0.5 * dt / units.hbar();
    let psi_y = v
        .psi_y()
        .iter()
        .zip(&hx)
        .map(|(y, h)| y - half * h)
        .collect();
    Ok(StaggeredState {
        psi_x: v.psi_x().to_vec(),
        psi_y,
        step_index: 0,
        dt,
        grid,
    })
}

/// One leapfrog step:
/// Ψx(t+dt) = Ψx(t) + (dt/ħ)·H·Ψy(t+dt/2), then
/// Ψy(t+3dt/2) = Ψy(t+dt/2) − (dt/ħ)·H·Ψx(t+dt).
pub fn step(s: &StaggeredState, potential: &Potential, units: &UnitSystem) -> Result<StaggeredState> {
    let v_total = total_potential(potential);
    let a = s.dt / units.hbar();
    let mut hbuf = vec![0.0; s.psi_x.len()];

    apply_hamiltonian(&mut hbuf, &s.psi_y, &v_total, &s.grid, units);
    let psi_x: Vec<f64> = s.psi_x.iter().zip(&hbuf).map(|(x, h)| x + a * h).collect();

    apply_hamiltonian(&mut hbuf, &psi_x, &v_total, &s.grid, units);
    let psi_y: Vec<f64> = s.psi_y.iter().zip(&hbuf).map(|(y, h)| y - a * h).collect();

    let next = StaggeredState {
        psi_x,
        psi_y,
        step_index: s.step_index + 1,
        dt: s.dt,
        grid: s.grid,
    };
    if !(sum(&next.psi_x).is_finite() && sum(&next.psi_y).is_finite()) {
        return Err(Error::NonFinite { step: next.step_index });
    }
    Ok(next)
}

fn sum(data: &[f64]) -> f64 {
    data.iter().sum()
}

/// Conserved quadratic form of the staggered scheme:
/// ∫ [Ψx(t)² + Ψy(t+dt/2)·Ψy(t−dt/2)] dz.
///
/// `prev_y` must be Ψy at t − dt/2. When the two half-step samplings agree
/// this reduces to the plain squared norm of the co-located field.
pub fn discrete_norm(s: &StaggeredState, prev_y: &[f64]) -> f64 {
    s.grid.integrate(&s.psi_x, &s.psi_x) + s.grid.integrate(&s.psi_y, prev_y)
}

/// A sequence of co-located samples of a propagation.
///
/// Recorded Ψy is the average of the two half-step samplings adjacent to the
/// sample time, so each sample is a synchronous (Ψx, Ψy) pair.
#[derive(Debug, Clone)]
pub struct Trajectory {
    sample_times: Vec<f64>,
    samples: Vec<VectorField>,
    recorded_every: usize,
}

impl Trajectory {
    pub fn new(sample_times: Vec<f64>, samples: Vec<VectorField>, recorded_every: usize) -> Result<Self> {
        if sample_times.len() != samples.len() {
            return Err(Error::invalid("trajectory times/samples length mismatch"));
        }
        if sample_times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("trajectory times must be strictly increasing"));
        }
        Ok(Self { sample_times, samples, recorded_every })
    }

    pub fn sample_times(&self) -> &[f64] {
        &self.sample_times
    }

    pub fn samples(&self) -> &[VectorField] {
        &self.samples
    }

    pub fn recorded_every(&self) -> usize {
        self.recorded_every
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// An in-flight propagation with reusable buffers.
///
/// [`propagate`] drives this to completion; incremental consumers (the demo
/// front end) call [`Propagation::advance`] themselves.
pub struct Propagation {
    x: Vec<f64>,
    y: Vec<f64>,
    y_prev: Vec<f64>,
    hbuf: Vec<f64>,
    v_total: Vec<f64>,
    a: f64,
    dt: f64,
    grid: Grid1D,
    units: UnitSystem,
    step_index: usize,
}

impl Propagation {
    /// Initialize from a co-located field at t = 0 (half-step seeding as in
    /// [`init_staggered`]).
    pub fn new(v0: &VectorField, potential: &Potential, dt: f64, units: &UnitSystem) -> Result<Self> {
        let grid = *v0.grid();
        let limit = stability_limit(potential, &grid, units);
        if !(dt.is_finite() && dt > 0.0) || dt > limit {
            return Err(Error::UnstableTimestep { dt, limit });
        }
        let hx = discrete_hamiltonian(v0.psi_x(), potential, &grid, units)?;
        let half = 0.5 * dt / units.hbar();
        let y: Vec<f64> = v0.psi_y().iter().zip(&hx).map(|(y, h)| y - half * h).collect();
        let y_prev: Vec<f64> = v0.psi_y().iter().zip(&hx).map(|(y, h)| y + half * h).collect();
        Ok(Self {
            x: v0.psi_x().to_vec(),
            y,
            y_prev,
            hbuf: vec![0.0; grid.n_points()],
            v_total: total_potential(potential),
            a: dt / units.hbar(),
            dt,
            grid,
            units: *units,
            step_index: 0,
        })
    }

    /// Resume from explicit staggered data: Ψx at t = 0, Ψy at t = +dt/2.
    pub fn from_staggered(
        x: Vec<f64>,
        y_half: Vec<f64>,
        potential: &Potential,
        dt: f64,
        grid: Grid1D,
        units: &UnitSystem,
    ) -> Result<Self> {
        if x.len() != grid.n_points() || y_half.len() != grid.n_points() {
            return Err(Error::invalid("staggered component length does not match the grid"));
        }
        let limit = stability_limit(potential, &grid, units);
        if !(dt.is_finite() && dt > 0.0) || dt > limit {
            return Err(Error::UnstableTimestep { dt, limit });
        }
        let y_prev = y_half.clone();
        Ok(Self {
            x,
            y: y_half,
            y_prev,
            hbuf: vec![0.0; grid.n_points()],
            v_total: total_potential(potential),
            a: dt / units.hbar(),
            dt,
            grid,
            units: *units,
            step_index: 0,
        })
    }

    pub fn t(&self) -> f64 {
        self.step_index as f64 * self.dt
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn step_index(&self) -> usize {
        self.step_index
    }

    /// Ψx at the current integer step.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Ψy at t + dt/2.
    pub fn y_half_ahead(&self) -> &[f64] {
        &self.y
    }

    /// Ψy at t − dt/2.
    pub fn y_half_behind(&self) -> &[f64] {
        &self.y_prev
    }

    /// Advance `n` leapfrog steps.
    pub fn advance(&mut self, n: usize) -> Result<()> {
        for _ in 0..n {
            apply_hamiltonian(&mut self.hbuf, &self.y, &self.v_total, &self.grid, &self.units);
            for (x, h) in self.x.iter_mut().zip(&self.hbuf) {
                *x += self.a * h;
            }
            std::mem::swap(&mut self.y, &mut self.y_prev);
            apply_hamiltonian(&mut self.hbuf, &self.x, &self.v_total, &self.grid, &self.units);
            for ((y, yp), h) in self.y.iter_mut().zip(&self.y_prev).zip(&self.hbuf) {
                *y = yp - self.a * h;
            }
            self.step_index += 1;
            if !(sum(&self.x).is_finite() && sum(&self.y).is_finite()) {
                return Err(Error::NonFinite { step: self.step_index });
            }
        }
        Ok(())
    }

    /// Co-located sample at the current integer step: Ψx as-is, Ψy averaged
    /// over the two adjacent half steps.
    pub fn colocated(&self) -> VectorField {
        let psi_y: Vec<f64> = self
            .y
            .iter()
            .zip(&self.y_prev)
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        VectorField::new(self.x.clone(), psi_y, self.grid)
            .expect("propagation state stays finite and boundary-clean")
    }

    /// The conserved staggered norm at the current step.
    pub fn discrete_norm(&self) -> f64 {
        self.grid.integrate(&self.x, &self.x) + self.grid.integrate(&self.y, &self.y_prev)
    }
}

/// Integrate `n_steps` leapfrog steps from `v0`, recording a co-located
/// sample every `record_every` steps (the initial state included).
///
/// Rejects dt above [`STABILITY_MARGIN`] × [`stability_limit`]; `n_steps`
/// must be a positive multiple of `record_every`.
pub fn propagate(
    v0: &VectorField,
    potential: &Potential,
    dt: f64,
    n_steps: usize,
    record_every: usize,
    units: &UnitSystem,
) -> Result<Trajectory> {
    let limit = stability_limit(potential, v0.grid(), units);
    if !(dt.is_finite() && dt > 0.0) || dt > STABILITY_MARGIN * limit {
        return Err(Error::UnstableTimestep { dt, limit: STABILITY_MARGIN * limit });
    }
    if n_steps == 0 {
        return Err(Error::invalid("n_steps must be at least 1"));
    }
    if record_every == 0 || !n_steps.is_multiple_of(record_every) {
        return Err(Error::invalid(format!(
            "record_every ({record_every}) must divide n_steps ({n_steps})"
        )));
    }

    let mut run = Propagation::new(v0, potential, dt, units)?;
    let mut sample_times = Vec::with_capacity(n_steps / record_every + 1);
    let mut samples = Vec::with_capacity(n_steps / record_every + 1);
    sample_times.push(0.0);
    samples.push(v0.clone());
    for _ in 0..n_steps / record_every {
        run.advance(record_every)?;
        sample_times.push(run.t());
        samples.push(run.colocated());
    }
    Trajectory::new(sample_times, samples, record_every)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{norm_squared, normalize};
    use crate::representation::{box_state, helicity_flip, Helicity};
    use std::f64::consts::PI;

    fn natural() -> UnitSystem {
        UnitSystem::natural()
    }

    fn dirichlet(length: f64, n: usize) -> Grid1D {
        Grid1D::new(length, n, Boundary::Dirichlet).unwrap()
    }

    fn periodic(length: f64, n: usize) -> Grid1D {
        Grid1D::new(length, n, Boundary::Periodic).unwrap()
    }

    /// Eigenvalue of the discrete Dirichlet Hamiltonian for mode n.
    fn discrete_energy(n: usize, grid: &Grid1D, units: &UnitSystem) -> f64 {
        let dz = grid.spacing();
        let arg = n as f64 * PI * dz / grid.length();
        units.hbar() * units.hbar() / (units.mass() * dz * dz) * (1.0 - arg.cos())
    }

    #[test]
    fn hamiltonian_annihilates_zero() {
        let g = dirichlet(1.0, 9);
        let v = Potential::zero(&g);
        let out = discrete_hamiltonian(&[0.0; 9], &v, &g, &natural()).unwrap();
        assert!(out.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn box_mode_is_an_exact_discrete_eigenvector() {
        let units = natural();
        let g = dirichlet(PI, 101);
        let v = Potential::zero(&g);
        for n in [1, 3, 7] {
            let state = box_state(n, Helicity::Plus, &g, 0.0, &units).unwrap();
            let f = state.psi_x();
            let hf = discrete_hamiltonian(f, &v, &g, &units).unwrap();
            let e = discrete_energy(n, &g, &units);
            let fmax = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (h, x) in hf.iter().zip(f) {
                assert!((h - e * x).abs() <= 1e-12 * e * fmax, "n={n}");
            }
        }
    }

    #[test]
    fn offset_enters_hamiltonian_linearly() {
        let units = natural();
        let g = periodic(2.0, 16);
        let f: Vec<f64> = (0..16).map(|j| (0.37 * j as f64).sin() + 0.2).collect();
        let v0 = Potential::new((0..16).map(|j| 0.1 * j as f64).collect(), &g).unwrap();
        let v5 = v0.clone().with_offset(5.0).unwrap();
        let base = discrete_hamiltonian(&f, &v0, &g, &units).unwrap();
        let offs = discrete_hamiltonian(&f, &v5, &g, &units).unwrap();
        for ((a, b), x) in offs.iter().zip(&base).zip(&f) {
            assert!((a - b - 5.0 * x).abs() <= 1e-13 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn stability_limit_matches_closed_form() {
        let units = natural();
        let g = dirichlet(1.0, 11); // Δz = 0.1
        let v = Potential::zero(&g);
        let lim = stability_limit(&v, &g, &units);
        assert!((lim - 0.01).abs() < 1e-15);

        let v100 = Potential::zero(&g).with_offset(100.0).unwrap();
        let lim100 = stability_limit(&v100, &g, &units);
        assert!((lim100 - 0.005).abs() < 1e-15);

        // halving Δz divides the limit by 4
        let g2 = dirichlet(1.0, 21);
        let lim2 = stability_limit(&Potential::zero(&g2), &g2, &units);
        assert!((lim2 - lim / 4.0).abs() < 1e-12 * lim);
    }

    #[test]
    fn init_of_zero_field_is_zero() {
        let g = dirichlet(1.0, 9);
        let v = Potential::zero(&g);
        let s = init_staggered(&VectorField::zero(g), &v, 1e-3, &natural()).unwrap();
        assert!(s.psi_x().iter().all(|&x| x == 0.0));
        assert!(s.psi_y().iter().all(|&y| y == 0.0));
    }

    #[test]
    fn init_rejects_unstable_dt() {
        let g = dirichlet(1.0, 11);
        let v = Potential::zero(&g);
        let f = VectorField::zero(g);
        assert!(matches!(
            init_staggered(&f, &v, 0.02, &natural()),
            Err(Error::UnstableTimestep { .. })
        ));
    }

    /// The half-step seeding tracks the semi-discrete rotation of a box
    /// eigenstate to O(dt²): Ψy(dt/2) vs −s(z)·sin(ω_disc·dt/2).
    #[test]
    fn init_half_step_is_second_order() {
        let units = natural();
        let g = dirichlet(PI, 51); // loose grid so dt = 1e-3 is stable
        let v = Potential::zero(&g);
        let state = box_state(1, Helicity::Plus, &g, 0.0, &units).unwrap();
        let omega = discrete_energy(1, &g, &units) / units.hbar();

        let error_at = |dt: f64| -> f64 {
            let s = init_staggered(&state, &v, dt, &units).unwrap();
            let rot = (omega * dt / 2.0).sin();
            s.psi_y()
                .iter()
                .zip(state.psi_x())
                .map(|(y, sx)| (y + sx * rot).abs())
                .fold(0.0, f64::max)
        };

        let dts = [1e-3, 5e-4, 2.5e-4];
        let c = error_at(dts[0]) / (dts[0] * dts[0]);
        for &dt in &dts[1..] {
            assert!(error_at(dt) <= 1.05 * c * dt * dt + 1e-15);
        }
    }

    #[test]
    fn init_flip_negates_psi_y_for_constant_free_field() {
        let units = natural();
        let g = periodic(2.0, 8);
        let v = Potential::zero(&g);
        // constant field: the Laplacian term vanishes, so H·Ψx = 0
        let f = VectorField::new(vec![0.3; 8], vec![0.7; 8], g).unwrap();
        let a = init_staggered(&f, &v, 1e-3, &units).unwrap();
        let b = init_staggered(&helicity_flip(&f), &v, 1e-3, &units).unwrap();
        for (ya, yb) in a.psi_y().iter().zip(b.psi_y()) {
            assert_eq!(*yb, -*ya);
        }
    }

    #[test]
    fn stepping_zero_stays_zero() {
        let g = dirichlet(1.0, 9);
        let v = Potential::zero(&g);
        let mut s = init_staggered(&VectorField::zero(g), &v, 1e-4, &natural()).unwrap();
        for _ in 0..10 {
            s = step(&s, &v, &natural()).unwrap();
        }
        assert!(s.psi_x().iter().all(|&x| x == 0.0));
        assert!(s.psi_y().iter().all(|&y| y == 0.0));
        assert_eq!(s.step_index(), 10);
    }

    #[test]
    fn step_detects_blowup() {
        let units = natural();
        let g = dirichlet(1.0, 41);
        let v = Potential::zero(&g);
        let state = box_state(30, Helicity::Plus, &g, 0.0, &units).unwrap();
        // dt just below the raw limit is fine for init but unstable for the
        // highest modes once amplified; force instability by stepping a state
        // built with dt at the raw limit times the sharpest mode
        let dt = stability_limit(&v, &g, &units);
        let mut s = init_staggered(&state, &v, dt, &units).unwrap();
        let mut blew_up = false;
        for _ in 0..20_000 {
            match step(&s, &v, &units) {
                Ok(next) => s = next,
                Err(Error::NonFinite { step }) => {
                    assert!(step > 0);
                    blew_up = true;
                    break;
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        // growth at the marginal dt is slow but detection must fire before
        // silent poisoning if it happens; either outcome is acceptable here,
        // the real assertion is that no non-finite state was ever returned
        if !blew_up {
            assert!(s.psi_x().iter().all(|v| v.is_finite()));
        }
    }

    /// One analytic period of the ground state, compared against the
    /// semi-discrete solution (envelope rotating at the discrete
    /// eigenfrequency). The residual is the O(dt²) temporal dispersion of
    /// the leapfrog plus the O(dt²) co-location average, about 1.1e-5 at
    /// dt = 1e-3·(2π/ω₁).
    #[test]
    fn one_period_tracks_semi_discrete_rotation() {
        let units = natural();
        let g = dirichlet(PI, 21);
        let v = Potential::zero(&g);
        let omega1 = 0.5; // analytic ħπ²/(2mL²) for L = π
        let dt = 1e-3 * (2.0 * PI / omega1);
        let n = (2.0 * PI / (omega1 * dt)).round() as usize;
        assert_eq!(n, 1000);

        let v0 = box_state(1, Helicity::Plus, &g, 0.0, &units).unwrap();
        let traj = propagate(&v0, &v, dt, n, n, &units).unwrap();
        let end = &traj.samples()[1];

        let omega_d = discrete_energy(1, &g, &units) / units.hbar();
        let t = n as f64 * dt;
        let (c, s) = ((omega_d * t).cos(), (omega_d * t).sin());
        let mut err2 = 0.0;
        for j in 0..g.n_points() {
            let sx = v0.psi_x()[j];
            let dx = end.psi_x()[j] - sx * c;
            let dy = end.psi_y()[j] - (-sx * s);
            err2 += (dx * dx + dy * dy) * g.weight(j);
        }
        let rel = err2.sqrt() / norm_squared(&v0).sqrt();
        assert!(rel <= 1.5e-5, "one-period error {rel}");
        assert!(rel >= 1e-7, "error suspiciously small, wrong reference? {rel}");
    }

    #[test]
    fn discrete_norm_reduces_to_plain_norm_for_equal_half_steps() {
        let units = natural();
        let g = periodic(2.0, 16);
        let v = Potential::zero(&g);
        let f = VectorField::new(
            (0..16).map(|j| (0.4 * j as f64).cos()).collect(),
            (0..16).map(|j| (0.9 * j as f64).sin()).collect(),
            g,
        )
        .unwrap();
        let s = init_staggered(&f, &v, 1e-4, &units).unwrap();
        let norm = discrete_norm(&s, s.psi_y());
        let colocated = VectorField::new(s.psi_x().to_vec(), s.psi_y().to_vec(), g).unwrap();
        assert!((norm - norm_squared(&colocated)).abs() < 1e-13);
    }

    #[test]
    fn discrete_norm_is_conserved_for_an_eigenstate() {
        let units = natural();
        let g = dirichlet(PI, 101);
        let v = Potential::zero(&g);
        let dt = 2e-4;
        let v0 = box_state(1, Helicity::Plus, &g, 0.0, &units).unwrap();
        let mut run = Propagation::new(&v0, &v, dt, &units).unwrap();

        let initial = run.discrete_norm();
        assert!((initial - 1.0).abs() < 1e-8, "initial staggered norm {initial}");
        let mut max_drift = 0.0f64;
        for _ in 0..100 {
            run.advance(100).unwrap();
            max_drift = max_drift.max((run.discrete_norm() - initial).abs());
        }
        assert!(max_drift / initial <= 1e-10, "drift {max_drift}");
    }

    #[test]
    fn propagate_validates_inputs() {
        let units = natural();
        let g = dirichlet(1.0, 11);
        let v = Potential::zero(&g);
        let f = VectorField::zero(g);
        assert!(matches!(
            propagate(&f, &v, 0.0095, 10, 10, &units),
            Err(Error::UnstableTimestep { .. })
        )); // above 0.9 × limit
        assert!(propagate(&f, &v, 0.008, 0, 1, &units).is_err());
        assert!(propagate(&f, &v, 0.008, 10, 3, &units).is_err());
    }

    #[test]
    fn propagate_records_initial_and_final() {
        let units = natural();
        let g = dirichlet(PI, 31);
        let v = Potential::zero(&g);
        let v0 = box_state(1, Helicity::Plus, &g, 0.0, &units).unwrap();
        let traj = propagate(&v0, &v, 1e-3, 50, 50, &units).unwrap();
        assert_eq!(traj.len(), 2);
        assert_eq!(traj.sample_times()[0], 0.0);
        assert!((traj.sample_times()[1] - 0.05).abs() < 1e-15);
        assert_eq!(traj.samples()[0], v0);
        assert_eq!(traj.recorded_every(), 50);
    }

    #[test]
    fn superposition_norm_is_conserved() {
        let units = natural();
        let g = dirichlet(PI, 101);
        let v = Potential::zero(&g);
        let a = box_state(1, Helicity::Plus, &g, 0.0, &units).unwrap();
        let b = box_state(2, Helicity::Plus, &g, 0.0, &units).unwrap();
        let v0 = normalize(&a.linear_combination(1.0, &b, 1.0).unwrap()).unwrap();

        let dt = 2e-4;
        let mut run = Propagation::new(&v0, &v, dt, &units).unwrap();
        let initial = run.discrete_norm();
        let mut drift = 0.0f64;
        for _ in 0..100 {
            run.advance(100).unwrap();
            drift = drift.max((run.discrete_norm() - initial).abs());
        }
        assert!(drift / initial <= 1e-8, "drift {drift}");
    }

    #[test]
    fn propagation_is_linear() {
        let units = natural();
        let g = dirichlet(PI, 61);
        let v = Potential::new((0..61).map(|j| 0.05 * (j as f64 * 0.2).sin()).collect(), &g)
            .unwrap();
        let u1 = box_state(1, Helicity::Plus, &g, 0.0, &units).unwrap();
        let u2 = box_state(3, Helicity::Minus, &g, 0.3, &units).unwrap();
        let (a, b) = (0.6, -1.1);
        let combo = u1.linear_combination(a, &u2, b).unwrap();

        let dt = 1e-4;
        let t1 = propagate(&u1, &v, dt, 200, 200, &units).unwrap();
        let t2 = propagate(&u2, &v, dt, 200, 200, &units).unwrap();
        let tc = propagate(&combo, &v, dt, 200, 200, &units).unwrap();

        let expect = t1.samples()[1]
            .linear_combination(a, &t2.samples()[1], b)
            .unwrap();
        let got = &tc.samples()[1];
        for j in 0..g.n_points() {
            assert!((expect.psi_x()[j] - got.psi_x()[j]).abs() <= 1e-11);
            assert!((expect.psi_y()[j] - got.psi_y()[j]).abs() <= 1e-11);
        }
    }

    /// Discrete conjugate-pair duality: flipping helicity and reversing the
    /// staggered trajectory reproduces the original run exactly. Forward
    /// propagation of the flipped-and-reversed end state returns to the
    /// flipped initial data.
    #[test]
    fn helicity_flip_is_time_reversal() {
        let units = natural();
        let g = dirichlet(PI, 61);
        let v = Potential::new((0..61).map(|j| 0.2 * (j as f64 * 0.31).cos()).collect(), &g)
            .unwrap();
        let u1 = box_state(1, Helicity::Plus, &g, 0.0, &units).unwrap();
        let u2 = box_state(2, Helicity::Plus, &g, 0.0, &units).unwrap();
        let v0 = normalize(&u1.linear_combination(1.0, &u2, 0.8).unwrap()).unwrap();

        let dt = 2e-4;
        let n = 500;
        let mut fwd = Propagation::new(&v0, &v, dt, &units).unwrap();
        fwd.advance(n).unwrap();

        // reversed run: x' = x_N, y'(+dt/2) = −y(N − 1/2)
        let rx = fwd.x().to_vec();
        let ry: Vec<f64> = fwd.y_half_behind().iter().map(|y| -y).collect();
        let mut rev = Propagation::from_staggered(rx, ry, &v, dt, g, &units).unwrap();
        rev.advance(n).unwrap();

        // after N reversed steps Ψx must be back at the initial Ψx, and Ψy
        // one half-step ahead must equal −Ψy(−dt/2) of the forward seeding
        let hx = discrete_hamiltonian(v0.psi_x(), &v, &g, &units).unwrap();
        let half = 0.5 * dt / units.hbar();
        for (j, (&y0, &h)) in v0.psi_y().iter().zip(&hx).enumerate() {
            assert!((rev.x()[j] - v0.psi_x()[j]).abs() <= 1e-12);
            let y_minus_half = y0 + half * h;
            assert!((rev.y_half_ahead()[j] + y_minus_half).abs() <= 1e-12);
        }
    }
}
