//! Reference propagator for the standard complex Schrödinger equation
//! iħ ∂Ψ/∂t = HΨ, integrated on the (Re Ψ, Im Ψ) pair with the same
//! staggered-time discretization as the vector path.
//!
//! This module intentionally shares no code with [`crate::propagator`]: it
//! is the equivalence oracle, so it carries its own finite-difference loop,
//! its own seeding and its own bookkeeping. Splitting Ψ = R + iI turns the
//! complex equation into ħ ∂R/∂t = H I and ħ ∂I/∂t = −H R, which is exactly
//! the component pair the vector formulation postulates; the test suite
//! checks that the two code paths agree to roundoff.

use crate::error::{Error, Result};
use crate::field::ComplexField;
use crate::grid::{Boundary, Grid1D};
use crate::potential::Potential;
use crate::units::UnitSystem;

/// Co-located samples of a complex propagation.
#[derive(Debug, Clone)]
pub struct ComplexTrajectory {
    sample_times: Vec<f64>,
    samples: Vec<ComplexField>,
    recorded_every: usize,
}

impl ComplexTrajectory {
    pub fn sample_times(&self) -> &[f64] {
        &self.sample_times
    }

    pub fn samples(&self) -> &[ComplexField] {
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

struct OracleRun<'a> {
    re: Vec<f64>,
    im: Vec<f64>,
    im_prev: Vec<f64>,
    scratch: Vec<f64>,
    vt: Vec<f64>,
    grid: Grid1D,
    units: &'a UnitSystem,
    coeff: f64,
    step: usize,
}

impl<'a> OracleRun<'a> {
    fn hamiltonian_into(&self, u: &[f64], out: &mut [f64]) {
        let n = self.grid.n_points();
        let dz = self.grid.spacing();
        let kin = -self.units.hbar() * self.units.hbar()
            / (2.0 * self.units.mass() * dz * dz);
        let wrap = self.grid.boundary() == Boundary::Periodic;
        let mut j = 0;
        while j < n {
            let left = if j > 0 {
                u[j - 1]
            } else if wrap {
                u[n - 1]
            } else {
                out[j] = 0.0;
                j += 1;
                continue;
            };
            let right = if j + 1 < n {
                u[j + 1]
            } else if wrap {
                u[0]
            } else {
                out[j] = 0.0;
                break;
            };
            out[j] = kin * (left - 2.0 * u[j] + right) + self.vt[j] * u[j];
            j += 1;
        }
    }

    fn advance_one(&mut self) -> Result<()> {
        let mut h = std::mem::take(&mut self.scratch);
        self.hamiltonian_into(&self.im, &mut h);
        for (r, hv) in self.re.iter_mut().zip(&h) {
            *r += self.coeff * hv;
        }
        std::mem::swap(&mut self.im, &mut self.im_prev);
        self.hamiltonian_into(&self.re, &mut h);
        for ((i, ip), hv) in self.im.iter_mut().zip(&self.im_prev).zip(&h) {
            *i = ip - self.coeff * hv;
        }
        self.scratch = h;
        self.step += 1;
        let total: f64 = self.re.iter().sum::<f64>() + self.im.iter().sum::<f64>();
        if !total.is_finite() {
            return Err(Error::NonFinite { step: self.step });
        }
        Ok(())
    }

    fn snapshot(&self) -> ComplexField {
        let im_avg: Vec<f64> = self
            .im
            .iter()
            .zip(&self.im_prev)
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        ComplexField::new(self.re.clone(), im_avg, self.grid)
            .expect("oracle state stays finite and boundary-clean")
    }
}

/// Explicit-scheme stability bound, as used by the vector path but derived
/// here independently from the same operator norms.
fn oracle_stability_limit(potential: &Potential, grid: &Grid1D, units: &UnitSystem) -> f64 {
    let dz = grid.spacing();
    let strongest = potential
        .values()
        .iter()
        .map(|v| (v + potential.offset()).abs())
        .fold(0.0, f64::max);
    units.hbar() / (units.hbar() * units.hbar() / (units.mass() * dz * dz) + strongest)
}

/// Propagate the complex field with the staggered scheme, recording
/// co-located (Re, Im) samples every `record_every` steps.
pub fn complex_oracle_propagate(
    c0: &ComplexField,
    potential: &Potential,
    dt: f64,
    n_steps: usize,
    record_every: usize,
    units: &UnitSystem,
) -> Result<ComplexTrajectory> {
    let grid = *c0.grid();
    let limit = oracle_stability_limit(potential, &grid, units);
    if !(dt.is_finite() && dt > 0.0) || dt > 0.9 * limit {
        return Err(Error::UnstableTimestep { dt, limit: 0.9 * limit });
    }
    if n_steps == 0 {
        return Err(Error::invalid("n_steps must be at least 1"));
    }
    if record_every == 0 || !n_steps.is_multiple_of(record_every) {
        return Err(Error::invalid(format!(
            "record_every ({record_every}) must divide n_steps ({n_steps})"
        )));
    }
    if potential.values().len() != grid.n_points() {
        return Err(Error::invalid("potential length does not match the grid"));
    }

    let vt: Vec<f64> = potential
        .values()
        .iter()
        .map(|v| v + potential.offset())
        .collect();
    let n = grid.n_points();
    let mut run = OracleRun {
        re: c0.re().to_vec(),
        im: vec![0.0; n],
        im_prev: vec![0.0; n],
        scratch: vec![0.0; n],
        vt,
        grid,
        units,
        coeff: dt / units.hbar(),
        step: 0,
    };

    // seed the half-step pair around t = 0
    let mut h_re = vec![0.0; n];
    run.hamiltonian_into(c0.re(), &mut h_re);
    let half_step = 0.5 * dt / units.hbar();
    for (j, (i0, hv)) in c0.im().iter().zip(&h_re).enumerate() {
        run.im[j] = i0 - half_step * hv;
        run.im_prev[j] = i0 + half_step * hv;
    }

    let mut sample_times = Vec::with_capacity(n_steps / record_every + 1);
    let mut samples = Vec::with_capacity(n_steps / record_every + 1);
    sample_times.push(0.0);
    samples.push(c0.clone());
    for block in 0..n_steps / record_every {
        for _ in 0..record_every {
            run.advance_one()?;
        }
        sample_times.push(((block + 1) * record_every) as f64 * dt);
        samples.push(run.snapshot());
    }
    Ok(ComplexTrajectory { sample_times, samples, recorded_every: record_every })
}
