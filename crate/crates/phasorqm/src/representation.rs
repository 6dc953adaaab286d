//! Analytic wavefunction constructors and the complex ↔ vector mapping.
//!
//! The vector and complex pictures are related by Ψ = Ψx + iΨy; the mapping
//! is a pure relabeling and is implemented without arithmetic. Helicity is
//! the rotation sense of the in-plane pair: flipping it corresponds to
//! complex conjugation. Sign convention here: the MINUS helicity family is
//! the one whose complex image is the conventional wave exp[-i(ωt - kz)],
//! and it is the family traced out by forward propagation of its own initial
//! data.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{ComplexField, VectorField};
use crate::grid::{Boundary, Grid1D};
use crate::units::UnitSystem;

/// Rotation sense of the transverse pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    pub fn flip(self) -> Self {
        match self {
            Helicity::Plus => Helicity::Minus,
            Helicity::Minus => Helicity::Plus,
        }
    }

    /// The ± sign in front of the Ψy component.
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }
}

/// Parameters of a traveling circularly polarized wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParams {
    pub amplitude: f64,
    pub k: f64,
    pub omega: f64,
    pub helicity: Helicity,
}

impl WaveParams {
    pub fn new(amplitude: f64, k: f64, omega: f64, helicity: Helicity) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(Error::invalid(format!("wave amplitude must be >= 0, got {amplitude}")));
        }
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::invalid(format!("wave omega must be >= 0, got {omega}")));
        }
        if !k.is_finite() {
            return Err(Error::invalid("wave k must be finite"));
        }
        Ok(Self { amplitude, k, omega, helicity })
    }
}

/// (Re, Im) → (Ψx, Ψy), exact.
pub fn vector_from_complex(c: &ComplexField) -> VectorField {
    VectorField::new(c.re().to_vec(), c.im().to_vec(), *c.grid())
        .expect("complex field invariants carry over")
}

/// (Ψx, Ψy) → (Re, Im), exact.
pub fn complex_from_vector(v: &VectorField) -> ComplexField {
    ComplexField::new(v.psi_x().to_vec(), v.psi_y().to_vec(), *v.grid())
        .expect("vector field invariants carry over")
}

/// Negate Ψy: the vector-picture form of complex conjugation.
pub fn helicity_flip(v: &VectorField) -> VectorField {
    let psi_y = v.psi_y().iter().map(|y| -y).collect();
    VectorField::new(v.psi_x().to_vec(), psi_y, *v.grid())
        .expect("negation preserves invariants")
}

/// Circularly polarized traveling wave Ψ₀[cos(ωt − kz), ±sin(ωt − kz)]
/// sampled at time `t` on a periodic grid. The wave must fit the box:
/// k·L must be an integer multiple of 2π.
pub fn plane_wave(p: &WaveParams, grid: &Grid1D, t: f64) -> Result<VectorField> {
    if grid.boundary() != Boundary::Periodic {
        return Err(Error::invalid("plane waves need a periodic grid"));
    }
    let cycles = p.k * grid.length() / (2.0 * PI);
    if (cycles - cycles.round()).abs() > 1e-9 {
        return Err(Error::IncommensurateWave { k: p.k, length: grid.length(), cycles });
    }
    let sign = p.helicity.sign();
    let n = grid.n_points();
    let mut psi_x = Vec::with_capacity(n);
    let mut psi_y = Vec::with_capacity(n);
    for j in 0..n {
        let phase = p.omega * t - p.k * grid.z(j);
        psi_x.push(p.amplitude * phase.cos());
        psi_y.push(sign * p.amplitude * phase.sin());
    }
    VectorField::new(psi_x, psi_y, *grid)
}

/// Largest quantum number representable on a Dirichlet grid: at least two
/// points per half-wave, i.e. nπΔz/L < π.
fn max_quantum_number(grid: &Grid1D) -> usize {
    grid.n_points() - 2
}

/// Particle-in-a-box bound state n, sampled at time `t`:
/// √(2/L) sin(nπz/L) [cos(ω_n t), ±sin(ω_n t)] with ω_n from [`box_energy`].
pub fn box_state(
    n: usize,
    helicity: Helicity,
    grid: &Grid1D,
    t: f64,
    units: &UnitSystem,
) -> Result<VectorField> {
    if grid.boundary() != Boundary::Dirichlet {
        return Err(Error::invalid("box states need a Dirichlet grid"));
    }
    let max = max_quantum_number(grid);
    if n < 1 || n > max {
        return Err(Error::BadQuantumNumber { n, max });
    }
    let length = grid.length();
    let omega = box_energy(n, length, units)? / units.hbar();
    let amp = (2.0 / length).sqrt();
    let (rot_cos, rot_sin) = ((omega * t).cos(), helicity.sign() * (omega * t).sin());

    let m = grid.n_points();
    let mut psi_x = vec![0.0; m];
    let mut psi_y = vec![0.0; m];
    for j in 1..m - 1 {
        // sampled as sin(nπ·j/(m−1)) so the envelope is the exact discrete
        // Laplacian eigenvector; endpoints stay exactly zero
        let envelope = amp * (n as f64 * PI * j as f64 / (m - 1) as f64).sin();
        psi_x[j] = envelope * rot_cos;
        psi_y[j] = envelope * rot_sin;
    }
    VectorField::new(psi_x, psi_y, *grid)
}

/// Quantized box energy E_n = ħ²(nπ/L)²/(2m).
pub fn box_energy(n: usize, length: f64, units: &UnitSystem) -> Result<f64> {
    if n < 1 {
        return Err(Error::BadQuantumNumber { n, max: usize::MAX });
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::invalid(format!("box length must be positive, got {length}")));
    }
    let k = n as f64 * PI / length;
    Ok(units.hbar() * units.hbar() * k * k / (2.0 * units.mass()))
}

/// de Broglie relations: ω = E/ħ, k = p/ħ.
pub fn de_broglie(energy: f64, momentum: f64, units: &UnitSystem) -> (f64, f64) {
    (energy / units.hbar(), momentum / units.hbar())
}

/// Rest-mass energy m·c², the uniform offset that pins the zero of energy.
pub fn rest_mass_offset(units: &UnitSystem) -> f64 {
    units.rest_energy()
}
