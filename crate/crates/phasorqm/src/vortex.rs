//! Closed-form hydrodynamic vortex model of spin.
//!
//! The particle's mass is shared across N rigid-body vortices of radius R
//! rotating at ω. With R at the Compton radius ħ/mc and ω at the rest-mass
//! rate mc²/ħ, the totals land on ħ/2 for the angular momentum and eħ/2m
//! for the magnetic moment independently of N. The rotational energy is
//! reported twice: the value the algebra actually gives (mc²/4 at defaults)
//! and the commonly quoted mc²/2, which rests on dropping the ½ in the
//! moment of inertia; we surface both rather than pick one.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::units::UnitSystem;

/// Relative slack for the rim-speed constraint, so R·ω = c at the defaults
/// survives floating-point rounding.
const RIM_SPEED_SLACK: f64 = 1e-12;

/// Maximum vortex radius: rim speed c at ω = mc²/ħ gives R = ħ/(m·c).
pub fn compton_radius(units: &UnitSystem) -> f64 {
    units.hbar() / (units.mass() * units.c())
}

/// Angular momentum of one rigidly rotating cylinder: L = ½MR²ω.
pub fn single_vortex_angular_momentum(mass: f64, radius: f64, omega: f64) -> f64 {
    0.5 * mass * radius * radius * omega
}

/// Vortex-array parameters. Construction enforces the rim-speed bound
/// R·ω ≤ c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexModel {
    units: UnitSystem,
    n_vortices: usize,
    radius: f64,
    omega: f64,
    packing: f64,
}

impl VortexModel {
    pub fn new(
        units: UnitSystem,
        n_vortices: usize,
        radius: f64,
        omega: f64,
        packing: f64,
    ) -> Result<Self> {
        if n_vortices < 1 {
            return Err(Error::invalid("the model needs at least one vortex"));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid(format!("vortex radius must be positive, got {radius}")));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invalid(format!("vortex omega must be positive, got {omega}")));
        }
        if !(packing.is_finite() && packing > 0.0 && packing <= 1.0) {
            return Err(Error::invalid(format!("packing must lie in (0, 1], got {packing}")));
        }
        let rim_speed = radius * omega;
        if rim_speed > units.c() * (1.0 + RIM_SPEED_SLACK) {
            return Err(Error::RimSpeedExceeded { rim_speed, max: units.c() });
        }
        Ok(Self { units, n_vortices, radius, omega, packing })
    }

    /// N vortices at the Compton radius, rotating at the rest-mass rate,
    /// 100% packing.
    pub fn with_defaults(units: UnitSystem, n_vortices: usize) -> Result<Self> {
        let radius = compton_radius(&units);
        let omega = units.rest_energy() / units.hbar();
        Self::new(units, n_vortices, radius, omega, 1.0)
    }

    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    pub fn n_vortices(&self) -> usize {
        self.n_vortices
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn packing(&self) -> f64 {
        self.packing
    }

    /// u = R·ω.
    pub fn rim_speed(&self) -> f64 {
        self.radius * self.omega
    }

    /// Mass of one vortex, m/N.
    pub fn vortex_mass(&self) -> f64 {
        self.units.mass() / self.n_vortices as f64
    }
}

/// Total spin: N × ½(m/N)R²ω, scaled by the packing fraction. At the
/// defaults this is ħ/2 for every N.
pub fn total_spin(model: &VortexModel) -> f64 {
    let per_vortex =
        single_vortex_angular_momentum(model.vortex_mass(), model.radius(), model.omega());
    model.packing() * model.n_vortices() as f64 * per_vortex
}

/// Rotational energy of the array, both as computed and as commonly stated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinEnergy {
    /// N × ½Iω² with I = ½(m/N)R²: mc²/4 at the defaults.
    pub direct: f64,
    /// The conventionally quoted value, exactly twice `direct`: mc²/2 at
    /// the defaults.
    pub paper_stated: f64,
}

pub fn spin_energy(model: &VortexModel) -> SpinEnergy {
    let inertia = 0.5 * model.vortex_mass() * model.radius() * model.radius();
    let direct = model.packing()
        * model.n_vortices() as f64
        * 0.5
        * inertia
        * model.omega()
        * model.omega();
    SpinEnergy { direct, paper_stated: 2.0 * direct }
}

/// Magnetic moment: each vortex carries charge e/N circulating at ω, so
/// μ = N·(e/N)(ω/2π)·πR², scaled by packing. At the defaults this is the
/// Bohr magneton eħ/2m.
pub fn magnetic_moment(model: &VortexModel) -> f64 {
    let charge_per_vortex = model.units().charge() / model.n_vortices() as f64;
    let current = charge_per_vortex * model.omega() / (2.0 * PI);
    let area = PI * model.radius() * model.radius();
    model.packing() * model.n_vortices() as f64 * current * area
}

/// How the model responds to rescaling the vortex radius with the areal
/// mass density and ω held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingReport {
    pub factor: f64,
    /// Vortex mass ratio: factor².
    pub vortex_mass_ratio: f64,
    /// Single-vortex angular momentum ratio: factor⁴.
    pub vortex_angular_momentum_ratio: f64,
    /// Total angular momentum ratio: factor².
    pub total_angular_momentum_ratio: f64,
    /// Vortex count ratio at fixed total mass: factor⁻².
    pub vortex_count_ratio: f64,
}

/// Scale R by `factor` at fixed areal density and ω and report the induced
/// ratios. Fails if the scaled rim speed would exceed c.
pub fn scaling_report(model: &VortexModel, factor: f64) -> Result<ScalingReport> {
    if !(factor.is_finite() && factor > 0.0) {
        return Err(Error::invalid(format!("scaling factor must be positive, got {factor}")));
    }
    let rim_speed = model.radius() * factor * model.omega();
    if rim_speed > model.units().c() * (1.0 + RIM_SPEED_SLACK) {
        return Err(Error::RimSpeedExceeded { rim_speed, max: model.units().c() });
    }
    Ok(ScalingReport {
        factor,
        vortex_mass_ratio: factor.powi(2),
        vortex_angular_momentum_ratio: factor.powi(4),
        total_angular_momentum_ratio: factor.powi(2),
        vortex_count_ratio: factor.powi(-2),
    })
}
