//! Unit systems and physical constants.
//!
//! All physics code is unit-agnostic: it only ever reads `hbar`, `mass`, `c`
//! and `charge` from a [`UnitSystem`]. The natural preset (everything = 1)
//! keeps test values exact; the SI preset carries CODATA 2018 values for the
//! electron.

use crate::error::{Error, Result};

/// CODATA 2018 reduced Planck constant (J·s). Exact since the 2019 SI.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// CODATA 2018 electron mass (kg).
pub const ELECTRON_MASS_SI: f64 = 9.109_383_701_5e-31;
/// Speed of light (m/s). Exact.
pub const SPEED_OF_LIGHT_SI: f64 = 299_792_458.0;
/// Elementary charge (C). Exact since the 2019 SI.
pub const ELEMENTARY_CHARGE_SI: f64 = 1.602_176_634e-19;

/// The four constants every operation in the crate is parameterized on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    hbar: f64,
    mass: f64,
    c: f64,
    charge: f64,
}

impl UnitSystem {
    /// Build a custom unit system. All four values must be strictly positive
    /// and finite.
    pub fn new(hbar: f64, mass: f64, c: f64, charge: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("c", c), ("charge", charge)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!(
                    "unit system constant {name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(Self { hbar, mass, c, charge })
    }

    /// ħ = m = c = e = 1.
    pub const fn natural() -> Self {
        Self { hbar: 1.0, mass: 1.0, c: 1.0, charge: 1.0 }
    }

    /// SI values for an electron (CODATA 2018).
    pub const fn si_electron() -> Self {
        Self {
            hbar: HBAR_SI,
            mass: ELECTRON_MASS_SI,
            c: SPEED_OF_LIGHT_SI,
            charge: ELEMENTARY_CHARGE_SI,
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Particle mass m.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Particle charge e.
    pub fn charge(&self) -> f64 {
        self.charge
    }

    /// Rest energy m·c².
    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }
}
