//! Real two-component ("vector phasor") Schrödinger toolkit.
//!
//! The wavefunction is stored as a real in-plane pair (Ψx, Ψy) whose
//! rotation plays the role of the complex phase. The crate provides:
//!
//! - analytic constructors (plane waves with helicity, particle-in-a-box
//!   states) and the exact mapping to the complex picture,
//! - an explicit staggered-leapfrog propagator for the coupled real pair,
//!   plus an independent complex-arithmetic reference propagator used to
//!   check that the two formulations agree to roundoff,
//! - autocorrelation spectroscopy that recovers eigenfrequencies through
//!   E = ħω,
//! - a closed-form vortex-array calculator for spin, rotational energy and
//!   magnetic moment,
//! - a config-file driven CLI with CSV output and a `verify` command that
//!   runs the acceptance checks.

pub mod config;
pub mod csv;
pub mod error;
pub mod field;
pub mod grid;
pub mod oracle;
pub mod potential;
pub mod propagator;
pub mod representation;
pub mod runner;
pub mod spectral;
pub mod units;
pub mod verify;
pub mod vortex;

pub use error::{Error, Result};
pub use field::{normalize, norm_squared, ComplexField, VectorField};
pub use grid::{Boundary, Grid1D};
pub use potential::Potential;
pub use units::UnitSystem;
