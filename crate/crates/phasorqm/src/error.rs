//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Attempted to normalize a field with zero norm.
    #[error("cannot normalize a field with zero norm")]
    ZeroNorm,

    /// A plane wave whose wavenumber does not fit the periodic box.
    #[error("wavenumber k = {k} does not fit a periodic box of length {length}: k*L/2pi = {cycles} is not an integer")]
    IncommensurateWave { k: f64, length: f64, cycles: f64 },

    /// Quantum number outside the representable range for the grid.
    #[error("quantum number n = {n} outside valid range 1..={max} for this grid")]
    BadQuantumNumber { n: usize, max: usize },

    /// Timestep above the explicit-scheme stability bound.
    #[error("timestep dt = {dt} exceeds stability_limit = {limit}")]
    UnstableTimestep { dt: f64, limit: f64 },

    /// A propagation step produced a non-finite value.
    #[error("non-finite field value at step {step}: integration unstable")]
    NonFinite { step: usize },

    /// Trajectory samples are not uniformly spaced in time.
    #[error("trajectory sample times are not uniformly spaced")]
    NonUniformSampling,

    /// Not enough samples for spectral analysis.
    #[error("need at least {need} samples for a spectrum, got {got}")]
    TooFewSamples { got: usize, need: usize },

    /// Vortex rim speed above the speed of light.
    #[error("vortex rim speed {rim_speed} exceeds the limit c = {max}")]
    RimSpeedExceeded { rim_speed: f64, max: f64 },

    /// A constructor or operation precondition was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Malformed run-configuration text.
    #[error("config parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Well-formed config with an invalid or missing field.
    #[error("invalid config field `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn validation(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: msg.into(),
        }
    }

    /// Process exit code for the CLI: 1 for validation problems, 2 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnstableTimestep { .. } | Error::NonFinite { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
