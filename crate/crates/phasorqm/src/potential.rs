//! Potential energy on a grid.

use crate::error::{Error, Result};
use crate::grid::Grid1D;

/// Real potential V(z) sampled on a grid, plus a uniform additive offset.
///
/// The offset is kept separate from the per-point values so a constant energy
/// shift (the rest-mass term in natural applications) can be toggled without
/// rebuilding arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    values: Vec<f64>,
    offset: f64,
}

impl Potential {
    pub fn new(values: Vec<f64>, grid: &Grid1D) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::invalid(format!(
                "potential has {} values but the grid has {} points",
                values.len(),
                grid.n_points()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite potential value {v}")));
        }
        Ok(Self { values, offset: 0.0 })
    }

    /// V ≡ 0 on the given grid.
    pub fn zero(grid: &Grid1D) -> Self {
        Self { values: vec![0.0; grid.n_points()], offset: 0.0 }
    }

    /// Same per-point values with a different uniform offset.
    pub fn with_offset(mut self, offset: f64) -> Result<Self> {
        if !offset.is_finite() {
            return Err(Error::invalid(format!("non-finite potential offset {offset}")));
        }
        self.offset = offset;
        Ok(self)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// V(z_j) + offset.
    pub fn total_at(&self, j: usize) -> f64 {
        self.values[j] + self.offset
    }

    /// max_j |V(z_j) + offset|.
    pub fn max_abs_total(&self) -> f64 {
        self.values
            .iter()
            .map(|v| (v + self.offset).abs())
            .fold(0.0, f64::max)
    }
}
