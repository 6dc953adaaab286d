//! Uniform 1D spatial grids.

use crate::error::{Error, Result};

/// Boundary condition of the spatial domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Field pinned to zero at z = 0 and z = L; both endpoints are grid
    /// points.
    Dirichlet,
    /// Wraparound domain [0, L); the duplicate endpoint is excluded.
    Periodic,
}

/// Uniform 1D grid over a box of extent `length`.
///
/// Dirichlet grids have spacing L/(n-1) and include both endpoints; periodic
/// grids have spacing L/n and stop one point short of z = L.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    length: f64,
    n_points: usize,
    spacing: f64,
    boundary: Boundary,
}

impl Grid1D {
    pub fn new(length: f64, n_points: usize, boundary: Boundary) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::invalid(format!(
                "grid length must be finite and positive, got {length}"
            )));
        }
        if n_points < 3 {
            return Err(Error::invalid(format!(
                "grid needs at least 3 points, got {n_points}"
            )));
        }
        let spacing = match boundary {
            Boundary::Dirichlet => length / (n_points - 1) as f64,
            Boundary::Periodic => length / n_points as f64,
        };
        Ok(Self { length, n_points, spacing, boundary })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Δz.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Coordinate of grid point `j`.
    pub fn z(&self, j: usize) -> f64 {
        j as f64 * self.spacing
    }

    /// Quadrature weight of point `j`: trapezoidal on Dirichlet grids, plain
    /// Δz on periodic ones.
    pub fn weight(&self, j: usize) -> f64 {
        match self.boundary {
            Boundary::Dirichlet if j == 0 || j == self.n_points - 1 => 0.5 * self.spacing,
            _ => self.spacing,
        }
    }

    /// Quadrature-weighted inner product of two samplings on this grid.
    pub fn integrate(&self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), self.n_points);
        debug_assert_eq!(b.len(), self.n_points);
        match self.boundary {
            Boundary::Periodic => {
                let s: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                s * self.spacing
            }
            Boundary::Dirichlet => {
                let n = self.n_points;
                let mut s = 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]);
                for j in 1..n - 1 {
                    s += a[j] * b[j];
                }
                s * self.spacing
            }
        }
    }
}
