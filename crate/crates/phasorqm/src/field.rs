//! Two-component wavefunction containers.
//!
//! A [`VectorField`] holds the in-plane pair (Ψx, Ψy) per grid point; a
//! [`ComplexField`] holds (Re Ψ, Im Ψ). The two are the same data under the
//! relabeling Ψ = Ψx + iΨy, which is why both live here with identical
//! shape and boundary rules.

use crate::error::{Error, Result};
use crate::grid::{Boundary, Grid1D};

fn check_component(name: &str, data: &[f64], grid: &Grid1D) -> Result<()> {
    if data.len() != grid.n_points() {
        return Err(Error::invalid(format!(
            "{name} has {} entries but the grid has {} points",
            data.len(),
            grid.n_points()
        )));
    }
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("{name} contains a non-finite entry")));
    }
    if grid.boundary() == Boundary::Dirichlet {
        let last = grid.n_points() - 1;
        if data[0] != 0.0 || data[last] != 0.0 {
            return Err(Error::invalid(format!(
                "{name} must vanish at both endpoints of a Dirichlet grid"
            )));
        }
    }
    Ok(())
}

/// Real two-component wavefunction (Ψx, Ψy) on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    psi_x: Vec<f64>,
    psi_y: Vec<f64>,
    grid: Grid1D,
}

impl VectorField {
    pub fn new(psi_x: Vec<f64>, psi_y: Vec<f64>, grid: Grid1D) -> Result<Self> {
        check_component("psi_x", &psi_x, &grid)?;
        check_component("psi_y", &psi_y, &grid)?;
        Ok(Self { psi_x, psi_y, grid })
    }

    pub fn zero(grid: Grid1D) -> Self {
        let n = grid.n_points();
        Self { psi_x: vec![0.0; n], psi_y: vec![0.0; n], grid }
    }

    pub fn psi_x(&self) -> &[f64] {
        &self.psi_x
    }

    pub fn psi_y(&self) -> &[f64] {
        &self.psi_y
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// Pointwise magnitude √(Ψx² + Ψy²).
    pub fn magnitude(&self) -> Vec<f64> {
        self.psi_x
            .iter()
            .zip(&self.psi_y)
            .map(|(x, y)| x.hypot(*y))
            .collect()
    }

    /// a·self + b·other, pointwise.
    pub fn linear_combination(&self, a: f64, other: &VectorField, b: f64) -> Result<VectorField> {
        if self.grid != other.grid {
            return Err(Error::invalid("fields live on different grids"));
        }
        let psi_x = self
            .psi_x
            .iter()
            .zip(&other.psi_x)
            .map(|(u, v)| a * u + b * v)
            .collect();
        let psi_y = self
            .psi_y
            .iter()
            .zip(&other.psi_y)
            .map(|(u, v)| a * u + b * v)
            .collect();
        VectorField::new(psi_x, psi_y, self.grid)
    }
}

/// Complex wavefunction stored as separate real and imaginary samplings.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    re: Vec<f64>,
    im: Vec<f64>,
    grid: Grid1D,
}

impl ComplexField {
    pub fn new(re: Vec<f64>, im: Vec<f64>, grid: Grid1D) -> Result<Self> {
        check_component("re", &re, &grid)?;
        check_component("im", &im, &grid)?;
        Ok(Self { re, im, grid })
    }

    pub fn re(&self) -> &[f64] {
        &self.re
    }

    pub fn im(&self) -> &[f64] {
        &self.im
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }
}

/// ∫ (Ψx² + Ψy²) dz with the grid's quadrature weights.
pub fn norm_squared(f: &VectorField) -> f64 {
    let g = f.grid();
    g.integrate(f.psi_x(), f.psi_x()) + g.integrate(f.psi_y(), f.psi_y())
}

/// Rescale to unit norm. Every (Ψx, Ψy) pair keeps its direction.
pub fn normalize(f: &VectorField) -> Result<VectorField> {
    let n2 = norm_squared(f);
    if n2 == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let s = 1.0 / n2.sqrt();
    let psi_x = f.psi_x().iter().map(|v| v * s).collect();
    let psi_y = f.psi_y().iter().map(|v| v * s).collect();
    VectorField::new(psi_x, psi_y, *f.grid())
}
