//! Deterministic CSV emission.
//!
//! All numbers are written with 17 significant digits so a double survives
//! the round trip bit-exactly; files are written to a temp name and renamed
//! into place so interrupted runs never leave partial output behind.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::oracle::ComplexTrajectory;
use crate::propagator::Trajectory;
use crate::spectral::{Correlation, SpectrumResult};

/// 17-significant-digit scientific notation, '.' decimal separator.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A rectangular table ready to be serialized.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: String,
    rows: Vec<String>,
}

impl CsvTable {
    fn new(header: &str) -> Self {
        Self { header: header.to_string(), rows: Vec::new() }
    }

    fn push_numeric(&mut self, cells: &[f64]) {
        debug_assert!(cells.iter().all(|c| c.is_finite()));
        let row: Vec<String> = cells.iter().map(|&c| fmt_f64(c)).collect();
        self.rows.push(row.join(","));
    }

    fn push_named(&mut self, name: &str, value: f64) {
        debug_assert!(value.is_finite());
        self.rows.push(format!("{name},{}", fmt_f64(value)));
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Serialize with '\n' line endings, header first.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * (self.rows.len() + 1));
        out.push_str(&self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    }

    /// Write atomically: temp file in the target directory, then rename.
    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_text())
    }
}

pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
    }
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::invalid(format!("not a file path: {}", path.display())))?;
    let mut tmp = path.to_path_buf();
    tmp.set_file_name(format!(".tmp-{}", file_name.to_string_lossy()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Long-format trajectory table: one row per (sample time, grid point).
pub fn emit_trajectory_csv(traj: &Trajectory) -> CsvTable {
    let mut table = CsvTable::new("t,z,psi_x,psi_y,magnitude");
    for (t, sample) in traj.sample_times().iter().zip(traj.samples()) {
        let grid = sample.grid();
        for j in 0..grid.n_points() {
            let x = sample.psi_x()[j];
            let y = sample.psi_y()[j];
            table.push_numeric(&[*t, grid.z(j), x, y, x.hypot(y)]);
        }
    }
    table
}

/// Long-format complex trajectory table, mirroring the vector layout.
pub fn emit_complex_trajectory_csv(traj: &ComplexTrajectory) -> CsvTable {
    let mut table = CsvTable::new("t,z,re,im,magnitude");
    for (t, sample) in traj.sample_times().iter().zip(traj.samples()) {
        let grid = sample.grid();
        for j in 0..grid.n_points() {
            let re = sample.re()[j];
            let im = sample.im()[j];
            table.push_numeric(&[*t, grid.z(j), re, im, re.hypot(im)]);
        }
    }
    table
}

pub fn emit_spectrum_csv(result: &SpectrumResult) -> CsvTable {
    let mut table = CsvTable::new("omega,amplitude,bin_width");
    for p in &result.peaks {
        table.push_numeric(&[p.omega, p.amplitude, p.bin_width]);
    }
    table
}

pub fn emit_correlation_csv(corr: &Correlation) -> CsvTable {
    let mut table = CsvTable::new("t,c_re,c_im");
    for i in 0..corr.len() {
        table.push_numeric(&[corr.times()[i], corr.c_re()[i], corr.c_im()[i]]);
    }
    table
}

/// (quantity, value) rows for the vortex command.
pub fn emit_vortex_csv(
    total_spin: f64,
    magnetic_moment: f64,
    spin_energy_direct: f64,
    spin_energy_paper: f64,
    compton_radius: f64,
) -> CsvTable {
    let mut table = CsvTable::new("quantity,value");
    table.push_named("total_spin", total_spin);
    table.push_named("magnetic_moment", magnetic_moment);
    table.push_named("spin_energy_direct", spin_energy_direct);
    table.push_named("spin_energy_paper", spin_energy_paper);
    table.push_named("compton_radius", compton_radius);
    table
}

/// (n, omega, energy, energy_discrete) rows for the eigen command.
pub fn emit_energies_csv(rows: &[(usize, f64, f64, f64)]) -> CsvTable {
    let mut table = CsvTable::new("n,omega,energy,energy_discrete");
    for &(n, omega, energy, energy_disc) in rows {
        table
            .rows
            .push(format!("{n},{},{},{}", fmt_f64(omega), fmt_f64(energy), fmt_f64(energy_disc)));
    }
    table
}

/// The coordinates column for external consumers of per-point tables.
pub fn grid_coordinates(grid: &Grid1D) -> Vec<f64> {
    (0..grid.n_points()).map(|j| grid.z(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::VectorField;
    use crate::grid::Boundary;
    use crate::spectral::SpectralPeak;

    #[test]
    fn seventeen_digit_round_trip() {
        for x in [0.5, -1.0 / 3.0, 6.025e-20, 2.0_f64.sqrt(), 1e300, -3.14e-300] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }

    #[test]
    fn empty_spectrum_is_header_only() {
        let table = emit_spectrum_csv(&SpectrumResult { peaks: vec![] });
        assert_eq!(table.n_rows(), 0);
        assert_eq!(table.to_text(), "omega,amplitude,bin_width\n");
    }

    #[test]
    fn trajectory_rows_count_samples_times_points() {
        let g = Grid1D::new(1.0, 3, Boundary::Periodic).unwrap();
        let f = VectorField::new(vec![1.0, 2.0, 3.0], vec![0.0, -1.0, 0.5], g).unwrap();
        let traj = Trajectory::new(vec![0.0, 0.5], vec![f.clone(), f], 1).unwrap();
        let table = emit_trajectory_csv(&traj);
        assert_eq!(table.n_rows(), 6);
    }

    #[test]
    fn magnitude_column_recomputes_from_parsed_components() {
        let g = Grid1D::new(2.0, 4, Boundary::Periodic).unwrap();
        let f = VectorField::new(
            vec![0.1, -0.7, 1.0 / 3.0, 0.0],
            vec![2.0_f64.sqrt(), 0.0, -0.25, 1e-12],
            g,
        )
        .unwrap();
        let traj = Trajectory::new(vec![0.0], vec![f], 1).unwrap();
        let text = emit_trajectory_csv(&traj).to_text();
        for line in text.lines().skip(1) {
            let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            let recomputed = cells[2].hypot(cells[3]);
            assert!((recomputed - cells[4]).abs() <= 1e-15 * recomputed.max(1.0));
        }
    }

    #[test]
    fn atomic_write_leaves_no_temp_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let table = emit_spectrum_csv(&SpectrumResult {
            peaks: vec![SpectralPeak { omega: 0.5, amplitude: 1.0, bin_width: 0.01 }],
        });
        table.write(&path).unwrap();
        assert!(path.is_file());
        let leftovers: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().starts_with(".tmp-"))
            .collect();
        assert!(leftovers.is_empty());
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("omega,amplitude,bin_width\n"));
        assert!(text.ends_with('\n'));
    }
}
