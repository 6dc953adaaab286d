//! Rotation-frequency extraction from trajectories.
//!
//! The overlap of the evolving field with its initial state rotates at the
//! eigenfrequencies ω_n = E_n/ħ. [`autocorrelation`] builds that overlap as
//! the real pair (c_re, c_im); [`spectrum`] Hann-windows the pair, runs a
//! discrete Fourier transform (the two-channel real form of a one-sided
//! complex transform) and picks interpolated peaks. Peak frequencies are
//! reported folded into [0, π/Δt]: the rotation sense carries no extra
//! energy information here.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::propagator::Trajectory;
use crate::units::UnitSystem;

/// Overlap of a trajectory with its initial sample.
#[derive(Debug, Clone)]
pub struct Correlation {
    times: Vec<f64>,
    c_re: Vec<f64>,
    c_im: Vec<f64>,
}

impl Correlation {
    pub fn new(times: Vec<f64>, c_re: Vec<f64>, c_im: Vec<f64>) -> Result<Self> {
        if times.len() != c_re.len() || times.len() != c_im.len() {
            return Err(Error::invalid("correlation arrays must have equal length"));
        }
        if times.len() < 2 {
            return Err(Error::invalid("correlation needs at least two samples"));
        }
        let dt = times[1] - times[0];
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::NonUniformSampling);
        }
        if times.windows(2).any(|w| (w[1] - w[0] - dt).abs() > 1e-9 * dt) {
            return Err(Error::NonUniformSampling);
        }
        if c_re.iter().chain(&c_im).any(|v| !v.is_finite()) {
            return Err(Error::invalid("correlation contains a non-finite value"));
        }
        Ok(Self { times, c_re, c_im })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn c_re(&self) -> &[f64] {
        &self.c_re
    }

    pub fn c_im(&self) -> &[f64] {
        &self.c_im
    }

    /// Sample spacing Δt.
    pub fn sample_dt(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// One spectral line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPeak {
    pub omega: f64,
    pub amplitude: f64,
    pub bin_width: f64,
}

/// Interpolated peaks of a correlation spectrum, sorted by ω.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub peaks: Vec<SpectralPeak>,
}

/// Comparison of recovered peaks against expected energies via E = ħω.
#[derive(Debug, Clone)]
pub struct PlanckReport {
    pub rows: Vec<PlanckRow>,
}

#[derive(Debug, Clone, Copy)]
pub struct PlanckRow {
    pub expected_energy: f64,
    pub peak_omega: f64,
    pub peak_energy: f64,
    pub relative_error: f64,
}

/// Overlap ⟨Ψ(0), Ψ(t)⟩ of the co-located samples, in vector components:
/// c_re = ∫(Ψx₀Ψx + Ψy₀Ψy) dz, c_im = ∫(Ψx₀Ψy − Ψy₀Ψx) dz.
pub fn autocorrelation(traj: &Trajectory) -> Result<Correlation> {
    if traj.len() < 2 {
        return Err(Error::invalid("autocorrelation needs at least two samples"));
    }
    let first = &traj.samples()[0];
    let grid = first.grid();
    let mut c_re = Vec::with_capacity(traj.len());
    let mut c_im = Vec::with_capacity(traj.len());
    for s in traj.samples() {
        c_re.push(grid.integrate(first.psi_x(), s.psi_x()) + grid.integrate(first.psi_y(), s.psi_y()));
        c_im.push(grid.integrate(first.psi_x(), s.psi_y()) - grid.integrate(first.psi_y(), s.psi_x()));
    }
    Correlation::new(traj.sample_times().to_vec(), c_re, c_im)
}

const MIN_SAMPLES: usize = 64;
const PEAK_THRESHOLD: f64 = 0.01;
const PEAK_NEIGHBORHOOD: usize = 3;

/// Hann-window the pair, transform, and fold the two-sided magnitudes onto
/// [0, Nyquist]. Returns (folded magnitudes, bin width). The window's
/// coherent gain is Σw = m/2, so amplitudes normalize by 2/m.
fn folded_transform(corr: &Correlation) -> Result<(Vec<f64>, f64)> {
    let m = corr.len();
    if m < MIN_SAMPLES {
        return Err(Error::TooFewSamples { got: m, need: MIN_SAMPLES });
    }
    let dt = corr.sample_dt();
    let bin_width = 2.0 * PI / (m as f64 * dt);

    let mut buf: Vec<Complex<f64>> = (0..m)
        .map(|j| {
            let w = 0.5 * (1.0 - (2.0 * PI * j as f64 / m as f64).cos());
            Complex::new(corr.c_re[j] * w, corr.c_im[j] * w)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);

    let half = m / 2;
    let mut folded = vec![0.0; half + 1];
    folded[0] = buf[0].norm();
    for (k, f) in folded.iter_mut().enumerate().skip(1) {
        let mirrored = m - k;
        *f = if mirrored > k && mirrored < m {
            buf[k].norm() + buf[mirrored].norm()
        } else {
            buf[k].norm()
        };
    }
    Ok((folded, bin_width))
}

/// The full folded amplitude curve, one value per bin over [0, π/Δt].
/// Plot-oriented companion to [`spectrum`], same transform and
/// normalization.
pub fn spectrum_curve(corr: &Correlation) -> Result<(Vec<f64>, Vec<f64>)> {
    let (folded, bin_width) = folded_transform(corr)?;
    let amp_norm = 2.0 / corr.len() as f64;
    let omegas = (0..folded.len()).map(|k| k as f64 * bin_width).collect();
    let amplitudes = folded.iter().map(|f| f * amp_norm).collect();
    Ok((omegas, amplitudes))
}

/// Hann-window the correlation pair, transform, and return interpolated
/// local maxima above 1% of the strongest line.
pub fn spectrum(corr: &Correlation) -> Result<SpectrumResult> {
    let m = corr.len();
    let dt = corr.sample_dt();
    let (folded, bin_width) = folded_transform(corr)?;
    let half = m / 2;
    let amp_norm = 2.0 / m as f64;

    let strongest = folded.iter().fold(0.0f64, |a, &b| a.max(b));
    let mut peaks = Vec::new();
    if strongest > 0.0 {
        for k in 0..=half {
            if folded[k] < PEAK_THRESHOLD * strongest {
                continue;
            }
            let lo = k.saturating_sub(PEAK_NEIGHBORHOOD);
            let hi = (k + PEAK_NEIGHBORHOOD).min(half);
            let is_first_max = (lo..=hi).all(|j| {
                folded[j] < folded[k] || (folded[j] == folded[k] && j >= k)
            });
            if !is_first_max {
                continue;
            }
            let (delta, ln_amp) = refine(&folded, k, half);
            let omega = ((k as f64 + delta) * bin_width).clamp(0.0, PI / dt);
            peaks.push(SpectralPeak {
                omega,
                amplitude: ln_amp.exp() * amp_norm,
                bin_width,
            });
        }
    }
    Ok(SpectrumResult { peaks })
}

/// Three-point parabola through ln|F| around bin k: sub-bin offset of the
/// vertex and the refined log-amplitude.
fn refine(folded: &[f64], k: usize, half: usize) -> (f64, f64) {
    if k == 0 || k == half || folded[k - 1] <= 0.0 || folded[k + 1] <= 0.0 {
        return (0.0, folded[k].ln());
    }
    let la = folded[k - 1].ln();
    let lb = folded[k].ln();
    let lc = folded[k + 1].ln();
    let curvature = la - 2.0 * lb + lc;
    if curvature >= 0.0 {
        return (0.0, lb);
    }
    let delta = (0.5 * (la - lc) / curvature).clamp(-0.5, 0.5);
    let ln_amp = lb + 0.5 * (lc - la) * delta + 0.5 * curvature * delta * delta;
    (delta, ln_amp)
}

/// For each expected energy, the nearest recovered peak and the relative
/// error of ħω against it. Empty input gives an empty report; with no peaks
/// available the report is empty as well.
pub fn planck_check(result: &SpectrumResult, expected: &[f64], units: &UnitSystem) -> PlanckReport {
    let mut rows = Vec::with_capacity(expected.len());
    for &energy in expected {
        let Some(peak) = result
            .peaks
            .iter()
            .min_by(|a, b| {
                let da = (units.hbar() * a.omega - energy).abs();
                let db = (units.hbar() * b.omega - energy).abs();
                da.partial_cmp(&db).expect("finite peak frequencies")
            })
        else {
            continue;
        };
        let peak_energy = units.hbar() * peak.omega;
        let err = (peak_energy - energy).abs();
        let relative_error = if energy != 0.0 { err / energy.abs() } else { err };
        rows.push(PlanckRow {
            expected_energy: energy,
            peak_omega: peak.omega,
            peak_energy,
            relative_error,
        });
    }
    PlanckReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{normalize, norm_squared, VectorField};
    use crate::grid::{Boundary, Grid1D};
    use crate::representation::{box_energy, box_state, helicity_flip, Helicity};

    fn natural() -> UnitSystem {
        UnitSystem::natural()
    }

    /// Analytic trajectory: the given box state sampled at uniform times.
    fn analytic_box_trajectory(
        n: usize,
        helicity: Helicity,
        grid: &Grid1D,
        dt: f64,
        samples: usize,
    ) -> Trajectory {
        let u = natural();
        let times: Vec<f64> = (0..samples).map(|i| i as f64 * dt).collect();
        let fields: Vec<VectorField> = times
            .iter()
            .map(|&t| box_state(n, helicity, grid, t, &u).unwrap())
            .collect();
        Trajectory::new(times, fields, 1).unwrap()
    }

    #[test]
    fn correlation_starts_at_the_norm() {
        let u = natural();
        let g = Grid1D::new(std::f64::consts::PI, 81, Boundary::Dirichlet).unwrap();
        let a = box_state(1, Helicity::Plus, &g, 0.0, &u).unwrap();
        let b = box_state(2, Helicity::Plus, &g, 0.0, &u).unwrap();
        let v0 = normalize(&a.linear_combination(0.7, &b, 0.4).unwrap()).unwrap();
        let times: Vec<f64> = (0..4).map(|i| i as f64 * 0.1).collect();
        let fields = vec![v0.clone(), v0.clone(), v0.clone(), v0.clone()];
        let corr = autocorrelation(&Trajectory::new(times, fields, 1).unwrap()).unwrap();
        assert!((corr.c_re()[0] - norm_squared(&v0)).abs() <= 1e-12);
        assert!(corr.c_im()[0].abs() <= 1e-12);
    }

    #[test]
    fn single_eigenstate_correlation_is_a_pure_rotation() {
        let u = natural();
        let g = Grid1D::new(std::f64::consts::PI, 101, Boundary::Dirichlet).unwrap();
        let omega = box_energy(2, g.length(), &u).unwrap() / u.hbar();
        let traj = analytic_box_trajectory(2, Helicity::Plus, &g, 0.07, 150);
        let corr = autocorrelation(&traj).unwrap();
        for (i, &t) in corr.times().iter().enumerate() {
            assert!((corr.c_re()[i] - (omega * t).cos()).abs() <= 1e-6);
            assert!((corr.c_im()[i] - (omega * t).sin()).abs() <= 1e-6);
            let mag = corr.c_re()[i].hypot(corr.c_im()[i]);
            assert!((mag - 1.0).abs() <= 1e-6);
        }
    }

    #[test]
    fn helicity_minus_flips_the_imaginary_channel() {
        let g = Grid1D::new(2.0, 51, Boundary::Dirichlet).unwrap();
        let plus = analytic_box_trajectory(1, Helicity::Plus, &g, 0.05, 80);
        let minus = analytic_box_trajectory(1, Helicity::Minus, &g, 0.05, 80);
        let cp = autocorrelation(&plus).unwrap();
        let cm = autocorrelation(&minus).unwrap();
        for i in 0..cp.len() {
            assert!((cp.c_im()[i] + cm.c_im()[i]).abs() <= 1e-12);
            assert!((cp.c_re()[i] - cm.c_re()[i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn equal_superposition_correlation_is_the_mean_of_cosines() {
        let u = natural();
        let g = Grid1D::new(std::f64::consts::PI, 101, Boundary::Dirichlet).unwrap();
        let (w1, w2) = (
            box_energy(1, g.length(), &u).unwrap() / u.hbar(),
            box_energy(2, g.length(), &u).unwrap() / u.hbar(),
        );
        // analytic superposition trajectory: each mode rotates at its own ω
        let times: Vec<f64> = (0..200).map(|i| i as f64 * 0.05).collect();
        let fields: Vec<VectorField> = times
            .iter()
            .map(|&t| {
                let sa = box_state(1, Helicity::Plus, &g, t, &u).unwrap();
                let sb = box_state(2, Helicity::Plus, &g, t, &u).unwrap();
                normalize(&sa.linear_combination(1.0, &sb, 1.0).unwrap()).unwrap()
            })
            .collect();
        let corr = autocorrelation(&Trajectory::new(times, fields, 1).unwrap()).unwrap();
        for (i, &t) in corr.times().iter().enumerate() {
            let expected = 0.5 * (w1 * t).cos() + 0.5 * (w2 * t).cos();
            assert!((corr.c_re()[i] - expected).abs() <= 1e-5, "t={t}");
        }
    }

    #[test]
    fn synthetic_tone_peaks_at_its_frequency() {
        let omega = 2.34;
        let dt = 0.1;
        let m = 512;
        let times: Vec<f64> = (0..m).map(|i| i as f64 * dt).collect();
        let c_re: Vec<f64> = times.iter().map(|t| (omega * t).cos()).collect();
        let c_im: Vec<f64> = times.iter().map(|t| (omega * t).sin()).collect();
        let corr = Correlation::new(times, c_re, c_im).unwrap();
        let spec = spectrum(&corr).unwrap();
        assert_eq!(spec.peaks.len(), 1);
        let p = spec.peaks[0];
        assert!((p.omega - omega).abs() <= p.bin_width / 2.0);
        assert!((p.amplitude - 1.0).abs() < 0.05);

        // opposite rotation sense folds onto the same line
        let times: Vec<f64> = (0..m).map(|i| i as f64 * dt).collect();
        let c_re: Vec<f64> = times.iter().map(|t| (omega * t).cos()).collect();
        let c_im: Vec<f64> = times.iter().map(|t| -(omega * t).sin()).collect();
        let spec2 = spectrum(&Correlation::new(times, c_re, c_im).unwrap()).unwrap();
        assert_eq!(spec2.peaks.len(), 1);
        assert!((spec2.peaks[0].omega - omega).abs() <= spec2.peaks[0].bin_width / 2.0);
    }

    #[test]
    fn flipped_input_keeps_the_same_frequencies() {
        let g = Grid1D::new(std::f64::consts::PI, 101, Boundary::Dirichlet).unwrap();
        let traj = analytic_box_trajectory(2, Helicity::Plus, &g, 0.07, 256);
        let flipped = Trajectory::new(
            traj.sample_times().to_vec(),
            traj.samples().iter().map(helicity_flip).collect(),
            1,
        )
        .unwrap();
        let a = spectrum(&autocorrelation(&traj).unwrap()).unwrap();
        let b = spectrum(&autocorrelation(&flipped).unwrap()).unwrap();
        assert_eq!(a.peaks.len(), b.peaks.len());
        for (pa, pb) in a.peaks.iter().zip(&b.peaks) {
            assert!((pa.omega - pb.omega).abs() <= pa.bin_width);
        }
    }

    #[test]
    fn too_few_samples_is_an_error() {
        let times: Vec<f64> = (0..63).map(|i| i as f64).collect();
        let corr = Correlation::new(times, vec![1.0; 63], vec![0.0; 63]).unwrap();
        assert!(matches!(spectrum(&corr), Err(Error::TooFewSamples { got: 63, need: 64 })));
    }

    #[test]
    fn non_uniform_times_are_rejected() {
        let times = vec![0.0, 1.0, 2.5, 3.0];
        assert!(matches!(
            Correlation::new(times, vec![0.0; 4], vec![0.0; 4]),
            Err(Error::NonUniformSampling)
        ));
    }

    #[test]
    fn planck_check_reports_nearest_peaks() {
        let u = natural();
        let result = SpectrumResult {
            peaks: vec![
                SpectralPeak { omega: 0.5, amplitude: 1.0, bin_width: 0.01 },
                SpectralPeak { omega: 2.0, amplitude: 0.8, bin_width: 0.01 },
            ],
        };
        let report = planck_check(&result, &[0.5, 2.0], &u);
        assert_eq!(report.rows.len(), 2);
        for row in &report.rows {
            assert_eq!(row.relative_error, 0.0);
        }
        assert!(planck_check(&result, &[], &u).rows.is_empty());
        let nearest = planck_check(&result, &[1.9], &u);
        assert_eq!(nearest.rows[0].peak_omega, 2.0);
    }
}
