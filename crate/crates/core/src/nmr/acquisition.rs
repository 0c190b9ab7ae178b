//! Free induction decays, their spectra and peak integrals.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::quantum::linalg::Matrix4;
use crate::quantum::state::TwoQubit;
use crate::{Error, Result};

use super::ensemble::{energies, EnsembleState};
use super::system::SpinSystemParams;

pub const DEFAULT_POINTS: usize = 4096;

/// Observable `I⁺ + S⁺` in the product basis.
pub fn raising_observable() -> Matrix4 {
    let one = C64::new(1.0, 0.0);
    let mut m = Matrix4::zeros();
    // I⁺: |1b> -> |0b>
    m[(0, 2)] = one;
    m[(1, 3)] = one;
    // S⁺: |a1> -> |a0>
    m[(0, 1)] = one;
    m[(2, 3)] = one;
    m
}

/// Default dwell `1/(4 delta)`, giving a spectral width of ±2 delta.
pub fn default_dwell(params: &SpinSystemParams) -> f64 {
    1.0 / (4.0 * params.delta().abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fid {
    pub samples: Vec<C64>,
    pub dwell: f64,
}

impl Fid {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn power(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumPoint {
    pub freq_hz: f64,
    pub real: f64,
    pub imag: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub freq_hz: Vec<f64>,
    pub amplitude: Vec<C64>,
    pub line_broadening_hz: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.amplitude.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitude.is_empty()
    }

    pub fn power(&self) -> f64 {
        self.amplitude.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn bin_width(&self) -> f64 {
        if self.freq_hz.len() < 2 { 0.0 } else { self.freq_hz[1] - self.freq_hz[0] }
    }

    pub fn points(&self) -> impl Iterator<Item = SpectrumPoint> + '_ {
        self.freq_hz
            .iter()
            .zip(&self.amplitude)
            .map(|(&freq_hz, a)| SpectrumPoint { freq_hz, real: a.re, imag: a.im })
    }

    /// `freq_hz,real,imag` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("freq_hz,real,imag\n");
        for p in self.points() {
            out.push_str(&format!("{},{},{}\n", p.freq_hz, p.real, p.imag));
        }
        out
    }
}

/// Samples `Tr(ρ(t_k)(I⁺+S⁺))` at `t_k = k·dwell` under free evolution.
///
/// The ensemble is reduced to its weighted mean first; the signal is linear
/// in ρ and every member evolves under the same Hamiltonian.
pub fn acquire(state: &EnsembleState, params: &SpinSystemParams, points: usize, dwell: f64) -> Result<Fid> {
    acquire_matrix(&state.mean(), params, points, dwell)
}

pub fn acquire_matrix(rho: &TwoQubit, params: &SpinSystemParams, points: usize, dwell: f64) -> Result<Fid> {
    if points < 2 {
        return Err(Error::Domain(format!("acquisition needs at least 2 points, got {points}")));
    }
    if !(dwell > 0.0 && dwell.is_finite()) {
        return Err(Error::Domain(format!("dwell {dwell} s must be positive")));
    }
    let e = energies(params);
    let obs = raising_observable();
    // s(t) = Σ_jk ρ_jk O_kj exp(-i (E_j - E_k) t)
    let mut terms = Vec::new();
    for j in 0..4 {
        for k in 0..4 {
            let a = rho.matrix()[(j, k)] * obs[(k, j)];
            if a != C64::new(0.0, 0.0) {
                terms.push((a, -(e[j] - e[k])));
            }
        }
    }
    let samples = (0..points)
        .map(|n| {
            let t = n as f64 * dwell;
            terms.iter().map(|&(a, w)| a * C64::from_polar(1.0, w * t)).sum()
        })
        .collect();
    Ok(Fid { samples, dwell })
}

/// Unitary DFT (scaled by `1/√N`, so Parseval holds) after apodization by
/// `exp(-π·lb·t)`, with the zero frequency moved to the centre. The axis runs
/// from `-1/(2·dwell)` in steps of `1/(N·dwell)`.
pub fn spectrum(fid: &Fid, line_broadening_hz: f64) -> Spectrum {
    let n = fid.len();
    let mut buffer: Vec<C64> = fid
        .samples
        .iter()
        .enumerate()
        .map(|(k, &s)| s * (-PI * line_broadening_hz * k as f64 * fid.dwell).exp())
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);
    let scale = 1.0 / (n as f64).sqrt();
    buffer.rotate_right(n / 2);
    let amplitude = buffer.into_iter().map(|a| a * scale).collect();
    let df = 1.0 / (n as f64 * fid.dwell);
    let freq_hz = (0..n).map(|k| (k as f64 - (n / 2) as f64) * df).collect();
    Spectrum { freq_hz, amplitude, line_broadening_hz }
}

/// Sum of the real part over bins with `|f - center| <= width/2`.
pub fn integrate_peak(spec: &Spectrum, center_hz: f64, width_hz: f64) -> Result<f64> {
    let (lo, hi) = (center_hz - width_hz / 2.0, center_hz + width_hz / 2.0);
    let (first, last) = match (spec.freq_hz.first(), spec.freq_hz.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::Domain("empty spectrum".into())),
    };
    if width_hz.is_nan() || width_hz <= 0.0 || lo < first || hi > last {
        return Err(Error::Domain(format!(
            "integration window [{lo}, {hi}] Hz is outside the axis [{first}, {last}] Hz"
        )));
    }
    Ok(spec
        .freq_hz
        .iter()
        .zip(&spec.amplitude)
        .filter(|(&f, _)| f >= lo && f <= hi)
        .map(|(_, a)| a.re)
        .sum())
}

/// The four lines of the weakly coupled pair, in the order
/// `ν_I + J/2, ν_I − J/2, ν_S + J/2, ν_S − J/2`.
pub fn line_positions(params: &SpinSystemParams) -> [f64; 4] {
    let h = params.j / 2.0;
    [params.nu_i + h, params.nu_i - h, params.nu_s + h, params.nu_s - h]
}

/// Complex amplitudes of the four lines, read straight from the density
/// matrix; same order as [`line_positions`]. An absorptive positive line
/// has a positive real amplitude.
pub fn line_amplitudes(rho: &TwoQubit) -> [C64; 4] {
    let m = rho.matrix();
    // I transitions: |1b> -> |0b>; b = 0 (m_S = +1/2) is the upper line.
    [m[(2, 0)], m[(3, 1)], m[(1, 0)], m[(3, 2)]]
}

/// Antiphase doublet intensity `(upper − lower)/2` of each spin, from peak
/// integrals of width `width_hz`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoubletIntegrals {
    pub i_upper: f64,
    pub i_lower: f64,
    pub s_upper: f64,
    pub s_lower: f64,
}

impl DoubletIntegrals {
    pub fn measure(spec: &Spectrum, params: &SpinSystemParams, width_hz: f64) -> Result<Self> {
        let [a, b, c, d] = line_positions(params);
        Ok(Self {
            i_upper: integrate_peak(spec, a, width_hz)?,
            i_lower: integrate_peak(spec, b, width_hz)?,
            s_upper: integrate_peak(spec, c, width_hz)?,
            s_lower: integrate_peak(spec, d, width_hz)?,
        })
    }

    pub fn i_antiphase(&self) -> f64 {
        (self.i_upper - self.i_lower) / 2.0
    }

    pub fn s_antiphase(&self) -> f64 {
        (self.s_upper - self.s_lower) / 2.0
    }
}
