//! The preparation, twirl and detection sequences of the two-proton
//! demonstration, and the two experiments built from them.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::quantum::bell::{bell_diagonal_populations, singlet_fidelity, werner_residual, BellPopulations};
use crate::quantum::state::TwoQubit;
use crate::{Error, Result};

use super::acquisition::{
    acquire, default_dwell, integrate_peak, spectrum, DoubletIntegrals, Spectrum, DEFAULT_POINTS,
};
use super::ensemble::{execute, EnsembleState, SimWarning, DEFAULT_GRADIENT_PHASES};
use super::sequence::{Angle, Phase, PulseEvent, PulseSequence, Target};
use super::system::SpinSystemParams;

/// Preparation delay that maximizes the singlet fraction, in seconds.
pub const DEFAULT_TAU: f64 = 0.0693;
pub const DEFAULT_GRAD_K: f64 = 2.0;
pub const DEFAULT_STEPS: usize = 30;

fn pulse(target: Target, degrees: f64, phase: Phase) -> PulseEvent {
    PulseEvent::Pulse { target, angle: Angle::Degrees(degrees), phase }
}

/// `60 I_y - τ - 30 S_y`
pub fn prepare_a_sequence(tau: f64) -> PulseSequence {
    PulseSequence::new(vec![
        pulse(Target::I, 60.0, Phase::Y),
        PulseEvent::Delay { seconds: tau },
        pulse(Target::S, 30.0, Phase::Y),
    ])
}

/// The first `stages` stages of `G 90x G magic_x G`; each gradient lasts
/// `grad_duration` seconds.
pub fn twirl_sequence(stages: usize, grad_duration: f64) -> Result<PulseSequence> {
    if stages > 3 {
        return Err(Error::Domain(format!("the twirl has 3 stages, asked for {stages}")));
    }
    let mut events = Vec::new();
    for stage in 0..stages {
        match stage {
            1 => events.push(pulse(Target::Both, 90.0, Phase::X)),
            2 => events.push(PulseEvent::Pulse { target: Target::Both, angle: Angle::Magic, phase: Phase::X }),
            _ => {}
        }
        events.push(PulseEvent::Gradient { seconds: grad_duration });
    }
    Ok(PulseSequence::new(events))
}

/// Jump-and-return excitation `90_45 - 1/(4δ) - 90_180`, hard pulses on
/// both spins.
pub fn detect_sequence(params: &SpinSystemParams) -> PulseSequence {
    PulseSequence::new(vec![
        pulse(Target::Both, 90.0, Phase::Degrees(45.0)),
        PulseEvent::Delay { seconds: 1.0 / (4.0 * params.delta().abs()) },
        pulse(Target::Both, 90.0, Phase::Degrees(180.0)),
    ])
}

/// Thermal state after the preparation sequence.
pub fn prepare_a(params: &SpinSystemParams, tau: f64, gradient_phase_count: usize) -> Result<EnsembleState> {
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::Domain(format!("delay {tau} s must be non-negative")));
    }
    let thermal = EnsembleState::thermal(gradient_phase_count)?;
    Ok(execute(&thermal, params, &prepare_a_sequence(tau))?.0)
}

/// `(√3/8) sin(πJτ) sin(2πν_I τ)`
pub fn singlet_fraction_formula(tau: f64, params: &SpinSystemParams) -> f64 {
    3f64.sqrt() / 8.0 * (PI * params.j * tau).sin() * (TAU * params.nu_i * tau).sin()
}

/// Singlet coefficient `<Ψ⁻|ρ|Ψ⁻>` of the ensemble-averaged deviation.
pub fn singlet_coefficient(state: &EnsembleState) -> f64 {
    singlet_fidelity(&state.mean())
}

pub fn apply_detect(state: &EnsembleState, params: &SpinSystemParams) -> Result<EnsembleState> {
    Ok(execute(state, params, &detect_sequence(params))?.0)
}

/// Acquisition and integration settings shared by both experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcquisitionSettings {
    pub points: usize,
    pub dwell: f64,
    /// Line broadening applied to the emitted spectra.
    pub line_broadening_hz: f64,
    /// Width of each peak-integration window, centred on one line.
    pub integration_width_hz: f64,
}

impl AcquisitionSettings {
    pub fn for_params(params: &SpinSystemParams) -> Self {
        Self {
            points: DEFAULT_POINTS,
            dwell: default_dwell(params),
            line_broadening_hz: 1.0,
            integration_width_hz: params.j,
        }
    }

    /// Spectrum with the configured broadening, and the unbroadened
    /// spectrum used for integrals.
    fn spectra(&self, state: &EnsembleState, params: &SpinSystemParams) -> Result<(Spectrum, Spectrum, f64)> {
        let fid = acquire(state, params, self.points, self.dwell)?;
        Ok((spectrum(&fid, self.line_broadening_hz), spectrum(&fid, 0.0), fid.power()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Experiment1Config {
    pub params: SpinSystemParams,
    pub tau: f64,
    pub gradient_phase_count: usize,
    pub grad_duration: f64,
    pub acquisition: AcquisitionSettings,
}

impl Experiment1Config {
    pub fn new(params: SpinSystemParams) -> Self {
        Self {
            params,
            tau: DEFAULT_TAU,
            gradient_phase_count: DEFAULT_GRADIENT_PHASES,
            grad_duration: DEFAULT_GRAD_K / params.delta().abs(),
            acquisition: AcquisitionSettings::for_params(&params),
        }
    }

    pub fn with_grad_k(mut self, k: f64) -> Self {
        self.grad_duration = k / self.params.delta().abs();
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageMetrics {
    pub stage: usize,
    /// FID power of direct acquisition.
    pub direct_power: f64,
    /// `direct_power` relative to stage 0.
    pub relative_direct_power: f64,
    pub singlet_coefficient: f64,
    pub bell_populations: BellPopulations,
    pub werner_residual: f64,
    /// Peak integrals of the spectrum acquired after detection.
    pub doublets: DoubletIntegrals,
    pub i_antiphase: f64,
    pub s_antiphase: f64,
    pub warnings: Vec<SimWarning>,
}

#[derive(Debug, Clone)]
pub struct StageResult {
    pub metrics: StageMetrics,
    /// Ensemble-averaged deviation before detection.
    pub state: TwoQubit,
    pub direct: Spectrum,
    pub detected: Spectrum,
}

#[derive(Debug, Clone)]
pub struct Experiment1Result {
    pub prepared: TwoQubit,
    pub stages: Vec<StageResult>,
}

impl Experiment1Result {
    pub fn metrics(&self) -> Vec<&StageMetrics> {
        self.stages.iter().map(|s| &s.metrics).collect()
    }
}

/// Stages 0 to 3: after each, a direct acquisition and an acquisition
/// after the detection sequence.
pub fn run_experiment1(config: &Experiment1Config) -> Result<Experiment1Result> {
    let p = &config.params;
    let prepared = prepare_a(p, config.tau, config.gradient_phase_count)?;
    let mut stages = Vec::with_capacity(4);
    let mut reference_power = None;
    for stage in 0..4 {
        let (state, _) = execute(&prepared, p, &twirl_sequence(stage, config.grad_duration)?)?;
        let (direct, _, direct_power) = config.acquisition.spectra(&state, p)?;
        let reference = *reference_power.get_or_insert(direct_power);
        let detected_state = apply_detect(&state, p)?;
        let (detected, unbroadened, _) = config.acquisition.spectra(&detected_state, p)?;
        let doublets = DoubletIntegrals::measure(&unbroadened, p, config.acquisition.integration_width_hz)?;
        let mean = state.mean();
        let metrics = StageMetrics {
            stage,
            direct_power,
            relative_direct_power: if reference > 0.0 { direct_power / reference } else { 0.0 },
            singlet_coefficient: singlet_fidelity(&mean),
            bell_populations: bell_diagonal_populations(&mean),
            werner_residual: werner_residual(&mean),
            i_antiphase: doublets.i_antiphase(),
            s_antiphase: doublets.s_antiphase(),
            doublets,
            warnings: state.warnings().to_vec(),
        };
        stages.push(StageResult { metrics, state: mean, direct, detected });
    }
    Ok(Experiment1Result { prepared: prepared.mean(), stages })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Experiment2Config {
    pub params: SpinSystemParams,
    pub tau0: f64,
    pub dtau: f64,
    pub n_steps: usize,
    pub gradient_phase_count: usize,
    pub grad_duration: f64,
    pub acquisition: AcquisitionSettings,
}

impl Experiment2Config {
    pub fn new(params: SpinSystemParams) -> Self {
        Self {
            params,
            tau0: DEFAULT_TAU,
            dtau: 1.0 / (10.0 * params.nu_i.abs()),
            n_steps: DEFAULT_STEPS,
            gradient_phase_count: DEFAULT_GRADIENT_PHASES,
            grad_duration: DEFAULT_GRAD_K / params.delta().abs(),
            acquisition: AcquisitionSettings::for_params(&params),
        }
    }

    pub fn with_grad_k(mut self, k: f64) -> Self {
        self.grad_duration = k / self.params.delta().abs();
        self
    }

    /// Delay of step `k`; the steps are centred on `tau0`.
    pub fn tau(&self, k: usize) -> f64 {
        self.tau0 + (k as f64 - (self.n_steps / 2) as f64) * self.dtau
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Experiment2Point {
    pub step: usize,
    pub tau: f64,
    /// Integral of the `ν_I − J/2` line after twirl and detection.
    pub integral: f64,
    pub formula: f64,
}

/// `a sin(2πk/P) + b cos(2πk/P) + c` in the step index `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SineFit {
    pub period_steps: f64,
    pub amplitude: f64,
    pub phase: f64,
    pub offset: f64,
    pub rms_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Experiment2Result {
    pub points: Vec<Experiment2Point>,
    pub fit: SineFit,
    /// Least-squares `c` in `integral ≈ c · formula`.
    pub proportionality: f64,
    /// Largest `|integral − c·formula|`, relative to the largest `|c·formula|`.
    pub max_relative_error: f64,
    pub warnings: Vec<SimWarning>,
}

/// Full twirl of a family of prepared states with the preparation delay
/// stepped by `dtau`.
pub fn run_experiment2(config: &Experiment2Config) -> Result<Experiment2Result> {
    if config.n_steps < 4 {
        return Err(Error::Domain(format!("need at least 4 steps, got {}", config.n_steps)));
    }
    let p = &config.params;
    let twirl = twirl_sequence(3, config.grad_duration)?;
    let line = p.nu_i - p.j / 2.0;
    let mut points = Vec::with_capacity(config.n_steps);
    let mut warnings = Vec::new();
    for step in 0..config.n_steps {
        let tau = config.tau(step);
        let prepared = prepare_a(p, tau, config.gradient_phase_count)?;
        let (twirled, _) = execute(&prepared, p, &twirl)?;
        if step == 0 {
            warnings.extend_from_slice(twirled.warnings());
        }
        let detected = apply_detect(&twirled, p)?;
        let fid = acquire(&detected, p, config.acquisition.points, config.acquisition.dwell)?;
        let integral = integrate_peak(&spectrum(&fid, 0.0), line, config.acquisition.integration_width_hz)?;
        points.push(Experiment2Point { step, tau, integral, formula: singlet_fraction_formula(tau, p) });
    }
    let ys: Vec<f64> = points.iter().map(|pt| pt.integral).collect();
    let fit = fit_sine(&ys, 2.0, config.n_steps as f64)?;
    let sff: f64 = points.iter().map(|pt| pt.formula * pt.formula).sum();
    let proportionality = if sff > 0.0 {
        points.iter().map(|pt| pt.formula * pt.integral).sum::<f64>() / sff
    } else {
        0.0
    };
    let scale = points.iter().map(|pt| (proportionality * pt.formula).abs()).fold(0.0, f64::max);
    let worst = points.iter().map(|pt| (pt.integral - proportionality * pt.formula).abs()).fold(0.0, f64::max);
    let max_relative_error = if scale > 0.0 { worst / scale } else { f64::INFINITY };
    Ok(Experiment2Result { points, fit, proportionality, max_relative_error, warnings })
}

/// Linear least squares for `(a, b, c)` at a fixed period; returns the
/// coefficients and the residual sum of squares.
fn fit_at_period(ys: &[f64], period: f64) -> Option<([f64; 3], f64)> {
    let rows: Vec<[f64; 3]> = (0..ys.len())
        .map(|k| {
            let w = TAU * k as f64 / period;
            [w.sin(), w.cos(), 1.0]
        })
        .collect();
    let mut ata = nalgebra::Matrix3::<f64>::zeros();
    let mut aty = nalgebra::Vector3::<f64>::zeros();
    for (r, &y) in rows.iter().zip(ys) {
        let v = nalgebra::Vector3::from(*r);
        ata += v * v.transpose();
        aty += v * y;
    }
    let coef = ata.lu().solve(&aty)?;
    let rss = rows
        .iter()
        .zip(ys)
        .map(|(r, &y)| (y - (coef[0] * r[0] + coef[1] * r[1] + coef[2])).powi(2))
        .sum();
    Some(([coef[0], coef[1], coef[2]], rss))
}

/// Fits `A sin(2πk/P + φ) + c` to equally spaced samples: a grid search over
/// `P` in `[min_period, max_period]`, refined by golden-section search.
pub fn fit_sine(ys: &[f64], min_period: f64, max_period: f64) -> Result<SineFit> {
    if ys.len() < 4 || !(min_period > 0.0 && max_period > min_period) {
        return Err(Error::Domain("sine fit needs at least 4 samples and a period range".into()));
    }
    let rss = |p: f64| fit_at_period(ys, p).map_or(f64::INFINITY, |(_, r)| r);
    let grid = 400;
    let step = (max_period - min_period) / grid as f64;
    let best = (0..=grid)
        .map(|i| min_period + i as f64 * step)
        .min_by(|a, b| rss(*a).total_cmp(&rss(*b)))
        .expect("grid is non-empty");
    let (mut lo, mut hi) = ((best - step).max(min_period), (best + step).min(max_period));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut f1, mut f2) = (rss(x1), rss(x2));
    for _ in 0..100 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = rss(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = rss(x2);
        }
    }
    let period = (lo + hi) / 2.0;
    let ([a, b, c], r) = fit_at_period(ys, period)
        .ok_or_else(|| Error::Domain("sine fit is singular".into()))?;
    Ok(SineFit {
        period_steps: period,
        amplitude: a.hypot(b),
        phase: b.atan2(a),
        offset: c,
        rms_residual: (r / ys.len() as f64).sqrt(),
    })
}
