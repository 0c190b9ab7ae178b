//! Spatial ensembles of two-spin deviation matrices and the operations that
//! act on them: hard pulses, free evolution and gradient crushes.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::quantum::linalg::{tensor, Matrix2, Matrix4};
use crate::quantum::product_ops::ProductOperator;
use crate::quantum::state::{Kind, TwoQubit};
use crate::quantum::PauliAxis;
use crate::rotations::{axis_angle_unitary, AxisAngle};
use crate::{Error, Result};

use super::sequence::{PulseEvent, PulseSequence, Target};
use super::system::SpinSystemParams;

pub const DEFAULT_GRADIENT_PHASES: usize = 16;

/// Above this many members an ensemble is collapsed to its weighted mean
/// before a gradient expands it again. Every later operation is linear and
/// acts identically on each member, so the collapse does not change any
/// observable.
pub const MAX_MEMBERS: usize = 1 << 16;

/// Tolerance, in seconds, for a gradient duration to count as a whole
/// number of `1/delta` periods.
pub const REFOCUS_TOL_S: f64 = 1e-9;

/// Total magnetic quantum number of `|00>, |01>, |10>, |11>` (spin up = 0).
const TOTAL_M: [f64; 4] = [1.0, 0.0, 0.0, -1.0];
const SPIN_M: [(f64, f64); 4] = [(0.5, 0.5), (0.5, -0.5), (-0.5, 0.5), (-0.5, -0.5)];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimWarning {
    /// Evolution during the gradient is not refocused: `t·delta` is not an
    /// integer.
    UnrefocusedGradient { seconds: f64, periods: f64 },
}

impl std::fmt::Display for SimWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SimWarning::UnrefocusedGradient { seconds, periods } => write!(
                f,
                "gradient of {seconds} s spans {periods} periods of 1/delta; \
                 background evolution is not refocused"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub weight: f64,
    pub rho: TwoQubit,
}

/// Weighted collection of deviation matrices, one per spatial position.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleState {
    members: Vec<Member>,
    gradient_phase_count: usize,
    warnings: Vec<SimWarning>,
}

impl EnsembleState {
    /// Single-member ensemble. `rho` must be a deviation matrix.
    pub fn new(rho: TwoQubit, gradient_phase_count: usize) -> Result<Self> {
        if rho.kind() != Kind::Deviation {
            return Err(Error::Usage("ensembles hold deviation matrices".into()));
        }
        if gradient_phase_count == 0 {
            return Err(Error::Domain("gradient phase count must be >= 1".into()));
        }
        Ok(Self { members: vec![Member { weight: 1.0, rho }], gradient_phase_count, warnings: Vec::new() })
    }

    /// Thermal deviation `Iz + Sz`.
    pub fn thermal(gradient_phase_count: usize) -> Result<Self> {
        Self::new(thermal_deviation(), gradient_phase_count)
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn gradient_phase_count(&self) -> usize {
        self.gradient_phase_count
    }

    pub fn warnings(&self) -> &[SimWarning] {
        &self.warnings
    }

    pub fn total_weight(&self) -> f64 {
        self.members.iter().map(|m| m.weight).sum()
    }

    /// Weighted mean, summed in member order.
    pub fn mean(&self) -> TwoQubit {
        let m = self
            .members
            .iter()
            .fold(Matrix4::zeros(), |acc, member| acc + member.rho.matrix().scale(member.weight));
        TwoQubit::from_map_output(m, Kind::Deviation)
    }

    /// Collapses to a single member holding the weighted mean.
    pub fn collapsed(&self) -> Self {
        Self {
            members: vec![Member { weight: 1.0, rho: self.mean() }],
            gradient_phase_count: self.gradient_phase_count,
            warnings: self.warnings.clone(),
        }
    }

    /// Multiplies every member by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let members = self
            .members
            .iter()
            .map(|m| Member { weight: m.weight, rho: m.rho.scaled(factor).expect("members are deviations") })
            .collect();
        Self { members, ..self.clone() }
    }

    fn map_members(&self, f: impl Fn(&TwoQubit) -> TwoQubit + Sync) -> Self {
        let members = self
            .members
            .par_iter()
            .map(|m| Member { weight: m.weight, rho: f(&m.rho) })
            .collect();
        Self { members, gradient_phase_count: self.gradient_phase_count, warnings: self.warnings.clone() }
    }
}

pub fn thermal_deviation() -> TwoQubit {
    let m = ProductOperator::new(PauliAxis::Z, PauliAxis::Identity).matrix()
        + ProductOperator::new(PauliAxis::Identity, PauliAxis::Z).matrix();
    TwoQubit::from_map_output(m, Kind::Deviation)
}

/// `exp(-i θ (cos φ σx + sin φ σy)/2)`
pub fn pulse_unitary(angle: f64, phase: f64) -> Matrix2 {
    let axis = Vector3::new(phase.cos(), phase.sin(), 0.0);
    *axis_angle_unitary(&AxisAngle { xi: angle, axis: [axis.x, axis.y, axis.z] }).matrix()
}

/// The two-spin propagator of a hard pulse on `target`.
pub fn pulse_propagator(target: Target, angle: f64, phase: f64) -> Matrix4 {
    let u = pulse_unitary(angle, phase);
    let id = Matrix2::identity();
    match target {
        Target::I => tensor(&u, &id),
        Target::S => tensor(&id, &u),
        Target::Both => tensor(&u, &u),
    }
}

/// Instantaneous rotation of the targeted spin(s). Angles in radians.
pub fn apply_pulse(state: &EnsembleState, target: Target, angle: f64, phase: f64) -> EnsembleState {
    let u = pulse_propagator(target, angle, phase);
    state.map_members(|rho| rho.conjugated(&u))
}

/// Energies (rad/s) of the product basis under
/// `H = 2πν_I Iz + 2πν_S Sz + πJ 2IzSz`.
pub fn energies(params: &SpinSystemParams) -> [f64; 4] {
    SPIN_M.map(|(mi, ms)| TAU * (params.nu_i * mi + params.nu_s * ms + params.j * mi * ms))
}

/// Phase factors `exp(-i (E_j - E_k) t)` of free evolution for time `t`.
fn evolution_phases(params: &SpinSystemParams, t: f64) -> [[C64; 4]; 4] {
    let e = energies(params);
    let mut out = [[C64::new(1.0, 0.0); 4]; 4];
    for (j, row) in out.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            *v = C64::from_polar(1.0, -(e[j] - e[k]) * t);
        }
    }
    out
}

fn apply_phases(rho: &TwoQubit, phases: &[[C64; 4]; 4]) -> TwoQubit {
    let m = Matrix4::from_fn(|j, k| rho.matrix()[(j, k)] * phases[j][k]);
    TwoQubit::from_map_output(m, rho.kind())
}

/// Free evolution under the weak-coupling Hamiltonian for `t` seconds.
pub fn evolve(state: &EnsembleState, params: &SpinSystemParams, t: f64) -> Result<EnsembleState> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("evolution time {t} must be a non-negative number")));
    }
    if t == 0.0 {
        return Ok(state.clone());
    }
    let phases = evolution_phases(params, t);
    Ok(state.map_members(|rho| apply_phases(rho, &phases)))
}

/// Bilateral z rotation by `phi`: `ρ_jk → ρ_jk exp(-i (M_j - M_k) φ)`.
pub fn z_crush_phases(phi: f64) -> [[C64; 4]; 4] {
    let mut out = [[C64::new(1.0, 0.0); 4]; 4];
    for (j, row) in out.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            *v = C64::from_polar(1.0, -(TOTAL_M[j] - TOTAL_M[k]) * phi);
        }
    }
    out
}

/// Number of `1/delta` periods in `t` when it is not a whole number within
/// [`REFOCUS_TOL_S`].
pub fn unrefocused_periods(params: &SpinSystemParams, t: f64) -> Option<f64> {
    let delta = params.delta();
    if delta == 0.0 {
        return None;
    }
    let periods = t * delta;
    let miss = (periods - periods.round()).abs() / delta.abs();
    (miss > REFOCUS_TOL_S).then_some(periods)
}

/// A crush gradient of duration `t`: every member splits into
/// `gradient_phase_count` copies rotated about z by `2πk/N` (same phase on
/// both spins), followed by free evolution for `t`.
pub fn apply_gradient(state: &EnsembleState, params: &SpinSystemParams, t: f64) -> Result<EnsembleState> {
    let n = state.gradient_phase_count;
    let base = if state.len() * n > MAX_MEMBERS { state.collapsed() } else { state.clone() };
    let phases: Vec<[[C64; 4]; 4]> = (0..n).map(|k| z_crush_phases(TAU * k as f64 / n as f64)).collect();
    let members: Vec<Member> = base
        .members
        .par_iter()
        .flat_map_iter(|m| {
            phases.iter().map(move |p| Member { weight: m.weight / n as f64, rho: apply_phases(&m.rho, p) })
        })
        .collect();
    let mut expanded = EnsembleState { members, gradient_phase_count: n, warnings: base.warnings };
    if let Some(periods) = unrefocused_periods(params, t) {
        expanded.warnings.push(SimWarning::UnrefocusedGradient { seconds: t, periods });
    }
    evolve(&expanded, params, t)
}

/// Executes every event except `acquire`, which is returned for the caller.
pub fn execute(
    state: &EnsembleState,
    params: &SpinSystemParams,
    sequence: &PulseSequence,
) -> Result<(EnsembleState, Option<(usize, f64)>)> {
    let mut current = state.clone();
    let mut acquisition = None;
    for event in &sequence.events {
        current = match *event {
            PulseEvent::Pulse { target, angle, phase } => {
                apply_pulse(&current, target, angle.radians(), phase.radians())
            }
            PulseEvent::Delay { seconds } => evolve(&current, params, seconds)?,
            PulseEvent::Gradient { seconds } => apply_gradient(&current, params, seconds)?,
            PulseEvent::Acquire { points, dwell } => {
                acquisition = Some((points, dwell));
                current
            }
        };
    }
    Ok((current, acquisition))
}

/// Orthogonal projection onto operators invariant under collective z
/// rotations (coherence order zero).
pub fn zero_quantum_projection(rho: &TwoQubit) -> TwoQubit {
    let m = Matrix4::from_fn(|j, k| {
        if TOTAL_M[j] == TOTAL_M[k] { rho.matrix()[(j, k)] } else { C64::new(0.0, 0.0) }
    });
    TwoQubit::from_map_output(m, rho.kind())
}

/// Degrees to radians, for callers working in pulse-program units.
pub fn deg(x: f64) -> f64 {
    x * PI / 180.0
}
