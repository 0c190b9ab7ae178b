//! Classifying rotation sets as averagers, partial twirls or full twirls.

use std::sync::OnceLock;

use serde::Serialize;

use crate::quantum::bell::{bell_basis, singlet_projector};
use crate::rotations::{RotationSetSpec, Sampling};
use crate::Result;

use super::superop::{superoperator, superoperator_of_set, Superoperator};
use super::Mode;

/// Default acceptance tolerance for a sampling plan: exact sums are held to
/// rounding level, quadrature to 1e-3 and Monte Carlo to three standard
/// errors of a unit-variance estimate.
pub fn default_tolerance(spec: &RotationSetSpec) -> f64 {
    if spec.is_discrete() {
        return 1e-12;
    }
    match spec.sampling {
        Sampling::ExactSum => 1e-12,
        Sampling::Quadrature { .. } => 1e-3,
        Sampling::MonteCarlo { n, .. } => 3.0 / (n as f64).sqrt(),
    }
}

/// Singular values of the Bloch block of the single-qubit channel, largest
/// first. `(1, 1, 1)` leaves every state alone, `(0, 0, 0)` maps every
/// state to `I/2`.
pub fn bloch_shrink(spec: &RotationSetSpec) -> Result<[f64; 3]> {
    Ok(shrink_of(&superoperator(spec, Mode::Local)?))
}

fn shrink_of(local: &Superoperator) -> [f64; 3] {
    let svd = local.bloch_block().svd(false, false);
    let mut s = [svd.singular_values[0], svd.singular_values[1], svd.singular_values[2]];
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// The bilateral channel of the twelve tetrahedral rotations, used as the
/// reference twirl.
pub fn reference_twirl() -> &'static Superoperator {
    static REFERENCE: OnceLock<Superoperator> = OnceLock::new();
    REFERENCE.get_or_init(|| {
        superoperator(&RotationSetSpec::bennett12(), Mode::Bilateral)
            .expect("bennett12 is a valid discrete set")
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TwirlReport {
    pub spec: RotationSetSpec,
    pub tolerance: f64,
    pub is_single_qubit_averager: bool,
    pub bloch_shrink_singular_values: [f64; 3],
    pub is_partial_twirl: bool,
    pub is_full_twirl: bool,
    /// Largest entry of `|S - S_twirl|` for the bilateral transfer matrices.
    pub residual_to_exact_twirl: f64,
    /// Largest change of `<Ψ⁻|·|Ψ⁻>` over the two-qubit Pauli basis.
    pub singlet_fidelity_drift: f64,
    /// Largest Bell-basis off-diagonal of any image of a basis operator.
    pub bell_off_diagonal_residual: f64,
    /// Largest `|<Φ⁺|·|Φ⁺> - <Φ⁻|·|Φ⁻>|` of any image of a basis operator.
    pub phi_population_imbalance: f64,
}

impl TwirlReport {
    /// Flat `key=value` lines, one per field.
    pub fn to_key_value(&self) -> String {
        let s = self.bloch_shrink_singular_values;
        format!(
            "spec={}\ntolerance={:e}\nis_single_qubit_averager={}\nbloch_shrink_singular_values={},{},{}\n\
             is_partial_twirl={}\nis_full_twirl={}\nresidual_to_exact_twirl={:e}\n\
             singlet_fidelity_drift={:e}\nbell_off_diagonal_residual={:e}\nphi_population_imbalance={:e}\n",
            self.spec,
            self.tolerance,
            self.is_single_qubit_averager,
            s[0],
            s[1],
            s[2],
            self.is_partial_twirl,
            self.is_full_twirl,
            self.residual_to_exact_twirl,
            self.singlet_fidelity_drift,
            self.bell_off_diagonal_residual,
            self.phi_population_imbalance,
        )
    }
}

pub fn classify(spec: &RotationSetSpec) -> Result<TwirlReport> {
    classify_with_tolerance(spec, default_tolerance(spec))
}

pub fn classify_with_tolerance(spec: &RotationSetSpec, tolerance: f64) -> Result<TwirlReport> {
    let set = crate::rotations::realize(spec)?;
    let local = superoperator_of_set(&set, Mode::Local);
    let bilateral = superoperator_of_set(&set, Mode::Bilateral);

    let shrink = shrink_of(&local);
    let residual = bilateral.max_abs_diff(reference_twirl());

    let b = bell_basis();
    let p = singlet_projector();
    let basis = super::superop::two_qubit_pauli_basis();
    let (mut off, mut imbalance, mut drift) = (0.0f64, 0.0f64, 0.0f64);
    for (k, input) in basis.iter().enumerate() {
        let image = bilateral.image_of_basis(k);
        let in_bell = b.adjoint() * image * b;
        for r in 0..4 {
            for c in 0..4 {
                if r != c {
                    off = off.max(in_bell[(r, c)].norm());
                }
            }
        }
        imbalance = imbalance.max((in_bell[(3, 3)] - in_bell[(2, 2)]).norm());
        let before = (p * input).trace().re;
        let after = (p * image).trace().re;
        drift = drift.max((after - before).abs());
    }

    let is_full = residual <= tolerance;
    let bell_diagonal = off <= tolerance && imbalance <= tolerance;
    Ok(TwirlReport {
        spec: *spec,
        tolerance,
        is_single_qubit_averager: shrink.iter().all(|s| *s <= tolerance),
        bloch_shrink_singular_values: shrink,
        is_partial_twirl: bell_diagonal && !is_full,
        is_full_twirl: is_full,
        residual_to_exact_twirl: residual,
        singlet_fidelity_drift: drift,
        bell_off_diagonal_residual: off,
        phi_population_imbalance: imbalance,
    })
}
