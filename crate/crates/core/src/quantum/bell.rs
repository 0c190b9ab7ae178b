//! Bell states, Werner states and singlet-related metrics.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::Vector4;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::linalg::{max_abs_diff, Matrix4};
use super::state::{DensityMatrix, Kind, StateVector, TwoQubit};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellKind {
    PsiMinus,
    PsiPlus,
    PhiMinus,
    PhiPlus,
}

impl BellKind {
    /// The order used for populations: Ψ⁻, Ψ⁺, Φ⁻, Φ⁺.
    pub const ALL: [BellKind; 4] =
        [BellKind::PsiMinus, BellKind::PsiPlus, BellKind::PhiMinus, BellKind::PhiPlus];
}

/// Bell vectors in the ordering `|00>, |01>, |10>, |11>`.
pub fn bell_state(kind: BellKind) -> StateVector<4> {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    let v = match kind {
        BellKind::PsiMinus => Vector4::new(z, h, -h, z),
        BellKind::PsiPlus => Vector4::new(z, h, h, z),
        BellKind::PhiMinus => Vector4::new(h, z, z, -h),
        BellKind::PhiPlus => Vector4::new(h, z, z, h),
    };
    StateVector::new(v).expect("Bell vectors are normalized")
}

/// Columns are the Bell vectors in [`BellKind::ALL`] order.
pub fn bell_basis() -> Matrix4 {
    let mut m = Matrix4::zeros();
    for (k, kind) in BellKind::ALL.iter().enumerate() {
        m.set_column(k, bell_state(*kind).amplitudes());
    }
    m
}

pub fn singlet_projector() -> Matrix4 {
    let v = *bell_state(BellKind::PsiMinus).amplitudes();
    v * v.adjoint()
}

/// Mixing weight of the singlet in a Werner state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerParams {
    epsilon: f64,
}

impl WernerParams {
    pub const MIN_EPSILON: f64 = -1.0 / 3.0;
    const RANGE_TOL: f64 = 1e-12;

    /// `epsilon` must lie in `[-1/3, 1]` for the matrix to be positive.
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(Self::MIN_EPSILON - Self::RANGE_TOL..=1.0 + Self::RANGE_TOL).contains(&epsilon) {
            return Err(Error::Domain(format!("Werner epsilon {epsilon} outside [-1/3, 1]")));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Inverse of `F = ε + (1 - ε)/4`.
    pub fn epsilon_from_fidelity(singlet_fidelity: f64) -> f64 {
        (4.0 * singlet_fidelity - 1.0) / 3.0
    }
}

/// `ε |Ψ⁻><Ψ⁻| + (1 - ε) I/4`
pub fn werner(params: WernerParams) -> TwoQubit {
    let eps = params.epsilon();
    let m = singlet_projector().scale(eps) + Matrix4::identity().scale((1.0 - eps) / 4.0);
    DensityMatrix::from_map_output(m, Kind::State)
}

/// `<Ψ⁻|ρ|Ψ⁻>`. On a deviation matrix this is the (possibly negative)
/// singlet coefficient.
pub fn singlet_fidelity(rho: &TwoQubit) -> f64 {
    rho.expectation(&bell_state(BellKind::PsiMinus))
}

/// The image of `rho` under the exact twirl:
/// `F |Ψ⁻><Ψ⁻| + (Tr ρ - F)(I - |Ψ⁻><Ψ⁻|)/3` with `F = <Ψ⁻|ρ|Ψ⁻>`.
///
/// For states this is `werner(ε)` with `ε = (4F - 1)/3`; for deviation
/// matrices it is `(4F/3)(|Ψ⁻><Ψ⁻| - I/4)`.
pub fn werner_projection(rho: &TwoQubit) -> TwoQubit {
    let f = singlet_fidelity(rho);
    let p = singlet_projector();
    let rest = (rho.trace() - f) / 3.0;
    let m = p.scale(f) + (Matrix4::identity() - p).scale(rest);
    DensityMatrix::from_map_output(m, rho.kind())
}

/// Largest entry of `|ρ - werner_projection(ρ)|`; zero exactly when `ρ` is of
/// Werner form (or a multiple of the singlet deviation).
pub fn werner_residual(rho: &TwoQubit) -> f64 {
    max_abs_diff(rho.matrix(), werner_projection(rho).matrix())
}

/// Returns the Werner parameters of `rho` if it is within `tol` (largest
/// entry difference) of `werner(ε*)`, `ε* = (4F - 1)/3`.
pub fn is_werner(rho: &TwoQubit, tol: f64) -> Option<WernerParams> {
    if rho.kind() != Kind::State {
        return None;
    }
    let eps = WernerParams::epsilon_from_fidelity(singlet_fidelity(rho));
    let params = WernerParams::new(eps).ok()?;
    (max_abs_diff(rho.matrix(), werner(params).matrix()) <= tol).then_some(params)
}

/// Diagonal of `ρ` in the Bell basis, plus the largest off-diagonal modulus
/// in that basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellPopulations {
    pub psi_minus: f64,
    pub psi_plus: f64,
    pub phi_minus: f64,
    pub phi_plus: f64,
    pub max_off_diagonal: f64,
}

impl BellPopulations {
    pub fn as_array(&self) -> [f64; 4] {
        [self.psi_minus, self.psi_plus, self.phi_minus, self.phi_plus]
    }
}

pub fn bell_diagonal_populations(rho: &TwoQubit) -> BellPopulations {
    let b = bell_basis();
    let in_bell = b.adjoint() * rho.matrix() * b;
    let mut off = 0.0f64;
    for r in 0..4 {
        for c in 0..4 {
            if r != c {
                off = off.max(in_bell[(r, c)].norm());
            }
        }
    }
    BellPopulations {
        psi_minus: in_bell[(0, 0)].re,
        psi_plus: in_bell[(1, 1)].re,
        phi_minus: in_bell[(2, 2)].re,
        phi_plus: in_bell[(3, 3)].re,
        max_off_diagonal: off,
    }
}
