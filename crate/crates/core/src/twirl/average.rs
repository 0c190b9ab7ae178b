//! Averaging density matrices over rotation sets.

use rayon::prelude::*;

use crate::quantum::bell::werner_projection;
use crate::quantum::linalg::{conjugate, tensor, ComplexMatrix};
use crate::quantum::state::{DensityMatrix, TwoQubit};
use crate::rotations::{realize, RotationSetSpec, WeightedSet};
use crate::{Error, Result};

use super::superop::CHUNK;
use super::Mode;

/// `Σ_k w_k U_k ρ U_k†`, with `U_k` acting on one qubit (`Local`) or as
/// `U_k ⊗ U_k` on two (`Bilateral`). Trace and Hermiticity are preserved.
pub fn average_over<const N: usize>(
    rho: &DensityMatrix<N>,
    set: &WeightedSet,
    mode: Mode,
) -> Result<DensityMatrix<N>> {
    if N != mode.hilbert_dim() {
        return Err(Error::DimensionMismatch { expected: mode.hilbert_dim(), found: N });
    }
    let lift = |u: &crate::rotations::Unitary| -> ComplexMatrix<N> {
        match mode {
            Mode::Local => ComplexMatrix::<N>::from_fn(|r, c| u.matrix()[(r, c)]),
            Mode::Bilateral => {
                let b = tensor(u.matrix(), u.matrix());
                ComplexMatrix::<N>::from_fn(|r, c| b[(r, c)])
            }
        }
    };
    let partials: Vec<ComplexMatrix<N>> = set
        .elements
        .par_chunks(CHUNK)
        .map(|chunk| {
            chunk.iter().fold(ComplexMatrix::<N>::zeros(), |acc, (w, u)| {
                acc + conjugate(&lift(u), rho.matrix()).scale(*w)
            })
        })
        .collect();
    let total = partials.into_iter().fold(ComplexMatrix::<N>::zeros(), |acc, p| acc + p);
    Ok(DensityMatrix::from_map_output(total, rho.kind()))
}

pub fn average<const N: usize>(
    rho: &DensityMatrix<N>,
    spec: &RotationSetSpec,
    mode: Mode,
) -> Result<DensityMatrix<N>> {
    if N != mode.hilbert_dim() {
        return Err(Error::DimensionMismatch { expected: mode.hilbert_dim(), found: N });
    }
    average_over(rho, &realize(spec)?, mode)
}

/// The exact bilateral twirl, `werner(ε)` with `ε = (4F - 1)/3` for a state.
/// Deviation matrices map to `(4F/3)(|Ψ⁻><Ψ⁻| - I/4)`.
pub fn exact_twirl(rho: &TwoQubit) -> TwoQubit {
    werner_projection(rho)
}
