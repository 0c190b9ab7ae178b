//! Random states for tests and demonstrations.

use nalgebra::SVector;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::linalg::ComplexMatrix;
use super::state::{DensityMatrix, Kind, StateVector};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn random_pure<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> StateVector<N> {
    loop {
        let v = SVector::<C64, N>::from_fn(|_, _| gaussian(rng));
        if let Ok(s) = StateVector::normalized(v) {
            return s;
        }
    }
}

/// Full-rank mixed state `G G† / Tr(G G†)` from a complex Ginibre matrix.
pub fn random_state<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix<N> {
    let g = ComplexMatrix::<N>::from_fn(|_, _| gaussian(rng));
    let m = g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_map_output(m.unscale(tr), Kind::State)
}
