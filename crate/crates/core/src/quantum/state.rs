//! Density matrices, state vectors and Bloch vectors.

use nalgebra::SVector;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::linalg::{
    self, hermitian_eigenvalues, hermiticity_residual, ComplexMatrix, Matrix2, PauliAxis,
};
use crate::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Whether a matrix is a normalized state or the traceless deviation part of
/// a highly mixed state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    State,
    Deviation,
}

/// A Hermitian `N x N` density matrix, `N` being 2 (one qubit) or 4 (two).
///
/// Deviation matrices are never rescaled: every linear operation on them
/// propagates the amplitude unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<const N: usize> {
    matrix: ComplexMatrix<N>,
    kind: Kind,
}

pub type Qubit = DensityMatrix<2>;
pub type TwoQubit = DensityMatrix<4>;

impl<const N: usize> DensityMatrix<N> {
    /// Validates Hermiticity, trace and (for states) positivity.
    pub fn new(matrix: ComplexMatrix<N>, kind: Kind) -> Result<Self> {
        if N != 2 && N != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: N });
        }
        if !linalg::is_finite(&matrix) {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        let herm = hermiticity_residual(&matrix);
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidMatrix(format!("not Hermitian (residual {herm:e})")));
        }
        let trace = matrix.trace();
        let target = match kind {
            Kind::State => 1.0,
            Kind::Deviation => 0.0,
        };
        if (trace.re - target).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidMatrix(format!(
                "trace {} does not match {kind:?} (expected {target})",
                trace.re
            )));
        }
        if kind == Kind::State {
            let min = hermitian_eigenvalues(&matrix)[0];
            if min < -POSITIVITY_TOL {
                return Err(Error::InvalidMatrix(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(Self { matrix: linalg::hermitian_part(&matrix), kind })
    }

    pub fn state(matrix: ComplexMatrix<N>) -> Result<Self> {
        Self::new(matrix, Kind::State)
    }

    pub fn deviation(matrix: ComplexMatrix<N>) -> Result<Self> {
        Self::new(matrix, Kind::Deviation)
    }

    /// Wraps the output of a trace- and Hermiticity-preserving map. The
    /// result is re-symmetrized to drop rounding noise in the anti-Hermitian
    /// part; no other checks run.
    pub(crate) fn from_map_output(matrix: ComplexMatrix<N>, kind: Kind) -> Self {
        Self { matrix: linalg::hermitian_part(&matrix), kind }
    }

    /// The maximally mixed state `I/N`.
    pub fn maximally_mixed() -> Self {
        Self { matrix: ComplexMatrix::<N>::identity().scale(1.0 / N as f64), kind: Kind::State }
    }

    pub fn pure(psi: &StateVector<N>) -> Self {
        let v = psi.amplitudes();
        Self { matrix: v * v.adjoint(), kind: Kind::State }
    }

    pub fn matrix(&self) -> &ComplexMatrix<N> {
        &self.matrix
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// `u ρ u†`
    pub fn conjugated(&self, u: &ComplexMatrix<N>) -> Self {
        Self::from_map_output(linalg::conjugate(u, &self.matrix), self.kind)
    }

    /// Multiplies by a real factor. Only valid for deviation matrices, where
    /// the trace stays zero.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        match self.kind {
            Kind::Deviation => Ok(Self { matrix: self.matrix.scale(factor), kind: self.kind }),
            Kind::State => Err(Error::Usage("cannot rescale a normalized state".into())),
        }
    }

    /// The traceless part `ρ - Tr(ρ) I/N`, as a deviation matrix.
    pub fn deviation_part(&self) -> Self {
        let shift = self.matrix.trace() / N as f64;
        let m = self.matrix - ComplexMatrix::<N>::identity() * shift;
        Self { matrix: m, kind: Kind::Deviation }
    }

    /// `<ψ|ρ|ψ>`
    pub fn expectation(&self, psi: &StateVector<N>) -> f64 {
        let v = psi.amplitudes();
        (v.adjoint() * self.matrix * v)[(0, 0)].re
    }
}

/// A unit-norm pure state of one or two qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector<const N: usize> {
    amplitudes: SVector<C64, N>,
}

pub const NORM_TOL: f64 = 1e-12;

impl<const N: usize> StateVector<N> {
    pub fn new(amplitudes: SVector<C64, N>) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Domain(format!("state vector norm {norm} is not 1")));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(amplitudes: SVector<C64, N>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Domain("cannot normalize a zero vector".into()));
        }
        Ok(Self { amplitudes: amplitudes / C64::from(norm) })
    }

    /// Computational basis vector `|index>`.
    pub fn basis(index: usize) -> Self {
        let mut amplitudes = SVector::<C64, N>::zeros();
        amplitudes[index] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &SVector<C64, N> {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }
}

/// Expectation values of the three Pauli operators of a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// Components `Tr(ρ σ_α)`.
pub fn bloch_vector(rho: &Qubit) -> BlochVector {
    let comp = |axis| (rho.matrix() * linalg::pauli(axis)).trace().re;
    BlochVector::new(comp(PauliAxis::X), comp(PauliAxis::Y), comp(PauliAxis::Z))
}

/// `(I + r·σ)/2`. Fails if the vector lies outside the unit ball.
pub fn from_bloch(r: &BlochVector) -> Result<Qubit> {
    if r.norm() > 1.0 + POSITIVITY_TOL {
        return Err(Error::Domain(format!("Bloch vector of length {} exceeds 1", r.norm())));
    }
    let m: Matrix2 = (linalg::pauli(PauliAxis::Identity)
        + linalg::pauli(PauliAxis::X) * C64::from(r.x)
        + linalg::pauli(PauliAxis::Y) * C64::from(r.y)
        + linalg::pauli(PauliAxis::Z) * C64::from(r.z))
    .scale(0.5);
    Ok(DensityMatrix::from_map_output(m, Kind::State))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::linalg::{ONE, ZERO};
    use nalgebra::Vector2;

    #[test]
    fn rejects_bad_matrices() {
        let mut m = Matrix2::identity().scale(0.5);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(Qubit::state(m).is_err());

        let m = Matrix2::identity();
        assert!(Qubit::state(m).is_err());
        assert!(Qubit::deviation(m).is_err());

        let m = Matrix2::new(C64::new(1.5, 0.0), ZERO, ZERO, C64::new(-0.5, 0.0));
        assert!(matches!(Qubit::state(m), Err(Error::InvalidMatrix(_))));
        assert!(Qubit::deviation(linalg::pauli(PauliAxis::Z)).is_ok());
    }

    #[test]
    fn bloch_of_basis_and_mixed() {
        let zero = Qubit::pure(&StateVector::basis(0));
        assert_eq!(bloch_vector(&zero), BlochVector::new(0.0, 0.0, 1.0));
        let mixed = Qubit::maximally_mixed();
        assert_eq!(bloch_vector(&mixed), BlochVector::new(0.0, 0.0, 0.0));
    }

    #[test]
    fn from_bloch_rejects_long_vectors() {
        assert!(from_bloch(&BlochVector::new(1.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn normalization() {
        let v = StateVector::<2>::normalized(Vector2::new(ONE, ONE)).unwrap();
        assert!((v.amplitudes().norm() - 1.0).abs() < 1e-15);
        assert!(StateVector::<2>::new(Vector2::new(ONE, ONE)).is_err());
        assert!(StateVector::<2>::normalized(Vector2::zeros()).is_err());
    }
}
