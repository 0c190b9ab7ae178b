//! Fixed-size complex matrices and the Pauli algebra.

use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex64 as C64;

pub type ComplexMatrix<const N: usize> = SMatrix<C64, N, N>;
pub type Matrix2 = ComplexMatrix<2>;
pub type Matrix4 = ComplexMatrix<4>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    Identity,
    X,
    Y,
    Z,
}

impl PauliAxis {
    /// Identity, x, y, z in that order.
    pub const ALL: [PauliAxis; 4] = [PauliAxis::Identity, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn label(self) -> char {
        match self {
            PauliAxis::Identity => 'I',
            PauliAxis::X => 'x',
            PauliAxis::Y => 'y',
            PauliAxis::Z => 'z',
        }
    }
}

pub fn pauli(axis: PauliAxis) -> Matrix2 {
    match axis {
        PauliAxis::Identity => Matrix2::new(ONE, ZERO, ZERO, ONE),
        PauliAxis::X => Matrix2::new(ZERO, ONE, ONE, ZERO),
        PauliAxis::Y => Matrix2::new(ZERO, -I, I, ZERO),
        PauliAxis::Z => Matrix2::new(ONE, ZERO, ZERO, -ONE),
    }
}

/// Kronecker product with the blocks of `a` outermost, so qubit `a` is the
/// leftmost label in `|ab>`.
pub fn tensor(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// `u * m * u†`
pub fn conjugate<const N: usize>(u: &ComplexMatrix<N>, m: &ComplexMatrix<N>) -> ComplexMatrix<N> {
    u * m * u.adjoint()
}

pub fn hermitian_part<const N: usize>(m: &ComplexMatrix<N>) -> ComplexMatrix<N> {
    (m + m.adjoint()).scale(0.5)
}

/// Largest entry of `|m - m†|`.
pub fn hermiticity_residual<const N: usize>(m: &ComplexMatrix<N>) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn max_abs<const N: usize>(m: &ComplexMatrix<N>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff<const N: usize>(a: &ComplexMatrix<N>, b: &ComplexMatrix<N>) -> f64 {
    max_abs(&(a - b))
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues<const N: usize>(m: &ComplexMatrix<N>) -> Vec<f64> {
    let h = hermitian_part(m);
    let dynamic = DMatrix::from_fn(N, N, |r, c| h[(r, c)]);
    let mut values: Vec<f64> = dynamic.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Slightly negative eigenvalues from rounding are clamped to zero.
pub fn psd_sqrt<const N: usize>(m: &ComplexMatrix<N>) -> ComplexMatrix<N> {
    let h = hermitian_part(m);
    let dynamic = DMatrix::from_fn(N, N, |r, c| h[(r, c)]);
    let eig = dynamic.symmetric_eigen();
    let mut out = ComplexMatrix::<N>::zeros();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let root = lambda.max(0.0).sqrt();
        let v = eig.eigenvectors.column(k);
        for r in 0..N {
            for c in 0..N {
                out[(r, c)] += v[r] * v[c].conj() * root;
            }
        }
    }
    out
}

pub fn is_finite<const N: usize>(m: &ComplexMatrix<N>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}
