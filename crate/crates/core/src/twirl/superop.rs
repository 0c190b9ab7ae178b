//! Pauli-transfer superoperators.

use nalgebra::{DMatrix, Matrix4 as RealMatrix4};
use rayon::prelude::*;

use crate::quantum::linalg::{pauli, tensor, Matrix2, Matrix4, PauliAxis};
use crate::rotations::{realize, RotationSetSpec, Unitary, WeightedSet};
use crate::Result;

use super::Mode;

/// Chunk length for parallel sums. Partial sums are combined in chunk
/// order, so results do not depend on the thread count.
pub(crate) const CHUNK: usize = 1024;

/// Real Pauli-transfer matrix of a channel over the orthonormal basis
/// `σ_a/√2` (one qubit, 4x4) or `σ_a⊗σ_b/2` (two qubits, 16x16, index
/// `4a + b`). Column `k` is the image of basis operator `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    mode: Mode,
    matrix: DMatrix<f64>,
}

impl Superoperator {
    pub fn identity(mode: Mode) -> Self {
        let d = mode.superoperator_dim();
        Self { mode, matrix: DMatrix::identity(d, d) }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Largest entrywise difference. Panics if the modes differ.
    pub fn max_abs_diff(&self, other: &Superoperator) -> f64 {
        assert_eq!(self.mode, other.mode, "comparing superoperators of different size");
        (&self.matrix - &other.matrix).amax()
    }

    /// Deviation of the first row from `(1, 0, ..., 0)`.
    pub fn trace_preservation_residual(&self) -> f64 {
        self.matrix
            .row(0)
            .iter()
            .enumerate()
            .map(|(k, v)| if k == 0 { (v - 1.0).abs() } else { v.abs() })
            .fold(0.0, f64::max)
    }

    /// Applies the channel to the basis operator with index `k` and returns
    /// the resulting two-qubit operator.
    pub fn image_of_basis(&self, k: usize) -> Matrix4 {
        assert_eq!(self.mode, Mode::Bilateral);
        let basis = two_qubit_pauli_basis();
        (0..16).fold(Matrix4::zeros(), |acc, j| acc + basis[j].scale(self.matrix[(j, k)]))
    }

    /// 3x3 block acting on Bloch vectors of a single-qubit channel.
    pub fn bloch_block(&self) -> nalgebra::Matrix3<f64> {
        assert_eq!(self.mode, Mode::Local);
        nalgebra::Matrix3::from_fn(|r, c| self.matrix[(r + 1, c + 1)])
    }
}

/// `σ_a ⊗ σ_b / 2` for `a, b ∈ {1, x, y, z}`, index `4a + b`.
pub fn two_qubit_pauli_basis() -> Vec<Matrix4> {
    let p: Vec<Matrix2> = PauliAxis::ALL.iter().map(|a| pauli(*a)).collect();
    let mut out = Vec::with_capacity(16);
    for a in &p {
        for b in &p {
            out.push(tensor(a, b).scale(0.5));
        }
    }
    out
}

/// Single-qubit transfer matrix `½ Tr(σ_a U σ_b U†)`, block diagonal
/// `[1, 0; 0, R]`.
pub fn unitary_ptm(u: &Unitary) -> RealMatrix4<f64> {
    let r = u.bloch_rotation();
    let mut m = RealMatrix4::zeros();
    m[(0, 0)] = 1.0;
    m.fixed_view_mut::<3, 3>(1, 1).copy_from(&r);
    m
}

fn accumulate(acc: &mut [f64], weight: f64, ptm: &RealMatrix4<f64>, mode: Mode) {
    match mode {
        Mode::Local => {
            for r in 0..4 {
                for c in 0..4 {
                    acc[r * 4 + c] += weight * ptm[(r, c)];
                }
            }
        }
        // PTM(U⊗U) = PTM(U) ⊗ PTM(U)
        Mode::Bilateral => {
            for a in 0..4 {
                for c in 0..4 {
                    let wac = weight * ptm[(a, c)];
                    if wac == 0.0 {
                        continue;
                    }
                    for b in 0..4 {
                        let row = (4 * a + b) * 16 + 4 * c;
                        for d in 0..4 {
                            acc[row + d] += wac * ptm[(b, d)];
                        }
                    }
                }
            }
        }
    }
}

pub fn superoperator_of_set(set: &WeightedSet, mode: Mode) -> Superoperator {
    let d = mode.superoperator_dim();
    let partials: Vec<Vec<f64>> = set
        .elements
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; d * d];
            for (w, u) in chunk {
                accumulate(&mut acc, *w, &unitary_ptm(u), mode);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; d * d];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    Superoperator { mode, matrix: DMatrix::from_row_slice(d, d, &total) }
}

/// Transfer matrix of the averaging channel described by `spec`.
pub fn superoperator(spec: &RotationSetSpec, mode: Mode) -> Result<Superoperator> {
    Ok(superoperator_of_set(&realize(spec)?, mode))
}

/// Analytic transfer matrix of the exact two-qubit twirl: it keeps the
/// identity and `-Σ σ_α⊗σ_α / (2√3)` directions and annihilates the rest.
pub fn exact_twirl_superoperator() -> Superoperator {
    let mut m = DMatrix::zeros(16, 16);
    m[(0, 0)] = 1.0;
    for a in 1..4 {
        for b in 1..4 {
            m[(5 * a, 5 * b)] = 1.0 / 3.0;
        }
    }
    Superoperator { mode: Mode::Bilateral, matrix: m }
}
