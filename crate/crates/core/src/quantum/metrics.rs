//! Distances between density matrices.

use super::linalg::psd_sqrt;
use super::state::{DensityMatrix, Kind};
use crate::{Error, Result};

/// `½ Σ |λ_k(ρ - σ)|`
pub fn trace_distance<const N: usize>(rho: &DensityMatrix<N>, sigma: &DensityMatrix<N>) -> f64 {
    let diff = rho.matrix() - sigma.matrix();
    super::linalg::hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>() / 2.0
}

/// Uhlmann fidelity `(Tr √(√ρ σ √ρ))²`. Reduces to `<ψ|σ|ψ>` when `ρ` is pure.
pub fn fidelity<const N: usize>(rho: &DensityMatrix<N>, sigma: &DensityMatrix<N>) -> Result<f64> {
    if rho.kind() != Kind::State || sigma.kind() != Kind::State {
        return Err(Error::Usage("fidelity is defined for normalized states only".into()));
    }
    let root = psd_sqrt(rho.matrix());
    let inner = root * sigma.matrix() * root;
    let t = psd_sqrt(&inner).trace().re;
    Ok(t * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::bell::{werner, WernerParams};
    use crate::quantum::state::{Qubit, StateVector, TwoQubit};

    #[test]
    fn distance_basics() {
        let zero = Qubit::pure(&StateVector::basis(0));
        let one = Qubit::pure(&StateVector::basis(1));
        assert!(trace_distance(&zero, &zero).abs() < 1e-15);
        assert!((trace_distance(&zero, &one) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fidelity_singlet_vs_mixed() {
        let singlet = werner(WernerParams::new(1.0).unwrap());
        let mixed = werner(WernerParams::new(0.0).unwrap());
        assert!((fidelity(&singlet, &mixed).unwrap() - 0.25).abs() < 1e-7);
        assert!((fidelity(&mixed, &mixed).unwrap() - 1.0).abs() < 1e-12);
        assert!(fidelity(&singlet.deviation_part(), &mixed).is_err());
        let _ = TwoQubit::maximally_mixed();
    }
}
