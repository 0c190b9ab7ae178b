//! SU(2) rotations built from axis-angle or Euler parameters.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::quantum::linalg::{self, pauli, tensor, Matrix2, Matrix4, PauliAxis};
use crate::{Error, Result};

pub const AXIS_TOL: f64 = 1e-12;

/// `arccos(1/√3)`, the angle between a body diagonal of a cube and each
/// Cartesian axis.
pub fn magic_angle() -> f64 {
    (1.0 / 3.0f64.sqrt()).acos()
}

/// Rotation by `xi` radians about the unit vector `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisAngle {
    pub xi: f64,
    pub axis: [f64; 3],
}

impl AxisAngle {
    pub fn new(xi: f64, axis: Vector3<f64>) -> Result<Self> {
        let norm = axis.norm();
        if (norm - 1.0).abs() > AXIS_TOL {
            return Err(Error::Domain(format!("rotation axis has norm {norm}, expected 1")));
        }
        Ok(Self { xi, axis: [axis.x, axis.y, axis.z] })
    }

    /// Axis from tilt `theta` (from +z) and azimuth `phi`.
    pub fn from_spherical(xi: f64, theta: f64, phi: f64) -> Self {
        let axis = spherical_axis(theta.cos(), phi);
        Self { xi, axis: [axis.x, axis.y, axis.z] }
    }

    pub fn about(xi: f64, axis: Cartesian) -> Self {
        let v = axis.unit();
        Self { xi, axis: [v.x, v.y, v.z] }
    }

    pub fn axis(&self) -> Vector3<f64> {
        Vector3::new(self.axis[0], self.axis[1], self.axis[2])
    }
}

/// Unit vector with `cos θ = cos_theta` and azimuth `phi`.
pub fn spherical_axis(cos_theta: f64, phi: f64) -> Vector3<f64> {
    let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
    Vector3::new(sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cartesian {
    X,
    Y,
    Z,
}

impl Cartesian {
    pub fn unit(self) -> Vector3<f64> {
        match self {
            Cartesian::X => Vector3::x(),
            Cartesian::Y => Vector3::y(),
            Cartesian::Z => Vector3::z(),
        }
    }
}

/// `R_z(φ)`, then `R_y(θ)`, then `R_z(ξ)` in time order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerTriple {
    pub phi: f64,
    pub theta: f64,
    pub xi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    AxisAngle(AxisAngle),
    Euler(EulerTriple),
    /// Product of several rotations.
    Composite,
}

/// A 2x2 special-unitary matrix together with the parameters it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary {
    matrix: Matrix2,
    provenance: Provenance,
}

impl Unitary {
    pub fn identity() -> Self {
        axis_angle_unitary(&AxisAngle::about(0.0, Cartesian::Z))
    }

    /// Wraps an arbitrary unitary, removing its global phase so that
    /// `det = 1`. Fails if `m` is not unitary to 1e-12.
    pub fn from_matrix(m: Matrix2) -> Result<Self> {
        let residual = linalg::max_abs(&(m * m.adjoint() - Matrix2::identity()));
        if residual > 1e-12 {
            return Err(Error::InvalidMatrix(format!("not unitary (residual {residual:e})")));
        }
        let det = m.determinant();
        let phase = C64::from_polar(1.0, -det.arg() / 2.0);
        Ok(Self { matrix: m * phase, provenance: Provenance::Composite })
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `self` acts first, then `next`.
    pub fn then(&self, next: &Unitary) -> Unitary {
        Unitary { matrix: next.matrix * self.matrix, provenance: Provenance::Composite }
    }

    /// Composes rotations listed in time order.
    pub fn sequence<'a>(steps: impl IntoIterator<Item = &'a Unitary>) -> Unitary {
        steps.into_iter().fold(Unitary::identity(), |acc, u| acc.then(u))
    }

    pub fn adjoint(&self) -> Unitary {
        Unitary { matrix: self.matrix.adjoint(), provenance: Provenance::Composite }
    }

    /// The 3x3 rotation `R_ab = ½ Tr(σ_a U σ_b U†)` acting on Bloch vectors.
    pub fn bloch_rotation(&self) -> Matrix3<f64> {
        let sig = [pauli(PauliAxis::X), pauli(PauliAxis::Y), pauli(PauliAxis::Z)];
        let rotated: Vec<Matrix2> = sig.iter().map(|s| linalg::conjugate(&self.matrix, s)).collect();
        Matrix3::from_fn(|a, b| 0.5 * (sig[a] * rotated[b]).trace().re)
    }

    /// Whether `self` and `other` agree up to a global phase.
    pub fn same_action(&self, other: &Unitary, tol: f64) -> bool {
        (self.bloch_rotation() - other.bloch_rotation()).amax() <= tol
    }

    /// Rotation angle in `[0, π]` of the equivalent SO(3) rotation.
    pub fn rotation_angle(&self) -> f64 {
        let half = (self.matrix.trace().re / 2.0).abs().min(1.0);
        2.0 * half.acos()
    }
}

/// `exp(-i ξ (n·σ)/2)`
pub fn axis_angle_unitary(a: &AxisAngle) -> Unitary {
    let n = a.axis();
    let (s, c) = (a.xi / 2.0).sin_cos();
    let generator = pauli(PauliAxis::X) * C64::from(n.x)
        + pauli(PauliAxis::Y) * C64::from(n.y)
        + pauli(PauliAxis::Z) * C64::from(n.z);
    let matrix = Matrix2::identity() * C64::from(c) - generator * C64::new(0.0, s);
    Unitary { matrix, provenance: Provenance::AxisAngle(*a) }
}

/// Checked constructor: rejects non-unit axes.
pub fn rotation(xi: f64, axis: Vector3<f64>) -> Result<Unitary> {
    Ok(axis_angle_unitary(&AxisAngle::new(xi, axis)?))
}

pub fn rotation_about(xi: f64, axis: Cartesian) -> Unitary {
    axis_angle_unitary(&AxisAngle::about(xi, axis))
}

/// Time order `R_z(φ) R_y(θ) R_z(ξ)`; as a matrix `U_z(ξ) U_y(θ) U_z(φ)`.
pub fn euler_unitary(e: &EulerTriple) -> Unitary {
    let u = Unitary::sequence(&[
        rotation_about(e.phi, Cartesian::Z),
        rotation_about(e.theta, Cartesian::Y),
        rotation_about(e.xi, Cartesian::Z),
    ]);
    Unitary { matrix: u.matrix, provenance: Provenance::Euler(*e) }
}

/// `u ⊗ u`
pub fn bilateral(u: &Unitary) -> Matrix4 {
    tensor(u.matrix(), u.matrix())
}

/// Normalizes an angle into `[0, 2π)`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU { 0.0 } else { r }
}

pub const HALF_TURN: f64 = PI;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::bell::{bell_state, singlet_projector, BellKind};
    use crate::quantum::linalg::max_abs_diff;
    use crate::quantum::state::{Qubit, StateVector};

    #[test]
    fn zero_angle_is_identity() {
        for axis in [Vector3::x(), Vector3::new(0.6, 0.0, 0.8)] {
            let u = rotation(0.0, axis).unwrap();
            assert!(max_abs_diff(u.matrix(), &Matrix2::identity()) < 1e-15);
        }
    }

    #[test]
    fn half_turn_is_pauli() {
        let u = rotation_about(PI, Cartesian::Z);
        // exp(-iπσz/2) = -iσz
        let expected = pauli(PauliAxis::Z) * C64::new(0.0, -1.0);
        assert!(max_abs_diff(u.matrix(), &expected) < 1e-15);
        let z = Unitary::from_matrix(pauli(PauliAxis::Z)).unwrap();
        assert!(u.same_action(&z, 1e-15));
    }

    #[test]
    fn full_turn_is_minus_identity() {
        let u = rotation_about(TAU, Cartesian::X);
        assert!(max_abs_diff(u.matrix(), &(-Matrix2::identity())) < 1e-15);
        assert!(u.same_action(&Unitary::identity(), 1e-15));
    }

    #[test]
    fn rejects_non_unit_axis() {
        assert!(rotation(1.0, Vector3::new(1.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn euler_reductions() {
        let id = euler_unitary(&EulerTriple { phi: 0.0, theta: 0.0, xi: 0.0 });
        assert!(max_abs_diff(id.matrix(), &Matrix2::identity()) < 1e-15);
        let e = euler_unitary(&EulerTriple { phi: 0.0, theta: 0.7, xi: 0.0 });
        assert!(max_abs_diff(e.matrix(), rotation_about(0.7, Cartesian::Y).matrix()) < 1e-15);
    }

    #[test]
    fn euler_matches_stepwise_conjugation() {
        let (phi, theta, xi) = (0.4, 1.1, 2.5);
        let e = euler_unitary(&EulerTriple { phi, theta, xi });
        let rho = Qubit::pure(&StateVector::basis(0));
        let direct = rho.conjugated(e.matrix());
        let stepwise = rho
            .conjugated(rotation_about(phi, Cartesian::Z).matrix())
            .conjugated(rotation_about(theta, Cartesian::Y).matrix())
            .conjugated(rotation_about(xi, Cartesian::Z).matrix());
        assert!(max_abs_diff(direct.matrix(), stepwise.matrix()) < 1e-12);
    }

    #[test]
    fn bilateral_identity_and_singlet() {
        assert!(max_abs_diff(&bilateral(&Unitary::identity()), &Matrix4::identity()) < 1e-15);
        let u = rotation(1.3, Vector3::new(0.48, 0.6, 0.64)).unwrap();
        let b = bilateral(&u);
        let p = singlet_projector();
        assert!(max_abs_diff(&(b * p * b.adjoint()), &p) < 1e-14);
    }

    #[test]
    fn bilateral_half_turn_keeps_phi_plus() {
        let b = bilateral(&rotation_about(PI, Cartesian::X));
        let phi = bell_state(BellKind::PhiPlus);
        let out = b * phi.amplitudes();
        let overlap = phi.amplitudes().dotc(&out);
        assert!((overlap.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn magic_angle_identities() {
        let m = magic_angle();
        assert!((m - 0.955_316_618_124_509_3).abs() < 1e-15);
        assert!((m.to_degrees() - 54.7356).abs() < 1e-4);
        assert!((m.cos().powi(2) - 1.0 / 3.0).abs() < 1e-15);
        assert!((m.tan() - 2.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn bloch_rotation_sense() {
        // +90° about x takes +z to -y.
        let r = rotation_about(PI / 2.0, Cartesian::X).bloch_rotation();
        let out = r * Vector3::z();
        assert!((out - Vector3::new(0.0, -1.0, 0.0)).amax() < 1e-15);
    }
}
