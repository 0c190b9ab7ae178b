//! Rotations, rotation sequences and the averaging sets built from them.

pub mod quadrature;
pub mod realize;
pub mod set;
pub mod unitary;

pub use realize::{enumerate, realize, sample, WeightedSet};
pub use set::{Axis, RotationSetSpec, Sampling, Variant};
pub use unitary::{
    axis_angle_unitary, bilateral, euler_unitary, magic_angle, rotation, rotation_about,
    AxisAngle, Cartesian, EulerTriple, Provenance, Unitary,
};
