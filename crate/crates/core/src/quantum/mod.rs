//! Linear algebra, canonical states and state-level metrics for one and two
//! qubits.

pub mod bell;
pub mod linalg;
pub mod metrics;
pub mod product_ops;
pub mod random;
pub mod state;

pub use bell::{
    bell_basis, bell_diagonal_populations, bell_state, is_werner, singlet_fidelity,
    singlet_projector, werner, werner_projection, werner_residual, BellKind, BellPopulations,
    WernerParams,
};
pub use linalg::{pauli, tensor, ComplexMatrix, Matrix2, Matrix4, PauliAxis};
pub use metrics::{fidelity, trace_distance};
pub use random::{random_pure, random_state};
pub use product_ops::{product_operator_decomposition, ProductOperator, ProductOperatorCoefficients};
pub use state::{bloch_vector, from_bloch, BlochVector, DensityMatrix, Kind, Qubit, StateVector, TwoQubit};
