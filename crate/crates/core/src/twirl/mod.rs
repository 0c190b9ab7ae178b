//! Averaging engine: applies rotation sets locally or bilaterally, builds
//! channel transfer matrices and classifies the result.

pub mod average;
pub mod classify;
pub mod superop;

pub use average::{average, average_over, exact_twirl};
pub use classify::{bloch_shrink, classify, classify_with_tolerance, default_tolerance, reference_twirl, TwirlReport};
pub use superop::{exact_twirl_superoperator, superoperator, superoperator_of_set, Superoperator};

use serde::Serialize;

/// Whether a rotation acts on a single qubit or identically on both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Local,
    Bilateral,
}

impl Mode {
    pub fn hilbert_dim(self) -> usize {
        match self {
            Mode::Local => 2,
            Mode::Bilateral => 4,
        }
    }

    pub fn superoperator_dim(self) -> usize {
        match self {
            Mode::Local => 4,
            Mode::Bilateral => 16,
        }
    }
}
