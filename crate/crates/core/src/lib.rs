//! Averaging schemes and twirl operations for one and two qubits, together
//! with a small ensemble simulator for a weakly coupled two-spin NMR system.
//!
//! The crate is organised bottom-up:
//!
//! * [`quantum`]: fixed-size complex matrices, canonical states, metrics.
//! * [`rotations`]: SU(2) rotations and the named averaging sets.
//! * [`twirl`]: channel averaging, Pauli-transfer superoperators, classification.
//! * [`nmr`]: pulse programs, spin ensembles, FIDs, spectra and the two
//!   staged twirl experiments.

pub mod error;
pub mod nmr;
pub mod quantum;
pub mod rotations;
pub mod twirl;

pub use error::{Error, Result};
