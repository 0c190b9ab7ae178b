//! Two-spin NMR simulation: pulse programs, ensembles and acquisition.

pub mod acquisition;
pub mod ensemble;
pub mod experiments;
pub mod sequence;
pub mod system;
