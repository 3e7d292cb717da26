//! Incoherent (coherence non-activating) measurements, coherence witnesses,
//! and discord based on incoherent measurements.
//!
//! The incoherent basis is always the computational basis of each subsystem.
//! Entropies are in bits.

pub mod channels;
pub mod discord;
pub mod error;
pub mod info;
pub mod linalg;
pub mod measurement;
pub mod repro;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{CMatrix, Dims, OrthonormalBasis};
pub use states::DensityMatrix;

/// Re-export so downstream code does not need a direct dependency.
pub use num_complex::Complex64;
