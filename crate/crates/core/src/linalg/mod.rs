//! Dense complex linear algebra.

pub mod basis;
pub mod eig;
pub mod io;
pub mod matrix;
pub mod subsystems;

pub use basis::OrthonormalBasis;
pub use eig::{hermitian_eig, hermitian_eigenvalues, HermitianEigen};
pub use matrix::{basis_vector, inner, kron_vec, tensor_product, CMatrix};
pub use subsystems::{dephase, dephase_all, embed_on_group, lift_on_subsystem, partial_trace, Dims};

/// Tolerance used by validity predicates unless the caller overrides it.
pub const DEFAULT_TOL: f64 = 1e-9;
