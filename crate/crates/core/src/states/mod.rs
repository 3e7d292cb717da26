//! Validated density matrices and state constructors.

mod named;
mod random;
mod zero_qdi;

pub use named::{activation, ghz, max_ent_pm, named_state, prop2_witness, w_state, NAMED_STATES};
pub use random::{random_density, random_density_with, random_unitary, random_unitary_with, rng_from_seed, Rng};
pub use zero_qdi::{build_zero_qdi_state, diagonal_support, ZeroQdiComponent, SUPPORT_THRESHOLD};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigenvalues, CMatrix, Dims, DEFAULT_TOL};

/// A quantum state: Hermitian, positive semidefinite, unit trace, annotated
/// with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    dims: Dims,
    tol: f64,
}

/// Checks every state invariant and returns the first violation found.
pub fn validate_density(m: CMatrix, dims: Dims, tol: f64) -> Result<DensityMatrix> {
    let n = m.require_square()?;
    if n != dims.total() {
        return Err(Error::DimMismatch {
            expected: dims.total(),
            found: n,
        });
    }
    let deviation = m.hermiticity_error();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let m = m.hermitian_part();
    let trace = m.trace().re;
    if (trace - 1.0).abs() > tol {
        return Err(Error::TraceNotOne { trace });
    }
    let min_eigenvalue = hermitian_eigenvalues(&m, tol)?.last().copied().unwrap_or(0.0);
    if min_eigenvalue < -tol {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(DensityMatrix { matrix: m, dims, tol })
}

impl DensityMatrix {
    /// Validates with the default tolerance.
    pub fn new(m: CMatrix, dims: Dims) -> Result<Self> {
        validate_density(m, dims, DEFAULT_TOL)
    }

    pub fn with_tol(m: CMatrix, dims: Dims, tol: f64) -> Result<Self> {
        validate_density(m, dims, tol)
    }

    /// Single-system state `[d]`.
    pub fn single(m: CMatrix) -> Result<Self> {
        let dims = Dims::single(m.rows())?;
        Self::new(m, dims)
    }

    /// `|ψ><ψ|` after normalizing `psi`.
    pub fn pure(psi: &[Complex64], dims: Dims) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(CMatrix::projector(&v), dims)
    }

    /// Skips validation for matrices that are states by construction
    /// (partial traces, dephasings, convex mixtures of states).
    pub(crate) fn trusted(matrix: CMatrix, dims: Dims, tol: f64) -> Self {
        debug_assert_eq!(matrix.rows(), dims.total());
        Self {
            matrix: matrix.hermitian_part(),
            dims,
            tol,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Same matrix under a different subsystem split (equal total dimension).
    pub fn with_dims(&self, dims: Dims) -> Result<Self> {
        if dims.total() != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found: dims.total(),
            });
        }
        Ok(Self {
            matrix: self.matrix.clone(),
            dims,
            tol: self.tol,
        })
    }

    /// Reduced state on `keep` (ascending subsystem order).
    pub fn reduced(&self, keep: &[usize]) -> Result<Self> {
        let keep = self.dims.check_group(keep)?;
        let m = linalg::partial_trace(&self.matrix, &self.dims, &keep)?;
        Ok(Self::trusted(m, self.dims.select(&keep), self.tol))
    }

    /// `Δ_targets ⊗ 1` applied to the state.
    pub fn dephased(&self, targets: &[usize]) -> Result<Self> {
        let m = linalg::dephase(&self.matrix, &self.dims, targets)?;
        Ok(Self::trusted(m, self.dims.clone(), self.tol))
    }

    /// Fully dephased state (diagonal part).
    pub fn dephased_all(&self) -> Self {
        Self::trusted(linalg::dephase_all(&self.matrix), self.dims.clone(), self.tol)
    }

    /// `ρ ⊗ σ`
    pub fn tensor(&self, other: &DensityMatrix) -> Self {
        Self::trusted(
            self.matrix.kron(&other.matrix),
            self.dims.concat(&other.dims),
            self.tol.max(other.tol),
        )
    }

    /// `U ρ U†` for a unitary `u` on the whole space.
    pub fn conjugate(&self, u: &CMatrix) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found: u.rows(),
            });
        }
        validate_density(&(u * &self.matrix) * &u.adjoint(), self.dims.clone(), self.tol)
    }

    /// Diagonal in the incoherent basis (real parts).
    pub fn populations(&self) -> Vec<f64> {
        self.matrix.real_diag()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximally_mixed_is_valid() {
        let m = CMatrix::identity(2).scale_real(0.5);
        assert!(DensityMatrix::new(m, Dims::single(2).unwrap()).is_ok());
    }

    #[test]
    fn negative_population_is_not_psd() {
        let m = CMatrix::from_real_diag(&[1.5, -0.5]);
        match DensityMatrix::single(m) {
            Err(Error::NotPsd { min_eigenvalue }) => assert!((min_eigenvalue + 0.5).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn excessive_coherence_is_not_psd() {
        let m = CMatrix::from_real(2, 2, &[0.5, 0.6, 0.6, 0.5]).unwrap();
        match DensityMatrix::single(m) {
            Err(Error::NotPsd { min_eigenvalue }) => assert!((min_eigenvalue + 0.1).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn other_violations() {
        let dims2 = Dims::single(2).unwrap();
        let not_herm = CMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]).unwrap();
        assert!(matches!(
            DensityMatrix::new(not_herm, dims2.clone()),
            Err(Error::NotHermitian { .. })
        ));
        let bad_trace = CMatrix::identity(2);
        assert!(matches!(
            DensityMatrix::new(bad_trace, dims2),
            Err(Error::TraceNotOne { .. })
        ));
        let wrong_dims = CMatrix::identity(2).scale_real(0.5);
        assert!(matches!(
            DensityMatrix::new(wrong_dims, Dims::new(vec![2, 2]).unwrap()),
            Err(Error::DimMismatch { .. })
        ));
    }
}
