use std::f64::consts::PI;

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// An orthonormal basis stored as the columns of a unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    columns: CMatrix,
}

impl OrthonormalBasis {
    /// Validates that the columns of `u` are orthonormal within `tol`.
    pub fn from_matrix(u: CMatrix, tol: f64) -> Result<Self> {
        u.require_square()?;
        let deviation = (&u.adjoint() * &u).max_abs_diff(&CMatrix::identity(u.rows()));
        if deviation > tol {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { columns: u })
    }

    pub fn from_vectors(vectors: &[Vec<Complex64>], tol: f64) -> Result<Self> {
        Self::from_matrix(CMatrix::from_columns(vectors)?, tol)
    }

    pub(crate) fn from_matrix_unchecked(u: CMatrix) -> Self {
        Self { columns: u }
    }

    /// The incoherent (computational) basis `{|i>}`.
    pub fn incoherent(d: usize) -> Self {
        Self {
            columns: CMatrix::identity(d),
        }
    }

    /// Discrete Fourier basis, `F[i][α] = exp(2πi·α·i/d)/√d`; mutually unbiased
    /// with the incoherent basis.
    pub fn fourier(d: usize) -> Self {
        let norm = 1.0 / (d as f64).sqrt();
        let columns = CMatrix::from_fn(d, d, |i, a| {
            Complex64::from_polar(norm, 2.0 * PI * (a * i) as f64 / d as f64)
        });
        Self { columns }
    }

    pub fn dim(&self) -> usize {
        self.columns.rows()
    }

    pub fn vector(&self, alpha: usize) -> Vec<Complex64> {
        self.columns.column(alpha)
    }

    pub fn vectors(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim()).map(|a| self.vector(a)).collect()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.columns
    }

    pub fn into_matrix(self) -> CMatrix {
        self.columns
    }

    /// `|<φ_α|i>|²` as a `d x d` table indexed `[α][i]`.
    pub fn overlaps_with_incoherent(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        (0..d)
            .map(|a| (0..d).map(|i| self.columns[(i, a)].norm_sqr()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_is_unbiased_and_orthonormal() {
        for d in 2..=5 {
            let f = OrthonormalBasis::fourier(d);
            assert!(OrthonormalBasis::from_matrix(f.as_matrix().clone(), 1e-12).is_ok());
            for row in f.overlaps_with_incoherent() {
                for x in row {
                    assert!((x - 1.0 / d as f64).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn rejects_non_orthonormal() {
        let m = CMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            OrthonormalBasis::from_matrix(m, 1e-9),
            Err(Error::NotOrthonormal { .. })
        ));
    }
}
