//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then annihilates the resulting real 2x2 block with a real Givens
//! rotation. Sweeps continue until the off-diagonal Frobenius norm drops below
//! the convergence tolerance.

use num_complex::Complex64;

use super::basis::OrthonormalBasis;
use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Off-diagonal convergence threshold for Jacobi sweeps.
pub const DEFAULT_CONVERGENCE_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `h = V diag(values) V†` with values in descending order.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: OrthonormalBasis,
}

impl HermitianEigen {
    /// `V diag(w) V†`
    pub fn reconstruct(&self) -> CMatrix {
        let v = self.vectors.as_matrix();
        let w = CMatrix::from_real_diag(&self.values);
        &(v * &w) * &v.adjoint()
    }

    /// Applies `f` to the eigenvalues: `V diag(f(w)) V†`.
    pub fn map_values(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let v = self.vectors.as_matrix();
        let w = CMatrix::from_diag(&self.values.iter().map(|&x| f(x)).collect::<Vec<_>>());
        &(v * &w) * &v.adjoint()
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// `tol` bounds the accepted deviation from Hermiticity; the anti-Hermitian
/// residue is discarded before iterating.
pub fn hermitian_eig(h: &CMatrix, tol: f64) -> Result<HermitianEigen> {
    hermitian_eig_with(h, tol, DEFAULT_CONVERGENCE_TOL)
}

pub fn hermitian_eig_with(h: &CMatrix, tol: f64, convergence_tol: f64) -> Result<HermitianEigen> {
    let n = h.require_square()?;
    let deviation = h.hermiticity_error();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let (values, vectors) = jacobi(h.hermitian_part(), n, convergence_tol, true);
    let vectors = vectors.expect("eigenvectors requested");

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = CMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    Ok(HermitianEigen {
        values: sorted_values,
        vectors: OrthonormalBasis::from_matrix_unchecked(sorted_vectors),
    })
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(h: &CMatrix, tol: f64) -> Result<Vec<f64>> {
    let n = h.require_square()?;
    let deviation = h.hermiticity_error();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let (mut values, _) = jacobi(h.hermitian_part(), n, DEFAULT_CONVERGENCE_TOL, false);
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

fn off_diagonal_norm(a: &CMatrix, n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(mut a: CMatrix, n: usize, convergence_tol: f64, want_vectors: bool) -> (Vec<f64>, Option<CMatrix>) {
    let mut v = want_vectors.then(|| CMatrix::identity(n));
    let threshold = convergence_tol * a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a[(p, q)];
                let modulus = b.norm();
                if modulus < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = b / modulus;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * modulus);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // J = diag(.., 1_p, .., e^{-iφ}_q, ..) · Givens(c, s)
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;

                rotate_columns(&mut a, n, p, q, jpp, jpq, jqp, jqq);
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                if let Some(v) = v.as_mut() {
                    rotate_columns(v, n, p, q, jpp, jpq, jqp, jqq);
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

#[allow(clippy::too_many_arguments)]
#[inline]
fn rotate_columns(
    m: &mut CMatrix,
    n: usize,
    p: usize,
    q: usize,
    jpp: Complex64,
    jpq: Complex64,
    jqp: Complex64,
    jqq: Complex64,
) {
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mkp * jpp + mkq * jqp;
        m[(k, q)] = mkp * jpq + mkq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::inner;

    #[test]
    fn diagonal_input_sorted_descending() {
        let h = CMatrix::from_real_diag(&[3.0, 1.0, 2.0]);
        let e = hermitian_eig(&h, 1e-12).unwrap();
        assert_eq!(e.values, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pauli_x() {
        let x = CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = hermitian_eig(&x, 1e-12).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [Complex64::new(s, 0.0), Complex64::new(s, 0.0)];
        let minus = [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)];
        // equal up to a global phase
        assert!((inner(&plus, &e.vectors.vector(0)).norm() - 1.0).abs() < 1e-12);
        assert!((inner(&minus, &e.vectors.vector(1)).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_pivot_reconstructs() {
        let h = CMatrix::from_vec(
            3,
            3,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.3, 0.7),
                Complex64::new(-0.2, 0.1),
                Complex64::new(0.3, -0.7),
                Complex64::new(-0.5, 0.0),
                Complex64::new(0.0, 1.3),
                Complex64::new(-0.2, -0.1),
                Complex64::new(0.0, -1.3),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eig(&h, 1e-12).unwrap();
        let err = (&e.reconstruct() - &h).frobenius_norm();
        assert!(err < 1e-12, "{err:e}");
        let v = e.vectors.as_matrix();
        assert!((&v.adjoint() * v).is_identity(1e-12));
        let trace: f64 = e.values.iter().sum();
        assert!((trace - 2.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&m, 1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn degenerate_spectrum() {
        let e = hermitian_eig(&CMatrix::identity(4), 1e-12).unwrap();
        assert!(e.values.iter().all(|&w| (w - 1.0).abs() < 1e-15));
    }
}
