use super::{is_incoherent, Povm};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// A common parent for an incoherent POVM and the incoherent projectors,
/// with the classical post-processing kernels that regenerate each child.
#[derive(Debug, Clone)]
pub struct ParentMeasurement {
    /// The incoherent projectors `{|k><k|}`.
    pub parent: Povm,
    /// `child_kernel[j][k] = p(j|k)`, the `k`-th diagonal entry of `M_j`.
    pub child_kernel: Vec<Vec<f64>>,
    /// Identity kernel regenerating the projectors.
    pub projector_kernel: Vec<Vec<f64>>,
}

fn post_process(parent: &Povm, kernel: &[Vec<f64>]) -> Vec<CMatrix> {
    kernel
        .iter()
        .map(|row| {
            parent
                .elements()
                .iter()
                .zip(row)
                .fold(CMatrix::zeros(parent.dim(), parent.dim()), |acc, (g, &p)| {
                    &acc + &g.scale_real(p)
                })
        })
        .collect()
}

impl ParentMeasurement {
    pub fn reconstruct_child(&self) -> Vec<CMatrix> {
        post_process(&self.parent, &self.child_kernel)
    }

    pub fn reconstruct_projectors(&self) -> Vec<CMatrix> {
        post_process(&self.parent, &self.projector_kernel)
    }
}

/// Joint-measurability certificate between `m` and the incoherent projectors.
///
/// Exists exactly when `m` is incoherent; otherwise returns
/// [`Error::NotIncoherent`].
pub fn parent_measurement(m: &Povm) -> Result<ParentMeasurement> {
    let (ok, worst_offdiag) = is_incoherent(m, m.tol());
    if !ok {
        return Err(Error::NotIncoherent { worst_offdiag });
    }
    let d = m.dim();
    let child_kernel = m.elements().iter().map(CMatrix::real_diag).collect();
    let projector_kernel = (0..d)
        .map(|j| (0..d).map(|k| if j == k { 1.0 } else { 0.0 }).collect())
        .collect();
    Ok(ParentMeasurement {
        parent: Povm::incoherent_projectors(d),
        child_kernel,
        projector_kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::OrthonormalBasis;
    use crate::measurement::random_incoherent_povm;
    use crate::states::rng_from_seed;

    fn assert_column_stochastic(kernel: &[Vec<f64>]) {
        let d = kernel[0].len();
        for k in 0..d {
            let col: f64 = kernel.iter().map(|row| row[k]).sum();
            assert!((col - 1.0).abs() < 1e-12);
            assert!(kernel.iter().all(|row| row[k] >= -1e-12));
        }
    }

    #[test]
    fn two_outcome_diagonal() {
        let a = [0.2, 0.9, 0.5];
        let m0 = CMatrix::from_real_diag(&a);
        let m1 = CMatrix::from_real_diag(&a.map(|x| 1.0 - x));
        let pm = parent_measurement(&Povm::new(vec![m0, m1], 1e-12).unwrap()).unwrap();
        assert_eq!(pm.child_kernel[0], a.to_vec());
        for (x, y) in pm.child_kernel[1].iter().zip(a) {
            assert!((x - (1.0 - y)).abs() < 1e-15);
        }
        assert_column_stochastic(&pm.child_kernel);
    }

    #[test]
    fn projectors_have_identity_kernels() {
        let pm = parent_measurement(&Povm::incoherent_projectors(3)).unwrap();
        assert_eq!(pm.child_kernel, pm.projector_kernel);
        for (j, row) in pm.child_kernel.iter().enumerate() {
            for (k, &x) in row.iter().enumerate() {
                assert_eq!(x, if j == k { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn random_incoherent_reconstruction() {
        let mut rng = rng_from_seed(17);
        for n in 2..=6 {
            for d in 2..=3 {
                let m = random_incoherent_povm(d, n, &mut rng);
                let pm = parent_measurement(&m).unwrap();
                assert_column_stochastic(&pm.child_kernel);
                for (rebuilt, orig) in pm.reconstruct_child().iter().zip(m.elements()) {
                    assert!(rebuilt.max_abs_diff(orig) < 1e-12);
                }
                for (k, p) in pm.reconstruct_projectors().iter().enumerate() {
                    assert!(p.max_abs_diff(&CMatrix::unit(d, k, k)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn coherent_povm_has_no_parent() {
        let m = Povm::projective(&OrthonormalBasis::fourier(2));
        assert!(matches!(parent_measurement(&m), Err(Error::NotIncoherent { .. })));
    }
}
