//! Constructive family of states with vanishing incoherent-measurement
//! discord: `Σ_j w_j ρ_A^j ⊗ ρ_B^j` where the `ρ_A^j` are perfectly
//! distinguishable by the incoherent projective measurement.
//!
//! Incoherent measurement statistics only see the diagonal of `ρ_A^j`, so
//! perfect discrimination is possible exactly when the diagonal supports are
//! pairwise disjoint. That is the criterion checked here.

use std::collections::BTreeSet;

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// A diagonal entry counts as support when it exceeds this value.
pub const SUPPORT_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ZeroQdiComponent {
    pub rho_a: DensityMatrix,
    pub rho_b: DensityMatrix,
    pub weight: f64,
}

/// Indices `i` with `<i|ρ|i> > SUPPORT_THRESHOLD`.
pub fn diagonal_support(rho: &DensityMatrix) -> BTreeSet<usize> {
    rho.populations()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > SUPPORT_THRESHOLD)
        .map(|(i, _)| i)
        .collect()
}

pub fn build_zero_qdi_state(components: &[ZeroQdiComponent]) -> Result<DensityMatrix> {
    let first = components
        .first()
        .ok_or_else(|| Error::InvalidParameter("no components".into()))?;
    let sum: f64 = components.iter().map(|c| c.weight).sum();
    if components.iter().any(|c| c.weight < 0.0 || !c.weight.is_finite()) || (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NotADistribution { sum });
    }
    for c in components {
        if c.rho_a.dims() != first.rho_a.dims() {
            return Err(Error::DimMismatch {
                expected: first.rho_a.dim(),
                found: c.rho_a.dim(),
            });
        }
        if c.rho_b.dims() != first.rho_b.dims() {
            return Err(Error::DimMismatch {
                expected: first.rho_b.dim(),
                found: c.rho_b.dim(),
            });
        }
    }
    let supports: Vec<_> = components.iter().map(|c| diagonal_support(&c.rho_a)).collect();
    for i in 0..supports.len() {
        for j in (i + 1)..supports.len() {
            if !supports[i].is_disjoint(&supports[j]) {
                return Err(Error::OverlappingSupports { first: i, second: j });
            }
        }
    }
    let dims = first.rho_a.dims().concat(first.rho_b.dims());
    let n = dims.total();
    let m = components.iter().fold(CMatrix::zeros(n, n), |acc, c| {
        &acc + &c.rho_a.matrix().kron(c.rho_b.matrix()).scale_real(c.weight)
    });
    DensityMatrix::with_tol(m, dims, first.rho_a.tol())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_vector, Dims};
    use crate::states::random_density;

    fn proj(d: usize, i: usize) -> DensityMatrix {
        DensityMatrix::pure(&basis_vector(d, i), Dims::single(d).unwrap()).unwrap()
    }

    #[test]
    fn incoherent_quantum_state_accepted() {
        let comps = [
            ZeroQdiComponent {
                rho_a: proj(2, 0),
                rho_b: random_density(2, 1),
                weight: 0.3,
            },
            ZeroQdiComponent {
                rho_a: proj(2, 1),
                rho_b: random_density(2, 2),
                weight: 0.7,
            },
        ];
        let rho = build_zero_qdi_state(&comps).unwrap();
        assert_eq!(rho.dims().as_slice(), &[2, 2]);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_block_plus_disjoint_level_accepted() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus01 = [s, s, 0.0].map(|x| crate::Complex64::new(x, 0.0));
        let a0 = DensityMatrix::pure(&plus01, Dims::single(3).unwrap()).unwrap();
        let comps = [
            ZeroQdiComponent {
                rho_a: a0,
                rho_b: random_density(2, 3),
                weight: 0.5,
            },
            ZeroQdiComponent {
                rho_a: proj(3, 2),
                rho_b: random_density(2, 4),
                weight: 0.5,
            },
        ];
        assert!(build_zero_qdi_state(&comps).is_ok());
    }

    #[test]
    fn overlapping_supports_rejected() {
        let comps = [
            ZeroQdiComponent {
                rho_a: random_density(2, 5),
                rho_b: random_density(2, 6),
                weight: 0.5,
            },
            ZeroQdiComponent {
                rho_a: random_density(2, 7),
                rho_b: random_density(2, 8),
                weight: 0.5,
            },
        ];
        assert!(matches!(
            build_zero_qdi_state(&comps),
            Err(Error::OverlappingSupports { first: 0, second: 1 })
        ));
    }

    #[test]
    fn bad_weights_rejected() {
        let comps = [
            ZeroQdiComponent {
                rho_a: proj(2, 0),
                rho_b: proj(2, 0),
                weight: 0.6,
            },
            ZeroQdiComponent {
                rho_a: proj(2, 1),
                rho_b: proj(2, 1),
                weight: 0.6,
            },
        ];
        assert!(matches!(
            build_zero_qdi_state(&comps),
            Err(Error::NotADistribution { .. })
        ));
        assert!(build_zero_qdi_state(&[]).is_err());
    }
}
