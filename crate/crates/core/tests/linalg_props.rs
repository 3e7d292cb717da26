use proptest::prelude::*;

use incoh_core::linalg::{dephase, hermitian_eig, hermitian_eigenvalues, partial_trace};
use incoh_core::states::{random_density_with, random_unitary_with, rng_from_seed};
use incoh_core::{CMatrix, Dims};

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=3, 2..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_commutes_with_dephasing_kept_systems(dims in dims_strategy(), seed in any::<u64>()) {
        let dims = Dims::new(dims).unwrap();
        let rho = random_density_with(&dims, &mut rng_from_seed(seed));
        let keep = [0usize, dims.len() - 1];
        let kept = dims.select(&keep);
        // dephasing subsystem 0 before or after tracing out the middle
        let a = partial_trace(&dephase(rho.matrix(), &dims, &[0]).unwrap(), &dims, &keep).unwrap();
        let b = dephase(&partial_trace(rho.matrix(), &dims, &keep).unwrap(), &kept, &[0]).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn product_state_marginals_round_trip(dims in dims_strategy(), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let parts: Vec<_> = dims
            .iter()
            .map(|&d| random_density_with(&Dims::single(d).unwrap(), &mut rng))
            .collect();
        let product = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.tensor(p));
        let all = Dims::new(dims.clone()).unwrap();
        for (k, part) in parts.iter().enumerate() {
            let marginal = partial_trace(product.matrix(), &all, &[k]).unwrap();
            prop_assert!(marginal.max_abs_diff(part.matrix()) < 1e-12);
        }
    }

    #[test]
    fn density_spectra_are_nonnegative(dims in dims_strategy(), seed in any::<u64>()) {
        let rho = random_density_with(&Dims::new(dims).unwrap(), &mut rng_from_seed(seed));
        let w = hermitian_eigenvalues(rho.matrix(), 1e-12).unwrap();
        prop_assert!(w.iter().all(|&x| x >= -1e-9));
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigendecomposition_of_conjugated_diagonal(n in 1usize..=8, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let values: Vec<f64> = (0..n).map(|k| (k as f64) - 2.5).collect();
        let u = if n == 1 { CMatrix::identity(1) } else { random_unitary_with(n, &mut rng) };
        let h = &(&u * &CMatrix::from_real_diag(&values)) * &u.adjoint();
        let e = hermitian_eig(&h, 1e-10).unwrap();
        let mut expected = values.clone();
        expected.sort_by(|a, b| b.total_cmp(a));
        for (got, want) in e.values.iter().zip(&expected) {
            prop_assert!((got - want).abs() < 1e-10);
        }
        prop_assert!((&e.reconstruct() - &h).frobenius_norm() < 1e-10);
        let v = e.vectors.as_matrix();
        prop_assert!((&v.adjoint() * v).is_identity(1e-10));
    }

    #[test]
    fn haar_unitaries_are_unitary(n in 2usize..=6, seed in any::<u64>()) {
        let u = random_unitary_with(n, &mut rng_from_seed(seed));
        prop_assert!((&u.adjoint() * &u).is_identity(1e-12));
    }
}

#[test]
fn kron_dimensions_and_trace() {
    let a = CMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
    let b = CMatrix::identity(3);
    let k = a.kron(&b);
    assert_eq!((k.rows(), k.cols()), (6, 6));
    assert_eq!(k.trace().re, 15.0);
    assert_eq!(k[(3, 0)].re, 3.0);
}
