use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::DensityMatrix;
use crate::linalg::{CMatrix, Dims, DEFAULT_TOL};

/// Seeded generator used throughout; ChaCha output is platform independent.
pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_normal(rng: &mut Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn ginibre(rows: usize, cols: usize, rng: &mut Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Hilbert–Schmidt random state `G G† / tr(G G†)` on the given dimensions.
pub fn random_density_with(dims: &Dims, rng: &mut Rng) -> DensityMatrix {
    let n = dims.total();
    let g = ginibre(n, n, rng);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::trusted(gg.scale_real(1.0 / tr), dims.clone(), DEFAULT_TOL)
}

pub fn random_density(d: usize, seed: u64) -> DensityMatrix {
    let dims = Dims::single(d).expect("d >= 2");
    random_density_with(&dims, &mut rng_from_seed(seed))
}

/// Haar unitary: modified Gram–Schmidt on a complex Ginibre matrix. The
/// triangular factor's diagonal comes out real and positive, which fixes the
/// column phases.
pub fn random_unitary_with(d: usize, rng: &mut Rng) -> CMatrix {
    let g = ginibre(d, d, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..d).map(|j| g.column(j)).collect();
    for j in 0..d {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let q = &done[k];
            let proj: Complex64 = q.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in rest[0].iter_mut().zip(q) {
                *x -= proj * y;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    CMatrix::from_columns(&cols).expect("square by construction")
}

pub fn random_unitary(d: usize, seed: u64) -> CMatrix {
    random_unitary_with(d, &mut rng_from_seed(seed))
}
