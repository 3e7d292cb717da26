//! Seeded samplers for channel corpora used by the property suites.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use super::{dephasing, KrausChannel};
use crate::linalg::CMatrix;
use crate::states::{random_unitary_with, Rng};

/// Random channel from a Haar isometry: the first `dim_in` columns of a
/// random unitary on `dim_out · kraus_count`, cut into `kraus_count` blocks.
pub fn random_channel(dim_in: usize, dim_out: usize, kraus_count: usize, rng: &mut Rng) -> KrausChannel {
    let big = dim_out * kraus_count;
    assert!(big >= dim_in, "environment too small for an isometry");
    let u = random_unitary_with(big, rng);
    let kraus = (0..kraus_count)
        .map(|l| CMatrix::from_fn(dim_out, dim_in, |i, j| u[(l * dim_out + i, j)]))
        .collect();
    KrausChannel::trusted(kraus)
}

/// Random genuinely incoherent channel: diagonal Kraus operators rescaled by
/// `(Σ K†K)^{-1/2}`, which is itself diagonal.
pub fn random_gio(d: usize, kraus_count: usize, rng: &mut Rng) -> KrausChannel {
    let raw: Vec<Vec<Complex64>> = (0..kraus_count)
        .map(|_| {
            (0..d)
                .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                .collect()
        })
        .collect();
    let norms: Vec<f64> = (0..d)
        .map(|i| raw.iter().map(|k| k[i].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let kraus = raw
        .iter()
        .map(|k| CMatrix::from_diag(&k.iter().zip(&norms).map(|(z, n)| z / n).collect::<Vec<_>>()))
        .collect();
    KrausChannel::trusted(kraus)
}

pub fn random_permutation(d: usize, rng: &mut Rng) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..d).collect();
    sigma.shuffle(rng);
    sigma
}

/// `P|j> = |σ(j)>`
pub fn permutation_unitary(sigma: &[usize]) -> CMatrix {
    let d = sigma.len();
    let mut p = CMatrix::zeros(d, d);
    for (j, &s) in sigma.iter().enumerate() {
        p[(s, j)] = Complex64::new(1.0, 0.0);
    }
    p
}

/// Permutation with random phases.
pub fn random_incoherent_unitary(d: usize, rng: &mut Rng) -> CMatrix {
    let phases: Vec<Complex64> = (0..d)
        .map(|_| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.gen::<f64>()))
        .collect();
    &permutation_unitary(&random_permutation(d, rng)) * &CMatrix::from_diag(&phases)
}

/// Channel satisfying `Δ∘Λ = Δ∘Λ∘Δ`, drawn from one of two families:
/// an arbitrary channel preceded by complete dephasing, or a GIO channel
/// followed by an incoherent unitary.
pub fn random_coherence_non_activating(d: usize, rng: &mut Rng) -> KrausChannel {
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=d);
        random_channel(d, d, k, rng)
            .compose(&dephasing(d))
            .expect("dimensions agree")
    } else {
        let k = rng.gen_range(1..=3);
        let gio = random_gio(d, k, rng);
        let u = KrausChannel::trusted(vec![random_incoherent_unitary(d, rng)]);
        u.compose(&gio).expect("dimensions agree")
    }
}
