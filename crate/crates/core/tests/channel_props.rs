use proptest::prelude::*;

use incoh_core::channels::{
    channel_panel, depolarizing, is_coherence_non_activating, is_completely_qdi_nongenerating, is_gio,
    mio_not_io_qutrit, permutation_unitary, random_channel, random_gio, random_incoherent_unitary,
    trace_preservation_error, KrausChannel,
};
use incoh_core::discord::qdi_value;
use incoh_core::repro::{prop2_vectors, qdi_creation};
use incoh_core::states::{activation, prop2_witness, random_density_with, rng_from_seed};
use incoh_core::{CMatrix, Dims};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjoint_is_dual_to_action(d in 2usize..=3, k in 1usize..=4, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let ch = random_channel(d, d, k, &mut rng);
        let x = random_density_with(&Dims::single(d).unwrap(), &mut rng).into_matrix();
        let y = random_density_with(&Dims::single(d).unwrap(), &mut rng).into_matrix();
        let lhs = ch.apply_matrix(&x).trace_product(&y);
        let rhs = x.trace_product(&ch.adjoint_apply(&y).unwrap());
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn random_channels_preserve_states(d in 2usize..=3, k in 1usize..=4, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let ch = random_channel(d, d, k, &mut rng);
        prop_assert!(trace_preservation_error(ch.kraus(), d) < 1e-12);
        let rho = random_density_with(&Dims::single(d).unwrap(), &mut rng);
        prop_assert!(ch.apply(&rho).is_ok());
    }

    #[test]
    fn incoherent_unitary_after_gio_is_recognised(d in 2usize..=4, k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let gio = random_gio(d, k, &mut rng);
        prop_assert!(is_gio(&gio, 1e-12));
        let u = random_incoherent_unitary(d, &mut rng);
        let ch = KrausChannel::unitary(u.clone(), 1e-12).unwrap().compose(&gio).unwrap();
        let (ok, sigma) = is_completely_qdi_nongenerating(&ch, 1e-9);
        prop_assert!(ok);
        // σ must reproduce the unitary's action on basis projectors
        let sigma = sigma.unwrap();
        let p = permutation_unitary(&sigma);
        for j in 0..d {
            let image = &(&u * &CMatrix::unit(d, j, j)) * &u.adjoint();
            prop_assert!(image.max_abs_diff(&(&(&p * &CMatrix::unit(d, j, j)) * &p.adjoint())) < 1e-12);
        }
        prop_assert!(is_coherence_non_activating(&ch, 1e-10));
    }

    #[test]
    fn gio_never_creates_discord_on_the_witness_state(k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let ch = random_gio(3, k, &mut rng);
        let rho = prop2_witness(&prop2_vectors(3)).unwrap();
        prop_assert!(qdi_creation(&ch, &rho).unwrap() <= 1e-9);
    }
}

#[test]
fn witness_states_start_without_discord() {
    for d in 2..=3 {
        let rho = prop2_witness(&prop2_vectors(d)).unwrap();
        assert!(qdi_value(&rho, &[0, 1]).unwrap().abs() < 1e-10, "d={d}");
    }
    assert!(qdi_value(&activation(), &[0, 1]).unwrap().abs() < 1e-10);
}

#[test]
fn rejected_channels_create_discord_on_the_witness_state() {
    let dep = depolarizing(2, 0.5).unwrap();
    assert!(!is_completely_qdi_nongenerating(&dep, 1e-9).0);
    assert!(qdi_creation(&dep, &prop2_witness(&prop2_vectors(2)).unwrap()).unwrap() > 1e-6);

    let q = mio_not_io_qutrit();
    assert!(!is_completely_qdi_nongenerating(&q, 1e-9).0);
    assert!(qdi_creation(&q, &prop2_witness(&prop2_vectors(3)).unwrap()).unwrap() > 1e-6);
}

#[test]
fn qutrit_channel_cannot_create_discord_from_disjoint_supports() {
    // the part of the claim that does hold: zero-QDI inputs stay at zero
    use incoh_core::states::{build_zero_qdi_state, ZeroQdiComponent};
    use incoh_core::DensityMatrix;
    let mut rng = rng_from_seed(17);
    let b = Dims::single(2).unwrap();
    for _ in 0..20 {
        let small = random_density_with(&b, &mut rng);
        let mut a01 = CMatrix::zeros(3, 3);
        for i in 0..2 {
            for j in 0..2 {
                a01[(i, j)] = small.matrix()[(i, j)];
            }
        }
        let comps = [
            ZeroQdiComponent {
                rho_a: DensityMatrix::new(a01, Dims::single(3).unwrap()).unwrap(),
                rho_b: random_density_with(&b, &mut rng),
                weight: 0.6,
            },
            ZeroQdiComponent {
                rho_a: DensityMatrix::new(CMatrix::unit(3, 2, 2), Dims::single(3).unwrap()).unwrap(),
                rho_b: random_density_with(&b, &mut rng),
                weight: 0.4,
            },
        ];
        let rho = build_zero_qdi_state(&comps).unwrap();
        let after = mio_not_io_qutrit().apply_on_subsystem(&rho, 0).unwrap();
        assert!(qdi_value(&after, &[0]).unwrap().abs() < 1e-9);
    }
}

#[test]
fn qutrit_panel() {
    let p = channel_panel(&mio_not_io_qutrit(), 1e-9);
    assert!(p.cptp && p.mio && !p.gio && !p.completely_qdi_nongenerating);
}
