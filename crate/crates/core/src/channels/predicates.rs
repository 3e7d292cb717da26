//! Classification predicates. All reduce, by linearity, to checks on the
//! matrix units `|j><k|` (coherence non-activation) or on the incoherent
//! projectors `|j><j|` (MIO, GIO, complete QDI non-generation).

use serde::Serialize;

use super::{trace_preservation_error, KrausChannel};
use crate::linalg::{dephase_all, CMatrix};

/// Largest entry of `Δ(Λ(E)) - Δ(Λ(Δ(E)))` over all matrix units `E`.
pub fn coherence_activation_deviation(ch: &KrausChannel) -> f64 {
    let d = ch.dim_in();
    let mut worst = 0.0f64;
    for j in 0..d {
        for k in 0..d {
            let unit = CMatrix::unit(d, j, k);
            let lhs = dephase_all(&ch.apply_matrix(&unit));
            let rhs = dephase_all(&ch.apply_matrix(&dephase_all(&unit)));
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    worst
}

/// `Δ∘Λ = Δ∘Λ∘Δ` within `tol`.
pub fn is_coherence_non_activating(ch: &KrausChannel, tol: f64) -> bool {
    coherence_activation_deviation(ch) <= tol
}

fn projector_images(ch: &KrausChannel) -> Vec<CMatrix> {
    let d = ch.dim_in();
    (0..d).map(|j| ch.apply_matrix(&CMatrix::unit(d, j, j))).collect()
}

/// Maps every incoherent state to an incoherent state.
pub fn is_mio(ch: &KrausChannel, tol: f64) -> bool {
    ch.dim_in() == ch.dim_out() && projector_images(ch).iter().all(|img| img.max_offdiag_abs() <= tol)
}

/// Fixes every incoherent state.
pub fn is_gio(ch: &KrausChannel, tol: f64) -> bool {
    ch.dim_in() == ch.dim_out()
        && projector_images(ch)
            .iter()
            .enumerate()
            .all(|(j, img)| img.max_abs_diff(&CMatrix::unit(ch.dim_in(), j, j)) <= tol)
}

/// Decides whether `ch` is a GIO channel composed with an incoherent
/// unitary, returning the permutation `σ` with `Λ(|j><j|) = |σ(j)><σ(j)|`.
pub fn is_completely_qdi_nongenerating(ch: &KrausChannel, tol: f64) -> (bool, Option<Vec<usize>>) {
    if ch.dim_in() != ch.dim_out() {
        return (false, None);
    }
    let d = ch.dim_in();
    let images = projector_images(ch);
    let mut sigma = Vec::with_capacity(d);
    let mut used = vec![false; d];
    for img in &images {
        let diag = img.real_diag();
        let target = (0..d).max_by(|&a, &b| diag[a].total_cmp(&diag[b])).expect("d >= 1");
        if used[target] || img.max_abs_diff(&CMatrix::unit(d, target, target)) > tol {
            return (false, None);
        }
        used[target] = true;
        sigma.push(target);
    }
    // phases of the incoherent unitary drop out on diagonal projectors
    let p = super::permutation_unitary(&sigma);
    let p_dag = p.adjoint();
    let conjugated_fixes = images
        .iter()
        .enumerate()
        .all(|(j, img)| (&(&p_dag * img) * &p).max_abs_diff(&CMatrix::unit(d, j, j)) <= tol);
    if conjugated_fixes {
        (true, Some(sigma))
    } else {
        (false, None)
    }
}

/// Every predicate at once.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelPanel {
    pub dim_in: usize,
    pub dim_out: usize,
    pub trace_preservation_error: f64,
    pub cptp: bool,
    pub coherence_non_activating: bool,
    pub mio: bool,
    pub gio: bool,
    pub completely_qdi_nongenerating: bool,
    pub permutation: Option<Vec<usize>>,
}

pub fn channel_panel(ch: &KrausChannel, tol: f64) -> ChannelPanel {
    let tp = trace_preservation_error(ch.kraus(), ch.dim_in());
    let square = ch.dim_in() == ch.dim_out();
    let (cqng, permutation) = is_completely_qdi_nongenerating(ch, tol);
    ChannelPanel {
        dim_in: ch.dim_in(),
        dim_out: ch.dim_out(),
        trace_preservation_error: tp,
        cptp: tp <= tol,
        coherence_non_activating: square && is_coherence_non_activating(ch, tol),
        mio: is_mio(ch, tol),
        gio: is_gio(ch, tol),
        completely_qdi_nongenerating: cqng,
        permutation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{dephasing, depolarizing, mio_not_io_qutrit, permutation_unitary, random_gio};
    use crate::states::rng_from_seed;
    use std::f64::consts::FRAC_1_SQRT_2;

    const TOL: f64 = 1e-9;

    fn hadamard() -> KrausChannel {
        let h = CMatrix::from_real(2, 2, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).unwrap();
        KrausChannel::unitary(h, 1e-12).unwrap()
    }

    #[test]
    fn dephasing_is_non_activating() {
        assert!(is_coherence_non_activating(&dephasing(3), TOL));
    }

    #[test]
    fn identity_channel_matrix_unit_oracle() {
        // Evaluate both sides by hand on every matrix unit: for j != k,
        // Δ(E_jk) = 0 and Δ(Δ(E_jk)) = 0; for j == k both equal E_jj.
        for d in 2..=3 {
            let mut max_dev = 0.0f64;
            for j in 0..d {
                for k in 0..d {
                    let e = CMatrix::unit(d, j, k);
                    let lhs = dephase_all(&e);
                    let rhs = dephase_all(&dephase_all(&e));
                    max_dev = max_dev.max(lhs.max_abs_diff(&rhs));
                }
            }
            assert_eq!(max_dev, 0.0);
            assert!(is_coherence_non_activating(&KrausChannel::identity(d), TOL));
        }
    }

    #[test]
    fn basis_rotation_activates_coherence() {
        // oracle: Δ(H E_01 H) = diag(1/2, -1/2) while Δ(H Δ(E_01) H) = 0
        let lhs = dephase_all(&hadamard().apply_matrix(&CMatrix::unit(2, 0, 1)));
        assert!((lhs[(0, 0)].re - 0.5).abs() < 1e-15 && (lhs[(1, 1)].re + 0.5).abs() < 1e-15);
        assert!(!is_coherence_non_activating(&hadamard(), TOL));
        assert!((coherence_activation_deviation(&hadamard()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mio_gio_cases() {
        assert!(is_mio(&dephasing(2), TOL) && is_gio(&dephasing(2), TOL));
        let q = mio_not_io_qutrit();
        assert!(is_mio(&q, TOL));
        assert!(!is_gio(&q, TOL));
        assert!(!is_mio(&hadamard(), TOL));
    }

    #[test]
    fn complete_qdi_nongeneration() {
        let mut rng = rng_from_seed(3);
        let g = random_gio(3, 3, &mut rng);
        assert_eq!(is_completely_qdi_nongenerating(&g, TOL), (true, Some(vec![0, 1, 2])));

        let sigma = vec![2, 0, 1];
        let p = KrausChannel::unitary(permutation_unitary(&sigma), 1e-12).unwrap();
        assert_eq!(is_completely_qdi_nongenerating(&p, TOL), (true, Some(sigma)));

        assert_eq!(
            is_completely_qdi_nongenerating(&depolarizing(2, 0.5).unwrap(), TOL),
            (false, None)
        );
        assert_eq!(
            is_completely_qdi_nongenerating(&mio_not_io_qutrit(), TOL),
            (false, None)
        );
        assert!(!is_completely_qdi_nongenerating(&hadamard(), TOL).0);
    }

    #[test]
    fn panel_for_qutrit_channel() {
        let panel = channel_panel(&mio_not_io_qutrit(), TOL);
        assert!(panel.cptp && panel.mio);
        assert!(!panel.gio && !panel.completely_qdi_nongenerating);
        assert_eq!(panel.permutation, None);
    }
}
