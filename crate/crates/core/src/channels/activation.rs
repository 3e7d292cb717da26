//! A channel that cannot create QDI on its own can do so when run in
//! parallel with an identity channel: qubit depolarizing noise on A of the
//! zero-QDI state `ρ_{AA′B}` creates discord on the `AA′ | B` cut.

use serde::Serialize;

use super::depolarizing;
use crate::discord::qdi_value;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::states::activation;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActivationReport {
    pub p: f64,
    pub qdi_before: f64,
    pub qdi_after: f64,
    /// Max entry deviation of the evolved state from the closed form.
    pub state_deviation: f64,
}

/// Closed form of `(Λ_dep ⊗ 1 ⊗ 1)(ρ_{AA′B})`:
///
/// ```text
/// ½[p|00><00| + (1-p)(1/2)⊗|0><0|]⊗|0><0|
///   + ¼[p(|01>+|10>)(<01|+<10|) + (1-p)(1/2)⊗1]⊗|1><1|
/// ```
pub fn activation_expected_state(p: f64) -> CMatrix {
    let half_id = CMatrix::identity(2).scale_real(0.5);
    let ket0 = CMatrix::unit(2, 0, 0);
    let ket1 = CMatrix::unit(2, 1, 1);

    let branch0 = &CMatrix::unit(4, 0, 0).scale_real(p) + &half_id.kron(&ket0).scale_real(1.0 - p);
    let mut psi = CMatrix::zeros(4, 4);
    for i in [0b01, 0b10] {
        for j in [0b01, 0b10] {
            psi[(i, j)] = crate::Complex64::new(1.0, 0.0);
        }
    }
    let branch1 = &psi.scale_real(p) + &half_id.kron(&CMatrix::identity(2)).scale_real(1.0 - p);
    &branch0.kron(&ket0).scale_real(0.5) + &branch1.kron(&ket1).scale_real(0.25)
}

/// QDI on `AA′ | B` before and after depolarizing A with parameter
/// `p ∈ (0, 1]`.
pub fn activation_demo(p: f64) -> Result<ActivationReport> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "activation parameter {p} outside (0, 1]"
        )));
    }
    let rho = activation();
    let qdi_before = qdi_value(&rho, &[0, 1])?;
    let evolved = depolarizing(2, p)?.apply_on_subsystem(&rho, 0)?;
    let state_deviation = evolved.matrix().max_abs_diff(&activation_expected_state(p));
    let qdi_after = qdi_value(&evolved, &[0, 1])?;
    Ok(ActivationReport {
        p,
        qdi_before,
        qdi_after,
        state_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_is_a_state() {
        for p in [0.0, 0.3, 1.0] {
            let m = activation_expected_state(p);
            assert!((m.trace().re - 1.0).abs() < 1e-15);
            assert!(m.is_psd(1e-12));
        }
    }

    #[test]
    fn evolved_state_matches_closed_form() {
        for p in [0.25, 0.5, 0.75, 1.0] {
            let r = activation_demo(p).unwrap();
            assert!(r.state_deviation < 1e-12, "p={p}: {}", r.state_deviation);
            assert!(r.qdi_before.abs() < 1e-9);
        }
    }

    #[test]
    fn parameter_range() {
        assert!(activation_demo(0.0).is_err());
        assert!(activation_demo(1.5).is_err());
        assert!(activation_demo(f64::NAN).is_err());
    }
}
