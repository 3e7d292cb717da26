//! Kraus channels, incoherent-operation predicates and the example channels.

mod activation;
mod library;
mod predicates;
mod random;

pub use activation::{activation_demo, activation_expected_state, ActivationReport};
pub use library::{dephasing, depolarizing, library_channel, mio_not_io_qutrit, weyl_operators, LIBRARY_CHANNELS};
pub use predicates::{
    channel_panel, coherence_activation_deviation, is_coherence_non_activating, is_completely_qdi_nongenerating,
    is_gio, is_mio, ChannelPanel,
};
pub use random::{
    permutation_unitary, random_channel, random_coherence_non_activating, random_gio, random_incoherent_unitary,
    random_permutation,
};

use crate::error::{Error, Result};
use crate::linalg::io::{ChannelDoc, MatrixDoc};
use crate::linalg::{lift_on_subsystem, CMatrix, Dims, DEFAULT_TOL};
use crate::states::{validate_density, DensityMatrix};

/// A CPTP map `ρ ↦ Σ_l K_l ρ K_l†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kraus: Vec<CMatrix>,
    dim_in: usize,
    dim_out: usize,
    tol: f64,
}

impl KrausChannel {
    /// Checks shapes and `Σ K†K = 1` within `tol`.
    pub fn new(kraus: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidParameter("no Kraus operators".into()))?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        for k in &kraus {
            if k.rows() != dim_out || k.cols() != dim_in {
                return Err(Error::DimMismatch {
                    expected: dim_out * dim_in,
                    found: k.rows() * k.cols(),
                });
            }
        }
        let deviation = trace_preservation_error(&kraus, dim_in);
        if deviation > tol {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self {
            kraus,
            dim_in,
            dim_out,
            tol,
        })
    }

    pub(crate) fn trusted(kraus: Vec<CMatrix>) -> Self {
        let (dim_out, dim_in) = (kraus[0].rows(), kraus[0].cols());
        Self {
            kraus,
            dim_in,
            dim_out,
            tol: DEFAULT_TOL,
        }
    }

    pub fn from_doc(doc: &ChannelDoc, tol: f64) -> Result<Self> {
        let kraus = doc.kraus.iter().map(MatrixDoc::to_matrix).collect::<Result<Vec<_>>>()?;
        let ch = Self::new(kraus, tol)?;
        if ch.dim_in != doc.dim_in || ch.dim_out != doc.dim_out {
            return Err(Error::Parse(format!(
                "declared {}->{} but Kraus operators are {}->{}",
                doc.dim_in, doc.dim_out, ch.dim_in, ch.dim_out
            )));
        }
        Ok(ch)
    }

    pub fn to_doc(&self) -> ChannelDoc {
        ChannelDoc {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            kraus: self.kraus.iter().map(MatrixDoc::from_matrix).collect(),
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::trusted(vec![CMatrix::identity(d)])
    }

    /// `ρ ↦ U ρ U†`; `u` must be unitary within `tol`.
    pub fn unitary(u: CMatrix, tol: f64) -> Result<Self> {
        Self::new(vec![u], tol)
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Linear action on an arbitrary operator.
    pub fn apply_matrix(&self, x: &CMatrix) -> CMatrix {
        assert_eq!(x.rows(), self.dim_in, "input dimension mismatch");
        let mut out = CMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = &out + &(&(k * x) * &k.adjoint());
        }
        out
    }

    /// `Σ_l K_l ρ K_l†`, revalidated.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim_in {
            return Err(Error::DimMismatch {
                expected: self.dim_in,
                found: rho.dim(),
            });
        }
        let dims = if self.dim_in == self.dim_out {
            rho.dims().clone()
        } else {
            Dims::single(self.dim_out)?
        };
        validate_density(self.apply_matrix(rho.matrix()), dims, rho.tol().max(self.tol))
    }

    /// `1 ⊗ Λ ⊗ 1` with `Λ` acting on subsystem `target`.
    pub fn apply_on_subsystem(&self, rho: &DensityMatrix, target: usize) -> Result<DensityMatrix> {
        let mut out: Option<(CMatrix, Dims)> = None;
        for k in &self.kraus {
            let (lifted, dims) = lift_on_subsystem(k, rho.dims(), target)?;
            let term = &(&lifted * rho.matrix()) * &lifted.adjoint();
            out = Some(match out {
                None => (term, dims),
                Some((acc, dims)) => (&acc + &term, dims),
            });
        }
        let (m, dims) = out.expect("at least one Kraus operator");
        validate_density(m, dims, rho.tol().max(self.tol))
    }

    /// Heisenberg-picture map `Λ*(X) = Σ_l K_l† X K_l`.
    pub fn adjoint_apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.rows() != self.dim_out || x.cols() != self.dim_out {
            return Err(Error::DimMismatch {
                expected: self.dim_out,
                found: x.rows(),
            });
        }
        let mut out = CMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            out = &out + &(&(&k.adjoint() * x) * k);
        }
        Ok(out)
    }

    /// `self ∘ first`: applies `first`, then `self`.
    pub fn compose(&self, first: &KrausChannel) -> Result<KrausChannel> {
        if first.dim_out != self.dim_in {
            return Err(Error::DimMismatch {
                expected: self.dim_in,
                found: first.dim_out,
            });
        }
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| first.kraus.iter().map(move |b| a * b))
            .collect();
        Ok(Self {
            kraus,
            dim_in: first.dim_in,
            dim_out: self.dim_out,
            tol: self.tol.max(first.tol),
        })
    }
}

/// Max deviation of `Σ K†K` from the identity.
pub fn trace_preservation_error(kraus: &[CMatrix], dim_in: usize) -> f64 {
    let mut total = CMatrix::zeros(dim_in, dim_in);
    for k in kraus {
        total = &total + &(&k.adjoint() * k);
    }
    total.max_abs_diff(&CMatrix::identity(dim_in))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dephase;
    use crate::states::{random_density, random_density_with, rng_from_seed};

    #[test]
    fn identity_leaves_state() {
        let rho = random_density(3, 4);
        assert_eq!(KrausChannel::identity(3).apply(&rho).unwrap().matrix(), rho.matrix());
    }

    #[test]
    fn full_depolarization() {
        let ch = depolarizing(2, 0.0).unwrap();
        for seed in 0..10 {
            let out = ch.apply(&random_density(2, seed)).unwrap();
            assert!(out.matrix().max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < 1e-14);
        }
    }

    #[test]
    fn dephasing_on_subsystem_matches_dephase() {
        let dims = Dims::new(vec![2, 3]).unwrap();
        let mut rng = rng_from_seed(8);
        for _ in 0..10 {
            let rho = random_density_with(&dims, &mut rng);
            let via_channel = dephasing(2).apply_on_subsystem(&rho, 0).unwrap();
            let direct = dephase(rho.matrix(), &dims, &[0]).unwrap();
            assert!(via_channel.matrix().max_abs_diff(&direct) < 1e-14);
            let via_channel = dephasing(3).apply_on_subsystem(&rho, 1).unwrap();
            let direct = dephase(rho.matrix(), &dims, &[1]).unwrap();
            assert!(via_channel.matrix().max_abs_diff(&direct) < 1e-14);
        }
    }

    #[test]
    fn adjoint_is_unital_and_dual() {
        let mut rng = rng_from_seed(21);
        for _ in 0..20 {
            let ch = random_channel(3, 3, 3, &mut rng);
            assert!(ch.adjoint_apply(&CMatrix::identity(3)).unwrap().is_identity(1e-10));
            let rho = random_density_with(&Dims::single(3).unwrap(), &mut rng);
            let x = random_density_with(&Dims::single(3).unwrap(), &mut rng).into_matrix();
            let lhs = ch.apply(&rho).unwrap().matrix().trace_product(&x);
            let rhs = rho.matrix().trace_product(&ch.adjoint_apply(&x).unwrap());
            assert!((lhs - rhs).norm() < 1e-10);
        }
        let x = random_density(2, 3).into_matrix();
        assert_eq!(KrausChannel::identity(2).adjoint_apply(&x).unwrap(), x);
    }

    #[test]
    fn rejects_non_trace_preserving() {
        let k = CMatrix::identity(2).scale_real(0.9);
        assert!(matches!(
            KrausChannel::new(vec![k], 1e-9),
            Err(Error::NotTracePreserving { .. })
        ));
        assert!(KrausChannel::new(vec![], 1e-9).is_err());
    }

    #[test]
    fn dimension_errors() {
        let rho = random_density(3, 1);
        assert!(KrausChannel::identity(2).apply(&rho).is_err());
        assert!(KrausChannel::identity(2).apply_on_subsystem(&rho, 0).is_err());
        assert!(KrausChannel::identity(3).apply_on_subsystem(&rho, 1).is_err());
    }

    #[test]
    fn rectangular_channel_changes_dims() {
        // trace-and-prepare: qutrit -> qubit |0><0|
        let kraus: Vec<CMatrix> = (0..3)
            .map(|j| {
                let mut k = CMatrix::zeros(2, 3);
                k[(0, j)] = crate::Complex64::new(1.0, 0.0);
                k
            })
            .collect();
        let ch = KrausChannel::new(kraus, 1e-12).unwrap();
        let rho = random_density(2, 1).tensor(&random_density(3, 2));
        let out = ch.apply_on_subsystem(&rho, 1).unwrap();
        assert_eq!(out.dims().as_slice(), &[2, 2]);
        assert_eq!(ch.apply(&random_density(3, 5)).unwrap().dims().as_slice(), &[2]);
    }

    #[test]
    fn doc_roundtrip() {
        let ch = mio_not_io_qutrit();
        let json = serde_json::to_string(&ch.to_doc()).unwrap();
        let back = KrausChannel::from_doc(&serde_json::from_str(&json).unwrap(), 1e-12).unwrap();
        assert_eq!((back.dim_in(), back.dim_out()), (3, 3));
        assert_eq!(back.kraus(), ch.kraus());
    }
}
