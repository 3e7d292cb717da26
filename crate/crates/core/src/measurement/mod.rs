//! POVMs, incoherence detection and the coherent-measurement witness.

mod assignment;
mod parent;
mod witness;

pub use assignment::max_weight_assignment;
pub use parent::{parent_measurement, ParentMeasurement};
pub use witness::{
    best_assignment, optimize_witness, optimize_witness_with, witness_value, WitnessReport, WitnessSearch,
    CERTIFICATION_THRESHOLD,
};

pub use crate::linalg::OrthonormalBasis;

use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::info::Bipartition;
use crate::linalg::io::{MatrixDoc, PovmDoc};
use crate::linalg::{embed_on_group, partial_trace, CMatrix, DEFAULT_TOL};
use crate::states::{validate_density, DensityMatrix, Rng};

/// Outcomes below this probability carry no conditional state.
pub const NULL_OUTCOME_PROBABILITY: f64 = 1e-12;

/// Positive operators summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<CMatrix>,
    dim: usize,
    tol: f64,
}

impl Povm {
    pub fn new(elements: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let dim = elements
            .first()
            .ok_or_else(|| Error::InvalidParameter("POVM has no elements".into()))?
            .require_square()?;
        for e in &elements {
            let n = e.require_square()?;
            if n != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: n,
                });
            }
            let deviation = e.hermiticity_error();
            if deviation > tol {
                return Err(Error::NotHermitian { deviation });
            }
            let min = crate::linalg::hermitian_eigenvalues(&e.hermitian_part(), tol)?
                .last()
                .copied()
                .unwrap_or(0.0);
            if min < -tol {
                return Err(Error::NotPsd { min_eigenvalue: min });
            }
        }
        let total = CMatrix::sum(elements.iter()).expect("non-empty");
        let deviation = total.max_abs_diff(&CMatrix::identity(dim));
        if deviation > tol {
            return Err(Error::NotComplete { deviation });
        }
        Ok(Self {
            elements: elements.into_iter().map(|e| e.hermitian_part()).collect(),
            dim,
            tol,
        })
    }

    pub(crate) fn trusted(elements: Vec<CMatrix>, tol: f64) -> Self {
        let dim = elements[0].rows();
        Self { elements, dim, tol }
    }

    pub fn from_doc(doc: &PovmDoc, tol: f64) -> Result<Self> {
        let elements = doc
            .elements()
            .iter()
            .map(MatrixDoc::to_matrix)
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements, tol)
    }

    pub fn to_doc(&self) -> PovmDoc {
        PovmDoc::Wrapped {
            elements: self.elements.iter().map(MatrixDoc::from_matrix).collect(),
        }
    }

    /// `{|k><k|}`
    pub fn incoherent_projectors(d: usize) -> Self {
        Self::trusted((0..d).map(|k| CMatrix::unit(d, k, k)).collect(), DEFAULT_TOL)
    }

    /// Projective measurement onto `basis`.
    pub fn projective(basis: &OrthonormalBasis) -> Self {
        Self::trusted(
            basis.vectors().iter().map(|v| CMatrix::projector(v)).collect(),
            DEFAULT_TOL,
        )
    }

    /// Diagonal POVM `M_j = Σ_k kernel[j][k] |k><k|`; the kernel must be
    /// column-stochastic.
    pub fn from_kernel(kernel: &[Vec<f64>], tol: f64) -> Result<Self> {
        Self::new(kernel.iter().map(|row| CMatrix::from_real_diag(row)).collect(), tol)
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// `p_j = tr(ρ M_j)`, with round-off negatives clamped to zero.
pub fn measure(rho: &DensityMatrix, m: &Povm) -> Result<Vec<f64>> {
    if rho.dim() != m.dim() {
        return Err(Error::DimMismatch {
            expected: m.dim(),
            found: rho.dim(),
        });
    }
    Ok(m.elements()
        .iter()
        .map(|e| rho.matrix().trace_product(e).re.max(0.0))
        .collect())
}

/// Whether every element is diagonal in the incoherent basis, plus the
/// largest off-diagonal modulus found.
pub fn is_incoherent(m: &Povm, tol: f64) -> (bool, f64) {
    let worst = m.elements().iter().map(CMatrix::max_offdiag_abs).fold(0.0, f64::max);
    (worst <= tol, worst)
}

/// Projective measurement with white noise,
/// `Π_α = λ|φ_α><φ_α| + (1-λ)/d · 1`.
pub fn noisy_projective(basis: &OrthonormalBasis, lambda: f64) -> Result<Povm> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "noise parameter {lambda} outside [0, 1]"
        )));
    }
    let d = basis.dim();
    let noise = CMatrix::identity(d).scale_real((1.0 - lambda) / d as f64);
    let elements = basis
        .vectors()
        .iter()
        .map(|v| &CMatrix::projector(v).scale_real(lambda) + &noise)
        .collect();
    Ok(Povm::trusted(elements, DEFAULT_TOL))
}

/// Random incoherent POVM with `n` outcomes: a column-stochastic kernel with
/// each column drawn uniformly from the simplex.
pub fn random_incoherent_povm(d: usize, n: usize, rng: &mut Rng) -> Povm {
    let columns: Vec<Vec<f64>> = (0..d)
        .map(|_| {
            let draws: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
            let total: f64 = draws.iter().sum();
            draws.into_iter().map(|x| x / total).collect()
        })
        .collect();
    let elements = (0..n)
        .map(|j| CMatrix::from_real_diag(&columns.iter().map(|col| col[j]).collect::<Vec<_>>()))
        .collect();
    Povm::trusted(elements, DEFAULT_TOL)
}

/// One outcome of a measurement on the A side.
#[derive(Debug, Clone)]
pub struct ConditionalOutcome {
    pub probability: f64,
    /// `None` when `probability < NULL_OUTCOME_PROBABILITY`.
    pub state: Option<DensityMatrix>,
}

/// `p^μ = tr(M_μ ρ)` and `ρ_{B|μ} = tr_A(M_μ ρ)/p^μ` for a POVM on the `a`
/// subsystems; B is the complement.
pub fn conditional_states(rho: &DensityMatrix, a: &[usize], m: &Povm) -> Result<Vec<ConditionalOutcome>> {
    let cut = Bipartition::new(rho.dims(), a)?;
    let da = rho.dims().group_total(&cut.a);
    if m.dim() != da {
        return Err(Error::DimMismatch {
            expected: da,
            found: m.dim(),
        });
    }
    let b_dims = rho.dims().select(&cut.b);
    m.elements()
        .iter()
        .map(|e| {
            let lifted = &embed_on_group(e, rho.dims(), &cut.a)? * rho.matrix();
            let probability = lifted.trace().re.max(0.0);
            if probability < NULL_OUTCOME_PROBABILITY {
                return Ok(ConditionalOutcome {
                    probability,
                    state: None,
                });
            }
            let reduced = partial_trace(&lifted, rho.dims(), &cut.b)?
                .hermitian_part()
                .scale_real(1.0 / probability);
            let state = validate_density(reduced, b_dims.clone(), rho.tol().max(DEFAULT_TOL))?;
            Ok(ConditionalOutcome {
                probability,
                state: Some(state),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_vector, Dims};
    use crate::states::{max_ent_pm, random_density, rng_from_seed};
    use crate::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn pm_povm() -> Povm {
        Povm::projective(&OrthonormalBasis::fourier(2))
    }

    #[test]
    fn projective_on_plus() {
        let plus = [Complex64::new(FRAC_1_SQRT_2, 0.0); 2];
        let rho = DensityMatrix::pure(&plus, Dims::single(2).unwrap()).unwrap();
        let p = measure(&rho, &Povm::incoherent_projectors(2)).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn trivial_povm() {
        let m = Povm::new(vec![CMatrix::identity(3)], 1e-12).unwrap();
        assert_eq!(measure(&random_density(3, 9), &m).unwrap(), vec![1.0]);
    }

    #[test]
    fn probabilities_sum_to_one() {
        let mut rng = rng_from_seed(3);
        for seed in 0..50 {
            let m = random_incoherent_povm(3, 4, &mut rng);
            let p = measure(&random_density(3, seed), &m).unwrap();
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_incomplete_or_negative() {
        let half = CMatrix::identity(2).scale_real(0.5);
        assert!(matches!(
            Povm::new(vec![half.clone()], 1e-9),
            Err(Error::NotComplete { .. })
        ));
        let neg = CMatrix::from_real_diag(&[1.5, 1.0]);
        let comp = CMatrix::from_real_diag(&[-0.5, 0.0]);
        assert!(matches!(Povm::new(vec![neg, comp], 1e-9), Err(Error::NotPsd { .. })));
        assert!(Povm::new(vec![], 1e-9).is_err());
        let rho = random_density(3, 1);
        assert!(measure(&rho, &Povm::incoherent_projectors(2)).is_err());
    }

    #[test]
    fn incoherence_detection() {
        assert_eq!(is_incoherent(&Povm::incoherent_projectors(2), 1e-9), (true, 0.0));
        let (ok, worst) = is_incoherent(&pm_povm(), 1e-9);
        assert!(!ok);
        assert!((worst - 0.5).abs() < 1e-15);
    }

    #[test]
    fn noisy_projective_family() {
        let f = OrthonormalBasis::fourier(2);
        let zero = noisy_projective(&f, 0.0).unwrap();
        for e in zero.elements() {
            assert!(e.max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < 1e-15);
        }
        assert!(is_incoherent(&zero, 1e-12).0);
        let one = noisy_projective(&f, 1.0).unwrap();
        assert!(one.elements()[0].max_abs_diff(&CMatrix::projector(&f.vector(0))) < 1e-15);
        let half = noisy_projective(&f, 0.5).unwrap();
        for (e, v) in half.elements().iter().zip(f.vectors()) {
            let expected = &CMatrix::projector(&v).scale_real(0.5) + &CMatrix::identity(2).scale_real(0.25);
            assert!(e.max_abs_diff(&expected) < 1e-15);
        }
        for lambda in [0.01, 0.3, 1.0] {
            assert!(!is_incoherent(&noisy_projective(&f, lambda).unwrap(), 1e-9).0);
        }
        assert!(noisy_projective(&f, 1.5).is_err());
        assert!(noisy_projective(&f, -0.1).is_err());
    }

    #[test]
    fn conditional_states_classical() {
        let rho = DensityMatrix::new(
            CMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]),
            Dims::new(vec![2, 2]).unwrap(),
        )
        .unwrap();
        let out = conditional_states(&rho, &[0], &Povm::incoherent_projectors(2)).unwrap();
        for (k, o) in out.iter().enumerate() {
            assert!((o.probability - 0.5).abs() < 1e-15);
            let expected = CMatrix::projector(&basis_vector(2, k));
            assert!(o.state.as_ref().unwrap().matrix().max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn conditional_states_product() {
        let rb = random_density(3, 11);
        let rho = random_density(2, 10).tensor(&rb);
        let m = pm_povm();
        for o in conditional_states(&rho, &[0], &m).unwrap() {
            assert!(o.state.unwrap().matrix().max_abs_diff(rb.matrix()) < 1e-12);
        }
    }

    #[test]
    fn conditional_states_max_ent() {
        // partial-trace oracle: (|0>|+> + |1>|->)/√2 projected on |k>_A
        let s = FRAC_1_SQRT_2;
        let plus = [Complex64::new(s, 0.0), Complex64::new(s, 0.0)];
        let minus = [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)];
        let out = conditional_states(&max_ent_pm(), &[0], &Povm::incoherent_projectors(2)).unwrap();
        assert_eq!(out.len(), 2);
        for (o, v) in out.iter().zip([plus, minus]) {
            assert!((o.probability - 0.5).abs() < 1e-15);
            assert!(o.state.as_ref().unwrap().matrix().max_abs_diff(&CMatrix::projector(&v)) < 1e-15);
        }
    }

    #[test]
    fn null_outcomes_marked() {
        let rho = DensityMatrix::new(
            CMatrix::from_real_diag(&[1.0, 0.0, 0.0, 0.0]),
            Dims::new(vec![2, 2]).unwrap(),
        )
        .unwrap();
        let out = conditional_states(&rho, &[0], &Povm::incoherent_projectors(2)).unwrap();
        assert!(out[0].state.is_some());
        assert!(out[1].state.is_none());
        assert_eq!(out[1].probability, 0.0);
    }
}
