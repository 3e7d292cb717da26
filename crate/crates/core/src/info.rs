//! Entropic quantities in bits, computed from eigenvalues only.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, CMatrix, Dims};
use crate::states::DensityMatrix;

/// Eigenvalues in `[-CLAMP, 0)` are treated as zero; anything more negative
/// is rejected.
pub const EIGENVALUE_CLAMP: f64 = 1e-9;

/// `-Σ w log₂ w` with `0 log 0 = 0`.
pub fn entropy_from_eigenvalues(values: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &w in values {
        if w < -EIGENVALUE_CLAMP {
            return Err(Error::NegativeEigenvalue { value: w });
        }
        let w = w.clamp(0.0, 1.0);
        if w > 0.0 {
            s -= w * w.log2();
        }
    }
    Ok(s)
}

/// Entropy of a unit-trace positive matrix that has not been wrapped as a
/// [`DensityMatrix`].
pub fn matrix_entropy(m: &CMatrix) -> Result<f64> {
    entropy_from_eigenvalues(&hermitian_eigenvalues(&m.hermitian_part(), f64::INFINITY)?)
}

/// Shannon entropy of a probability vector, bits.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    entropy_from_eigenvalues(p)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    matrix_entropy(rho.matrix())
}

/// Validated split of a state's subsystems into two non-empty groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Bipartition {
    /// `a` against its complement.
    pub fn new(dims: &Dims, a: &[usize]) -> Result<Self> {
        let a = dims.check_group(a)?;
        let b = dims.complement(&a);
        if b.is_empty() {
            return Err(Error::BadPartition("second group is empty".into()));
        }
        Ok(Self { a, b })
    }
}

/// Three groups that together cover every subsystem exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tripartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl Tripartition {
    pub fn new(dims: &Dims, a: &[usize], b: &[usize], c: &[usize]) -> Result<Self> {
        let a = dims.check_group(a)?;
        let b = dims.check_group(b)?;
        let c = dims.check_group(c)?;
        let mut all: Vec<usize> = a.iter().chain(&b).chain(&c).copied().collect();
        all.sort_unstable();
        if all != (0..dims.len()).collect::<Vec<_>>() {
            return Err(Error::BadPartition(format!(
                "{a:?} | {b:?} | {c:?} does not partition {} subsystems",
                dims.len()
            )));
        }
        Ok(Self { a, b, c })
    }
}

fn union(x: &[usize], y: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = x.iter().chain(y).copied().collect();
    v.sort_unstable();
    v
}

fn marginal_entropy(rho: &DensityMatrix, keep: &[usize]) -> Result<f64> {
    if keep.len() == rho.dims().len() {
        von_neumann_entropy(rho)
    } else {
        von_neumann_entropy(&rho.reduced(keep)?)
    }
}

/// `S(ρ_A) + S(ρ_B) - S(ρ_AB)` with `a` one side of the cut and the
/// remaining subsystems the other.
pub fn mutual_information(rho: &DensityMatrix, a: &[usize]) -> Result<f64> {
    let cut = Bipartition::new(rho.dims(), a)?;
    Ok(marginal_entropy(rho, &cut.a)? + marginal_entropy(rho, &cut.b)? - von_neumann_entropy(rho)?)
}

/// `I(A:B|C) = S(AC) + S(BC) - S(ABC) - S(C)`.
pub fn conditional_mutual_information(rho: &DensityMatrix, a: &[usize], b: &[usize], c: &[usize]) -> Result<f64> {
    let parts = Tripartition::new(rho.dims(), a, b, c)?;
    Ok(
        marginal_entropy(rho, &union(&parts.a, &parts.c))? + marginal_entropy(rho, &union(&parts.b, &parts.c))?
            - von_neumann_entropy(rho)?
            - marginal_entropy(rho, &parts.c)?,
    )
}

/// `C_r(ρ) = S(Δ_targets(ρ)) - S(ρ)`.
pub fn rel_entropy_coherence(rho: &DensityMatrix, targets: &[usize]) -> Result<f64> {
    Ok(von_neumann_entropy(&rho.dephased(targets)?)? - von_neumann_entropy(rho)?)
}

/// Relative entropy of coherence with every subsystem dephased.
pub fn rel_entropy_coherence_full(rho: &DensityMatrix) -> Result<f64> {
    Ok(shannon_entropy(&rho.populations())? - von_neumann_entropy(rho)?)
}
