//! Discord based on incoherent measurements (QDI) and the incoherent
//! correlation `J^I`.
//!
//! The optimal incoherent measurement on A is the incoherent projective
//! measurement, so QDI has three closed forms:
//!
//! ```text
//! D = Σ_i p_i S(ρ_B|i) + S(ρ_A) - S(ρ_AB)
//!   = I(ρ_AB) - I(ρ_ÃB)
//!   = C_r(ρ_AB) - C_r(ρ_ÃB) - C_r(ρ_A)
//! ```
//!
//! with `ρ_ÃB = Δ_A ⊗ 1 (ρ_AB)`. [`qdi`] evaluates all three along separate
//! numerical paths and reports their spread.

use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{
    conditional_mutual_information, matrix_entropy, mutual_information, rel_entropy_coherence_full,
    von_neumann_entropy, Bipartition, Tripartition,
};
use crate::linalg::CMatrix;
use crate::measurement::{conditional_states, random_incoherent_povm, Povm, NULL_OUTCOME_PROBABILITY};
use crate::states::{rng_from_seed, DensityMatrix};

/// Largest tolerated spread between equivalent formulas.
pub const CONSISTENCY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QdiReport {
    pub qdi_projective: f64,
    pub qdi_mutinf: f64,
    pub qdi_coherence: f64,
    pub j_incoherent: f64,
    pub max_discrepancy: f64,
}

impl QdiReport {
    /// The conditional-entropy form, taken as the headline value.
    pub fn value(&self) -> f64 {
        self.qdi_projective
    }
}

/// `(p_i, ρ_B|i)` for the incoherent projective measurement on the `a`
/// subsystems, read directly off the diagonal blocks of `ρ`.
pub fn projective_conditionals(rho: &DensityMatrix, a: &[usize]) -> Result<Vec<(f64, CMatrix)>> {
    let cut = Bipartition::new(rho.dims(), a)?;
    let dims = rho.dims();
    let a_dims = dims.select(&cut.a);
    let b_dims = dims.select(&cut.b);
    let compose = |ia: usize, ib: usize| {
        let (da, db) = (a_dims.digits(ia), b_dims.digits(ib));
        let mut digits = vec![0; dims.len()];
        for (k, &s) in cut.a.iter().enumerate() {
            digits[s] = da[k];
        }
        for (k, &s) in cut.b.iter().enumerate() {
            digits[s] = db[k];
        }
        dims.compose(&digits)
    };
    let nb = b_dims.total();
    Ok((0..a_dims.total())
        .map(|i| {
            let idx: Vec<usize> = (0..nb).map(|ib| compose(i, ib)).collect();
            let block = CMatrix::from_fn(nb, nb, |r, c| rho.matrix()[(idx[r], idx[c])]);
            let p = block.trace().re.max(0.0);
            let state = if p < NULL_OUTCOME_PROBABILITY {
                block
            } else {
                block.scale_real(1.0 / p)
            };
            (p, state)
        })
        .collect())
}

/// `Σ_i p_i S(ρ_B|i)` for the incoherent projective measurement on `a`.
pub fn projective_conditional_entropy(rho: &DensityMatrix, a: &[usize]) -> Result<f64> {
    let mut total = 0.0;
    for (p, state) in projective_conditionals(rho, a)? {
        if p >= NULL_OUTCOME_PROBABILITY {
            total += p * matrix_entropy(&state)?;
        }
    }
    Ok(total)
}

/// `J^I_{B|A} = S(ρ_B) - Σ_i p_i S(ρ_B|i)`.
pub fn incoherent_correlation(rho: &DensityMatrix, a: &[usize]) -> Result<f64> {
    let cut = Bipartition::new(rho.dims(), a)?;
    Ok(von_neumann_entropy(&rho.reduced(&cut.b)?)? - projective_conditional_entropy(rho, &cut.a)?)
}

/// QDI on the cut `a | rest`, cross-checked across all three forms.
///
/// A spread above [`CONSISTENCY_TOL`] is reported as
/// [`Error::Inconsistent`]; it indicates a numerical fault, not bad input.
pub fn qdi(rho: &DensityMatrix, a: &[usize]) -> Result<QdiReport> {
    let cut = Bipartition::new(rho.dims(), a)?;
    let s_ab = von_neumann_entropy(rho)?;
    let rho_a = rho.reduced(&cut.a)?;
    let s_a = von_neumann_entropy(&rho_a)?;
    let conditional = projective_conditional_entropy(rho, &cut.a)?;
    let qdi_projective = conditional + s_a - s_ab;

    let dephased = rho.dephased(&cut.a)?;
    let qdi_mutinf = mutual_information(rho, &cut.a)? - mutual_information(&dephased, &cut.a)?;

    let qdi_coherence =
        rel_entropy_coherence_full(rho)? - rel_entropy_coherence_full(&dephased)? - rel_entropy_coherence_full(&rho_a)?;

    let j_incoherent = von_neumann_entropy(&rho.reduced(&cut.b)?)? - conditional;

    let values = [qdi_projective, qdi_mutinf, qdi_coherence];
    let max_discrepancy = values
        .iter()
        .flat_map(|x| values.iter().map(move |y| (x - y).abs()))
        .fold(0.0, f64::max);
    if max_discrepancy > CONSISTENCY_TOL {
        return Err(Error::Inconsistent {
            what: "QDI formulas",
            discrepancy: max_discrepancy,
        });
    }
    Ok(QdiReport {
        qdi_projective,
        qdi_mutinf,
        qdi_coherence,
        j_incoherent,
        max_discrepancy,
    })
}

/// Headline QDI value.
pub fn qdi_value(rho: &DensityMatrix, a: &[usize]) -> Result<f64> {
    qdi(rho, a).map(|r| r.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonogamyReport {
    /// `D_{B|A} + D_{B'|A} - D_{BB'|A}`
    pub gap: f64,
    /// `I(B:B'|Ã) - I(B:B'|A)`
    pub gap_via_cmi: f64,
    pub discrepancy: f64,
}

/// Positions of `group` inside the sorted union `within`.
fn relabel(group: &[usize], within: &[usize]) -> Vec<usize> {
    group
        .iter()
        .map(|s| within.iter().position(|w| w == s).expect("subset"))
        .collect()
}

fn sorted_union(x: &[usize], y: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = x.iter().chain(y).copied().collect();
    v.sort_unstable();
    v
}

/// Monogamy gap for a tripartition `A | B | B'`, computed directly from three
/// QDI values and again through conditional mutual informations.
pub fn monogamy_gap(rho: &DensityMatrix, a: &[usize], b: &[usize], b2: &[usize]) -> Result<MonogamyReport> {
    let parts = Tripartition::new(rho.dims(), a, b, b2)?;
    let ab = sorted_union(&parts.a, &parts.b);
    let ab2 = sorted_union(&parts.a, &parts.c);
    let d_b = qdi_value(&rho.reduced(&ab)?, &relabel(&parts.a, &ab))?;
    let d_b2 = qdi_value(&rho.reduced(&ab2)?, &relabel(&parts.a, &ab2))?;
    let d_bb2 = qdi_value(rho, &parts.a)?;
    let gap = d_b + d_b2 - d_bb2;

    let dephased = rho.dephased(&parts.a)?;
    let gap_via_cmi = conditional_mutual_information(&dephased, &parts.b, &parts.c, &parts.a)?
        - conditional_mutual_information(rho, &parts.b, &parts.c, &parts.a)?;

    let discrepancy = (gap - gap_via_cmi).abs();
    if discrepancy > CONSISTENCY_TOL {
        return Err(Error::Inconsistent {
            what: "monogamy gap",
            discrepancy,
        });
    }
    Ok(MonogamyReport {
        gap,
        gap_via_cmi,
        discrepancy,
    })
}

/// `Σ_μ p^μ S(ρ_B|μ)` for an arbitrary POVM on `a`, via explicit
/// conditional states.
pub fn average_conditional_entropy(rho: &DensityMatrix, a: &[usize], m: &Povm) -> Result<f64> {
    let mut total = 0.0;
    for outcome in conditional_states(rho, a, m)? {
        if let Some(state) = outcome.state {
            total += outcome.probability * von_neumann_entropy(&state)?;
        }
    }
    Ok(total)
}

/// Smallest average conditional entropy found over `samples` random
/// incoherent POVMs on `a` (outcome counts 2..=2·d_A). Never below the
/// projective value up to round-off.
pub fn qdi_povm_oracle(rho: &DensityMatrix, a: &[usize], samples: usize, seed: u64) -> Result<f64> {
    let cut = Bipartition::new(rho.dims(), a)?;
    let da = rho.dims().group_total(&cut.a);
    let mut rng = rng_from_seed(seed);
    let mut best = f64::INFINITY;
    for _ in 0..samples {
        let n = rng.gen_range(2..=2 * da);
        let m = random_incoherent_povm(da, n, &mut rng);
        best = best.min(average_conditional_entropy(rho, &cut.a, &m)?);
    }
    Ok(best)
}
