//! Multipartite index bookkeeping: partial traces, dephasing and operator
//! embedding. Subsystem 0 is the leftmost tensor factor.

use serde::{Deserialize, Serialize};

use super::matrix::{CMatrix, ZERO};
use crate::error::{Error, Result};

/// Ordered subsystem dimensions of a composite Hilbert space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Dims(Vec<usize>);

impl Dims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidDims("no subsystems".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDims(format!("subsystem dimension {d} < 2")));
        }
        Ok(Self(dims))
    }

    /// Single-system dimensions `[d]`.
    pub fn single(d: usize) -> Result<Self> {
        Self::new(vec![d])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.0[k]
    }

    /// Product of the dimensions in `group`.
    pub fn group_total(&self, group: &[usize]) -> usize {
        group.iter().map(|&k| self.0[k]).product()
    }

    /// Sub-dimension vector for a validated, sorted group.
    pub fn select(&self, group: &[usize]) -> Dims {
        Dims(group.iter().map(|&k| self.0[k]).collect())
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Dims) -> Dims {
        Dims(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Mixed-radix digits of a flat index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (k, &d) in self.0.iter().enumerate().rev() {
            out[k] = index % d;
            index /= d;
        }
        out
    }

    /// Flat index from mixed-radix digits.
    pub fn compose(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.0).fold(0, |acc, (&x, &d)| acc * d + x)
    }

    /// Sorts and validates a subsystem group (non-empty, in range, no repeats).
    pub fn check_group(&self, group: &[usize]) -> Result<Vec<usize>> {
        let mut g = group.to_vec();
        g.sort_unstable();
        g.dedup();
        if g.len() != group.len() {
            return Err(Error::BadPartition(format!("repeated subsystem in {group:?}")));
        }
        if g.is_empty() {
            return Err(Error::BadPartition("empty subsystem group".into()));
        }
        if let Some(&k) = g.iter().find(|&&k| k >= self.0.len()) {
            return Err(Error::BadPartition(format!(
                "subsystem {k} out of range for {} subsystems",
                self.0.len()
            )));
        }
        Ok(g)
    }

    /// Subsystems not in `group`, ascending.
    pub fn complement(&self, group: &[usize]) -> Vec<usize> {
        (0..self.0.len()).filter(|k| !group.contains(k)).collect()
    }

    /// For each flat index, the flat index restricted to `group` (ascending).
    fn projection_table(&self, group: &[usize]) -> Vec<usize> {
        let sub = self.select(group);
        (0..self.total())
            .map(|i| {
                let digits = self.digits(i);
                sub.compose(&group.iter().map(|&k| digits[k]).collect::<Vec<_>>())
            })
            .collect()
    }
}

impl TryFrom<Vec<usize>> for Dims {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Dims::new(v)
    }
}

impl From<Dims> for Vec<usize> {
    fn from(d: Dims) -> Self {
        d.0
    }
}

fn check_square(m: &CMatrix, dims: &Dims) -> Result<usize> {
    let n = m.require_square()?;
    if n != dims.total() {
        return Err(Error::DimMismatch {
            expected: dims.total(),
            found: n,
        });
    }
    Ok(n)
}

/// Reduced operator on the `keep` subsystems (in ascending order).
pub fn partial_trace(m: &CMatrix, dims: &Dims, keep: &[usize]) -> Result<CMatrix> {
    let n = check_square(m, dims)?;
    let keep = dims.check_group(keep)?;
    let traced = dims.complement(&keep);
    let kept_of = dims.projection_table(&keep);
    let out_dim = dims.group_total(&keep);
    if traced.is_empty() {
        return Ok(m.clone());
    }
    let traced_of = dims.projection_table(&traced);
    let mut out = CMatrix::zeros(out_dim, out_dim);
    for i in 0..n {
        for j in 0..n {
            if traced_of[i] == traced_of[j] {
                out[(kept_of[i], kept_of[j])] += m[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Completely dephases the `targets` subsystems in the incoherent basis:
/// every entry whose targeted row digits differ from its column digits is
/// zeroed. An empty target set leaves `m` unchanged.
pub fn dephase(m: &CMatrix, dims: &Dims, targets: &[usize]) -> Result<CMatrix> {
    let n = check_square(m, dims)?;
    if targets.is_empty() {
        return Ok(m.clone());
    }
    let targets = dims.check_group(targets)?;
    let key = dims.projection_table(&targets);
    let mut out = m.clone();
    for i in 0..n {
        for j in 0..n {
            if key[i] != key[j] {
                out[(i, j)] = ZERO;
            }
        }
    }
    Ok(out)
}

/// Dephases every subsystem, leaving only the diagonal.
pub fn dephase_all(m: &CMatrix) -> CMatrix {
    CMatrix::from_diag(&m.diag())
}

/// Embeds a square operator acting on `group` into the full space, identity
/// elsewhere. The operator's tensor ordering follows ascending subsystem order.
pub fn embed_on_group(op: &CMatrix, dims: &Dims, group: &[usize]) -> Result<CMatrix> {
    let group = dims.check_group(group)?;
    let g = op.require_square()?;
    if g != dims.group_total(&group) {
        return Err(Error::DimMismatch {
            expected: dims.group_total(&group),
            found: g,
        });
    }
    let rest = dims.complement(&group);
    let n = dims.total();
    let in_group = dims.projection_table(&group);
    let in_rest = if rest.is_empty() {
        vec![0; n]
    } else {
        dims.projection_table(&rest)
    };
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if in_rest[i] == in_rest[j] {
                out[(i, j)] = op[(in_group[i], in_group[j])];
            }
        }
    }
    Ok(out)
}

/// `I ⊗ op ⊗ I` with `op` (possibly rectangular) acting on subsystem `target`.
/// Returns the lifted operator and the output dimensions.
pub fn lift_on_subsystem(op: &CMatrix, dims: &Dims, target: usize) -> Result<(CMatrix, Dims)> {
    if target >= dims.len() {
        return Err(Error::BadPartition(format!("subsystem {target} out of range")));
    }
    if op.cols() != dims.dim(target) {
        return Err(Error::DimMismatch {
            expected: dims.dim(target),
            found: op.cols(),
        });
    }
    let left: usize = dims.as_slice()[..target].iter().product();
    let right: usize = dims.as_slice()[target + 1..].iter().product();
    let lifted = CMatrix::identity(left).kron(op).kron(&CMatrix::identity(right));
    let mut out_dims = dims.as_slice().to_vec();
    out_dims[target] = op.rows();
    Ok((lifted, Dims::new(out_dims)?))
}
