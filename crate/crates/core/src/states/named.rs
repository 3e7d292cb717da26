use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{basis_vector, hermitian_eigenvalues, kron_vec, CMatrix, Dims};

/// Catalog names accepted by [`named_state`].
pub const NAMED_STATES: &[&str] = &["max_ent_pm", "ghz", "w", "activation", "prop2_witness"];

const STATE_TOL: f64 = 1e-12;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn qubits(n: usize) -> Dims {
    Dims::new(vec![2; n]).expect("qubit dims")
}

/// `(|+0> + |-1>)/√2` on two qubits.
pub fn max_ent_pm() -> DensityMatrix {
    let plus = [c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)];
    let minus = [c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)];
    let a = kron_vec(&plus, &basis_vector(2, 0));
    let b = kron_vec(&minus, &basis_vector(2, 1));
    let psi: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| (x + y) * FRAC_1_SQRT_2).collect();
    DensityMatrix::with_tol(CMatrix::projector(&psi), qubits(2), STATE_TOL).expect("valid by construction")
}

/// `(|000> + |111>)/√2`
pub fn ghz() -> DensityMatrix {
    let mut psi = vec![c(0.0); 8];
    psi[0b000] = c(FRAC_1_SQRT_2);
    psi[0b111] = c(FRAC_1_SQRT_2);
    DensityMatrix::with_tol(CMatrix::projector(&psi), qubits(3), STATE_TOL).expect("valid by construction")
}

/// `(|001> + |010> + |100>)/√3`
pub fn w_state() -> DensityMatrix {
    let amp = c(1.0 / 3f64.sqrt());
    let mut psi = vec![c(0.0); 8];
    for idx in [0b001, 0b010, 0b100] {
        psi[idx] = amp;
    }
    DensityMatrix::with_tol(CMatrix::projector(&psi), qubits(3), STATE_TOL).expect("valid by construction")
}

/// `½|000><000| + ¼(|01>+|10>)(<01|+<10|) ⊗ |1><1|` on A, A′, B.
pub fn activation() -> DensityMatrix {
    let mut m = CMatrix::zeros(8, 8);
    m[(0b000, 0b000)] = c(0.5);
    for i in [0b011, 0b101] {
        for j in [0b011, 0b101] {
            m[(i, j)] = c(0.25);
        }
    }
    DensityMatrix::with_tol(m, qubits(3), STATE_TOL).expect("valid by construction")
}

/// `(1/d) Σ_j |j><j| ⊗ |φ_j><φ_j| ⊗ |j><j|` where the `φ_j` are the columns of
/// `vectors` (one per value of `j`, so `d = vectors.cols()`).
///
/// The columns must be unit vectors and linearly independent.
pub fn prop2_witness(vectors: &CMatrix) -> Result<DensityMatrix> {
    let d = vectors.cols();
    let d_prime = vectors.rows();
    if d < 2 || d_prime < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 vectors of dimension >= 2, got {d_prime}x{d}"
        )));
    }
    let mut phis = Vec::with_capacity(d);
    for j in 0..d {
        let v = vectors.column(j);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!("vector {j} has norm {norm}")));
        }
        phis.push(v.into_iter().map(|z| z / norm).collect::<Vec<_>>());
    }
    let gram = &vectors.adjoint() * vectors;
    let smallest = hermitian_eigenvalues(&gram, 1e-9)?.last().copied().unwrap_or(0.0);
    if smallest <= 1e-9 {
        return Err(Error::InvalidParameter("vectors are linearly dependent".into()));
    }
    let dims = Dims::new(vec![d, d_prime, d])?;
    let mut m = CMatrix::zeros(dims.total(), dims.total());
    for (j, phi) in phis.iter().enumerate() {
        let v = kron_vec(&kron_vec(&basis_vector(d, j), phi), &basis_vector(d, j));
        m = &m + &CMatrix::projector(&v).scale_real(1.0 / d as f64);
    }
    DensityMatrix::with_tol(m, dims, STATE_TOL)
}

/// Looks a state up by catalog name. `vectors` is only used by
/// `prop2_witness`.
pub fn named_state(name: &str, vectors: Option<&CMatrix>) -> Result<DensityMatrix> {
    match name {
        "max_ent_pm" => Ok(max_ent_pm()),
        "ghz" => Ok(ghz()),
        "w" => Ok(w_state()),
        "activation" => Ok(activation()),
        "prop2_witness" => {
            let v = vectors.ok_or_else(|| Error::InvalidParameter("prop2_witness needs basis vectors".into()))?;
            prop2_witness(v)
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}
