use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

pub const LIBRARY_CHANNELS: &[&str] = &["depolarizing", "dephasing", "mio_not_io_qutrit", "identity"];

/// Generalized Pauli operators `X^a Z^b`, `a, b ∈ 0..d`, indexed `a·d + b`.
pub fn weyl_operators(d: usize) -> Vec<CMatrix> {
    let shift = CMatrix::from_fn(d, d, |i, j| {
        if i == (j + 1) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let clock = CMatrix::from_diag(
        &(0..d)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / d as f64))
            .collect::<Vec<_>>(),
    );
    let mut out = Vec::with_capacity(d * d);
    let mut xa = CMatrix::identity(d);
    for _ in 0..d {
        let mut zb = CMatrix::identity(d);
        for _ in 0..d {
            out.push(&xa * &zb);
            zb = &zb * &clock;
        }
        xa = &xa * &shift;
    }
    out
}

/// `Λ(ρ) = pρ + (1-p)·1/d`, via the Weyl twirl
/// `(1/d²) Σ W ρ W† = tr(ρ)·1/d`.
pub fn depolarizing(d: usize, p: f64) -> Result<KrausChannel> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("dimension {d} < 2")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "depolarizing parameter {p} outside [0, 1]"
        )));
    }
    let d2 = (d * d) as f64;
    let kraus = weyl_operators(d)
        .into_iter()
        .enumerate()
        .filter_map(|(idx, w)| {
            let weight = if idx == 0 { p + (1.0 - p) / d2 } else { (1.0 - p) / d2 };
            (weight > 0.0).then(|| w.scale_real(weight.sqrt()))
        })
        .collect();
    Ok(KrausChannel::trusted(kraus))
}

/// Completely dephasing channel, Kraus operators `{|j><j|}`.
pub fn dephasing(d: usize) -> KrausChannel {
    KrausChannel::trusted((0..d).map(|j| CMatrix::unit(d, j, j)).collect())
}

/// Qutrit channel with
/// `K0 = (|-><0| + |1><1|)/√2`, `K1 = (|+><0| + |0><1|)/√2`, `K2 = |2><2|`,
/// where `|±> = (|0> ± |1>)/√2`. Maps incoherent states to incoherent
/// states but does not fix them.
pub fn mio_not_io_qutrit() -> KrausChannel {
    let h = FRAC_1_SQRT_2;
    let r = |x: f64| Complex64::new(x, 0.0);
    let mut k0 = CMatrix::zeros(3, 3);
    // |-><0| / √2
    k0[(0, 0)] = r(h * h);
    k0[(1, 0)] = r(-h * h);
    // |1><1| / √2
    k0[(1, 1)] = r(h);
    let mut k1 = CMatrix::zeros(3, 3);
    // |+><0| / √2
    k1[(0, 0)] = r(h * h);
    k1[(1, 0)] = r(h * h);
    // |0><1| / √2
    k1[(0, 1)] = r(h);
    let k2 = CMatrix::unit(3, 2, 2);
    KrausChannel::trusted(vec![k0, k1, k2])
}

/// Catalog lookup. `params` are positional: `depolarizing` takes `[d, p]`,
/// `dephasing` and `identity` take `[d]`.
pub fn library_channel(name: &str, params: &[f64]) -> Result<KrausChannel> {
    let dim = |k: usize| -> Result<usize> {
        let x = *params
            .get(k)
            .ok_or_else(|| Error::InvalidParameter(format!("{name}: missing parameter {k}")))?;
        if x.fract() != 0.0 || x < 2.0 {
            return Err(Error::InvalidParameter(format!(
                "{name}: dimension {x} is not an integer >= 2"
            )));
        }
        Ok(x as usize)
    };
    match name {
        "depolarizing" => {
            let p = *params
                .get(1)
                .ok_or_else(|| Error::InvalidParameter("depolarizing: missing p".into()))?;
            depolarizing(dim(0)?, p)
        }
        "dephasing" => Ok(dephasing(dim(0)?)),
        "identity" => Ok(KrausChannel::identity(dim(0)?)),
        "mio_not_io_qutrit" => Ok(mio_not_io_qutrit()),
        other => Err(Error::UnknownName(other.to_string())),
    }
}
