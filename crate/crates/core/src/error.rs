use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid subsystem dimensions: {0}")]
    InvalidDims(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (most negative eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is {trace:.12}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("eigenvalue {value:.3e} below clamp threshold; invalid state reached entropy kernel")]
    NegativeEigenvalue { value: f64 },

    #[error("bad partition: {0}")]
    BadPartition(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("components {first} and {second} have overlapping diagonal supports")]
    OverlappingSupports { first: usize, second: usize },

    #[error("weights do not form a probability distribution (sum {sum:.12})")]
    NotADistribution { sum: f64 },

    #[error("POVM elements do not sum to identity (deviation {deviation:.3e})")]
    NotComplete { deviation: f64 },

    #[error("POVM is not incoherent (worst off-diagonal {worst_offdiag:.3e})")]
    NotIncoherent { worst_offdiag: f64 },

    #[error("basis is not orthonormal (Gram deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("Kraus operators are not trace preserving (deviation {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },

    #[error("internal consistency check failed for {what}: discrepancy {discrepancy:.3e}")]
    Inconsistent { what: &'static str, discrepancy: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
