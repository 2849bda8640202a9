use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(
        "matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {gap:e} exceeds tolerance"
    )]
    Symmetry { row: usize, col: usize, gap: f64 },

    #[error("non-finite entry at [{row}][{col}]")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("state is not physical (smallest symplectic eigenvalue {})", fmt_nu(.min_nu))]
    Unphysical { min_nu: Option<f64> },

    #[error("numerical consistency check failed: {0}")]
    NumericalConsistency(String),

    #[error("mode count {n} exceeds the limit {max} for this algorithm")]
    Capacity { n: usize, max: usize },

    #[error("invariants do not describe a positive-definite matrix: {0}")]
    InconsistentInvariants(String),

    #[error("declared state class does not fit the input: {0}")]
    ClassMismatch(String),

    #[error("separability tests disagree: {0}")]
    Consistency(String),
}

fn fmt_nu(nu: &Option<f64>) -> String {
    match nu {
        Some(v) => format!("{v}"),
        None => "undefined: matrix not positive definite".into(),
    }
}
