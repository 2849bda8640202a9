//! Symplectic form, covariance matrices and the objects built directly on them.
//!
//! All matrices use the interleaved ordering `(x1, p1, x2, p2, ...)` and the
//! convention in which the vacuum covariance matrix is the identity.

mod cm;
mod partition;
mod random;
mod spectrum;

pub use cm::{
    partial_transpose, physicality, validate_cm, CovarianceMatrix, Physicality, PhysicalityReport,
};
pub use partition::{ModePartition, Side};
pub use random::{random_physical_cm, random_symplectic, SampledState};
pub use spectrum::{symplectic_spectrum, SymplecticSpectrum};

use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// The block-diagonal symplectic form on `n` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    data: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn n(&self) -> usize {
        self.data.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }
}

pub fn symplectic_form(n: usize) -> Result<SymplecticForm> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "symplectic form needs at least one mode".into(),
        ));
    }
    Ok(SymplecticForm { data: omega(n) })
}

pub(crate) fn omega(n: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    w
}

/// Largest entry of `|S^T Omega S - Omega|`.
pub fn symplectic_defect(s: &DMatrix<f64>) -> Result<f64> {
    if s.nrows() != s.ncols() || !s.nrows().is_multiple_of(2) || s.nrows() == 0 {
        return Err(Error::Dimension(format!(
            "expected a square matrix of even side, got {}x{}",
            s.nrows(),
            s.ncols()
        )));
    }
    let w = omega(s.nrows() / 2);
    let d = s.transpose() * &w * s - &w;
    Ok(d.amax())
}
