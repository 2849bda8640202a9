use super::cm::CovarianceMatrix;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

/// Relative gap allowed between the two copies of a doubled singular value.
const PAIR_REL_TOL: f64 = 1e-8;

/// Symplectic eigenvalues in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    /// Sorts `values`; every entry must be positive and finite.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty symplectic spectrum".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "symplectic eigenvalue {v} is not positive"
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Squared eigenvalues, ascending.
    pub fn squares(&self) -> Vec<f64> {
        self.values.iter().map(|v| v * v).collect()
    }
}

/// Symplectic eigenvalues of a positive-definite `sigma`.
///
/// Uses the singular values of the antisymmetric `K = sigma^(1/2) Omega sigma^(1/2)`,
/// which is similar to `Omega sigma`. They come in equal pairs; one of each pair
/// is kept.
pub fn symplectic_spectrum(sigma: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let eig = SymmetricEigen::new(sigma.matrix().clone());
    let min_eigenvalue = eig.eigenvalues.min();
    if min_eigenvalue.is_nan() || min_eigenvalue <= 0.0 {
        return Err(Error::NotPositiveDefinite { min_eigenvalue });
    }
    let roots = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let sqrt_sigma = &eig.eigenvectors * roots * eig.eigenvectors.transpose();
    let k = &sqrt_sigma * super::omega(sigma.n()) * &sqrt_sigma;

    let mut sv: Vec<f64> = k.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let top = sv[0];
    let mut values = Vec::with_capacity(sigma.n());
    for pair in sv.chunks_exact(2) {
        if (pair[0] - pair[1]).abs() > PAIR_REL_TOL * top {
            return Err(Error::NumericalConsistency(format!(
                "singular values {} and {} of sigma^(1/2) Omega sigma^(1/2) should coincide",
                pair[0], pair[1]
            )));
        }
        values.push(0.5 * (pair[0] + pair[1]));
    }
    SymplecticSpectrum::new(values)
}
