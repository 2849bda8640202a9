//! Symplectic invariants of a covariance matrix: two independent ways of
//! computing them, the alternating sums built from them, and the way back to
//! the symplectic spectrum.

mod block_minors;
mod charpoly;
mod hierarchy;
mod recovery;

pub use block_minors::{invariants_blockminors, BLOCK_MINOR_MAX_MODES};
pub use charpoly::{
    characteristic_polynomial, invariants_charpoly, invariants_charpoly_rescaled,
    CharPolyCoefficients,
};
pub use hierarchy::{lower_order_invariants, saturation_sum, sigma_value};
pub use recovery::spectrum_from_invariants;

use crate::error::{Error, Result};
use serde::Serialize;

/// The `n + 1` invariants `Delta_0 = 1, Delta_1, ..., Delta_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct InvariantVector {
    values: Vec<f64>,
}

impl InvariantVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty invariant vector".into()));
        }
        if values[0] != 1.0 {
            return Err(Error::InvalidArgument(format!(
                "leading invariant must be exactly 1, got {}",
                values[0]
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "invariant {v} is not finite"
            )));
        }
        Ok(Self { values })
    }

    /// Elementary symmetric polynomials of the squared symplectic eigenvalues.
    pub fn from_spectrum(nus: &[f64]) -> Result<Self> {
        let squares: Vec<f64> = nus.iter().map(|v| v * v).collect();
        Self::new(elementary_symmetric(&squares))
    }

    /// Mode count.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, j: usize) -> f64 {
        self.values[j]
    }

    /// `max(1, sum_j |Delta_j|)`, the magnitude against which the
    /// alternating sums are judged.
    pub fn scale(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>().max(1.0)
    }

    /// Largest relative entrywise gap, each entry measured against
    /// `max(|a|, |b|, tiny)`.
    pub fn max_rel_diff(&self, other: &InvariantVector) -> f64 {
        assert_eq!(self.values.len(), other.values.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}

/// `e_0, ..., e_n` of the inputs, by the usual product expansion.
pub fn elementary_symmetric(xs: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; xs.len() + 1];
    e[0] = 1.0;
    for (i, &x) in xs.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn factorial(p: usize) -> f64 {
    (1..=p).fold(1.0, |acc, i| acc * i as f64)
}
