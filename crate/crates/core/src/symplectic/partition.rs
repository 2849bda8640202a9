use crate::error::{Error, Result};
use serde::Serialize;

/// Which subsystem of a bipartition is partially transposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

/// A split of the modes `0..n` into two non-empty subsystems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModePartition {
    n: usize,
    modes_a: Vec<usize>,
    modes_b: Vec<usize>,
}

impl ModePartition {
    /// Builds the partition from the modes of subsystem A; B is the complement.
    pub fn new(n: usize, modes_a: &[usize]) -> Result<Self> {
        let mut a = modes_a.to_vec();
        a.sort_unstable();
        if let Some(w) = a.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "mode {} listed twice in subsystem A",
                w[0]
            )));
        }
        if let Some(&bad) = a.iter().find(|&&m| m >= n) {
            return Err(Error::Dimension(format!(
                "mode index {bad} out of range for {n} modes"
            )));
        }
        if a.is_empty() || a.len() == n {
            return Err(Error::InvalidArgument(format!(
                "subsystem A must be a non-empty proper subset of the {n} modes"
            )));
        }
        let b = (0..n).filter(|m| a.binary_search(m).is_err()).collect();
        Ok(Self {
            n,
            modes_a: a,
            modes_b: b,
        })
    }

    /// First `n_a` modes against the rest.
    pub fn leading(n: usize, n_a: usize) -> Result<Self> {
        Self::new(n, &(0..n_a).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modes_a(&self) -> &[usize] {
        &self.modes_a
    }

    pub fn modes_b(&self) -> &[usize] {
        &self.modes_b
    }

    pub fn modes(&self, side: Side) -> &[usize] {
        match side {
            Side::A => &self.modes_a,
            Side::B => &self.modes_b,
        }
    }

    /// Size of the smaller subsystem.
    pub fn min_side(&self) -> usize {
        self.modes_a.len().min(self.modes_b.len())
    }
}
