use super::InvariantVector;
use crate::error::{Error, Result};
use crate::symplectic::CovarianceMatrix;
use nalgebra::DMatrix;

/// Enumeration cost grows like `C(2n, n)` determinants.
pub const BLOCK_MINOR_MAX_MODES: usize = 8;

/// Invariants as sums of determinants of all `2k x 2k` submatrices assembled
/// from `2x2` mode blocks, over every pair of ordered `k`-subsets of modes
/// (rows and columns chosen independently).
///
/// Independent of the characteristic-polynomial route; used as its oracle.
pub fn invariants_blockminors(sigma: &CovarianceMatrix) -> Result<InvariantVector> {
    let n = sigma.n();
    if n > BLOCK_MINOR_MAX_MODES {
        return Err(Error::Capacity {
            n,
            max: BLOCK_MINOR_MAX_MODES,
        });
    }
    let m = sigma.matrix();
    let mut values = vec![1.0];
    for k in 1..=n {
        let subsets = k_subsets(n, k);
        let mut total = 0.0;
        for rows in &subsets {
            for cols in &subsets {
                let sub = DMatrix::from_fn(2 * k, 2 * k, |r, c| {
                    m[(2 * rows[r / 2] + r % 2, 2 * cols[c / 2] + c % 2)]
                });
                total += sub.lu().determinant();
            }
        }
        values.push(total);
    }
    InvariantVector::new(values)
}

/// All increasing `k`-subsets of `0..n`, lexicographic.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
