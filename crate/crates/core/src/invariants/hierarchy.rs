use super::{binomial, factorial, InvariantVector};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// `Sigma_n = sum_j (-1)^(n+j) Delta_j`, equal to `prod_j (nu_j^2 - 1)`.
pub fn sigma_value(delta: &InvariantVector) -> f64 {
    alternating(delta, 0)
}

/// Order-`p` sum `S_p = sum_{j>=p} (-1)^(n+j) p! C(j, p) Delta_j`.
///
/// `S_0` is [`sigma_value`]. When exactly `p` symplectic eigenvalues equal 1,
/// `S_p` is `p!` times the product of `nu^2 - 1` over the remaining ones.
pub fn saturation_sum(delta: &InvariantVector, p: usize) -> Result<f64> {
    if p > delta.n() {
        return Err(Error::InvalidArgument(format!(
            "saturation order {p} exceeds the mode count {}",
            delta.n()
        )));
    }
    Ok(alternating(delta, p))
}

fn alternating(delta: &InvariantVector, p: usize) -> f64 {
    let n = delta.n();
    let pf = factorial(p);
    (p..=n)
        .map(|j| {
            let sign = if (n + j).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * pf * binomial(j, p) * delta.get(j)
        })
        .sum()
}

/// Invariants of the `n - p` modes left after removing `p` symplectic
/// eigenvalues equal to 1.
///
/// Each step inverts `Delta^n_k = Delta^(n-1)_(k-1) + Delta^(n-1)_k` from the
/// top down. The leading entry that falls out must be 1; a gap larger than the
/// saturation band means the caller's assumption was wrong.
pub fn lower_order_invariants(
    delta: &InvariantVector,
    p: usize,
    tol: &Tolerances,
) -> Result<InvariantVector> {
    let n = delta.n();
    if p > n {
        return Err(Error::InvalidArgument(format!(
            "cannot remove {p} eigenvalues from {n} modes"
        )));
    }
    let scale = delta.scale();
    let mut cur = delta.values().to_vec();
    for step in 1..=p {
        let m = cur.len() - 1;
        let mut next = vec![0.0; m];
        next[m - 1] = cur[m];
        for j in (0..m - 1).rev() {
            next[j] = cur[j + 1] - next[j + 1];
        }
        let gap = (next[0] - 1.0).abs();
        if gap > 2.0 * step as f64 * tol.sat * scale {
            return Err(Error::InconsistentInvariants(format!(
                "removing unit eigenvalue #{step} leaves leading invariant {} instead of 1",
                next[0]
            )));
        }
        next[0] = 1.0;
        cur = next;
    }
    InvariantVector::new(cur)
}
