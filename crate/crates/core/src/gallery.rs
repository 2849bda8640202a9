//! Closed-form states: two-mode squeezed, thermal, and the noisy GHZ-type
//! family with its analytic partially transposed invariants and separability
//! threshold under the `n | n` bipartition.

use crate::error::{Error, Result};
use crate::invariants::{binomial, InvariantVector};
use crate::symplectic::{validate_cm, CovarianceMatrix, ModePartition};
use crate::tolerances::Tolerances;
use nalgebra::DMatrix;
use serde::Serialize;

pub const MAX_SQUEEZING: f64 = 10.0;
pub const MAX_HALF_MODES: usize = 16;

/// Largest accepted noise factor, `e^20`.
pub fn max_noise() -> f64 {
    20f64.exp()
}

fn check_squeezing(r: f64) -> Result<()> {
    if !(r.is_finite() && (0.0..=MAX_SQUEEZING).contains(&r)) {
        return Err(Error::InvalidArgument(format!(
            "squeezing r = {r} outside [0, {MAX_SQUEEZING}]"
        )));
    }
    Ok(())
}

fn check_noise(q: f64) -> Result<()> {
    if !(q.is_finite() && q >= 1.0 && q <= max_noise()) {
        return Err(Error::InvalidArgument(format!(
            "noise factor q = {q} outside [1, e^20]"
        )));
    }
    Ok(())
}

/// Noisy GHZ-type state on `2 * half_modes` modes: squeezing `r`, covariance
/// matrix multiplied by `q` (mean thermal photon number `q - 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GhzParams {
    half_modes: usize,
    r: f64,
    q: f64,
}

impl GhzParams {
    pub fn new(half_modes: usize, r: f64, q: f64) -> Result<Self> {
        if half_modes == 0 || half_modes > MAX_HALF_MODES {
            return Err(Error::InvalidArgument(format!(
                "half-mode count {half_modes} outside [1, {MAX_HALF_MODES}]"
            )));
        }
        check_squeezing(r)?;
        check_noise(q)?;
        Ok(Self { half_modes, r, q })
    }

    /// Same state with the noise given as a mean thermal photon number.
    pub fn with_photons(half_modes: usize, r: f64, mean_photons: f64) -> Result<Self> {
        Self::new(half_modes, r, 1.0 + mean_photons)
    }

    pub fn half_modes(&self) -> usize {
        self.half_modes
    }

    pub fn modes(&self) -> usize {
        2 * self.half_modes
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

pub fn ghz_cm(p: &GhzParams) -> CovarianceMatrix {
    let modes = p.modes();
    let m = modes as f64;
    let (ep, em) = ((2.0 * p.r).exp(), (-2.0 * p.r).exp());
    let xx = p.q * (ep + (m - 1.0) * em) / m;
    let pp = p.q * ((m - 1.0) * ep + em) / m;
    let c = p.q * (2.0 * p.r).sinh() / p.half_modes as f64;
    let data = DMatrix::from_fn(2 * modes, 2 * modes, |a, b| {
        let quad = a % 2;
        if quad != b % 2 {
            return 0.0;
        }
        match (a / 2 == b / 2, quad) {
            (true, 0) => xx,
            (true, _) => pp,
            (false, 0) => c,
            (false, _) => -c,
        }
    });
    CovarianceMatrix::from_matrix_symmetrized(data)
}

/// First `half_modes` modes against the last `half_modes`.
pub fn ghz_partition(p: &GhzParams) -> ModePartition {
    ModePartition::leading(p.modes(), p.half_modes).expect("even split of at least two modes")
}

/// Integer coefficients `g_0, ..., g_2n` of the analytic invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GhzCoefficients {
    values: Vec<i128>,
}

impl GhzCoefficients {
    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn get(&self, j: usize) -> i128 {
        self.values[j]
    }
}

fn overflow() -> Error {
    Error::NumericalConsistency("integer overflow in GHZ coefficients".into())
}

/// Row `2n` of Pascal's triangle, exact.
fn binomial_row(m: usize) -> Result<Vec<i128>> {
    let mut row = vec![1i128];
    for _ in 0..m {
        let mut next = vec![1i128; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1].checked_add(row[k]).ok_or_else(overflow)?;
        }
        row = next;
    }
    Ok(row)
}

/// Computes `g_j` twice, from the explicit alternating sum
/// `g_j = 2 sum_{k<j} (-1)^(j-1-k) (j-k) C(2n, k)` and from the recursion
/// `g_j = 2 (C(2n, j-1) - g_(j-1)) - g_(j-2)` with `g_0 = 0`, `g_1 = 2`, and
/// insists they agree exactly.
pub fn ghz_coefficients(half_modes: usize) -> Result<GhzCoefficients> {
    if half_modes == 0 || half_modes > MAX_HALF_MODES {
        return Err(Error::InvalidArgument(format!(
            "half-mode count {half_modes} outside [1, {MAX_HALF_MODES}]"
        )));
    }
    let m = 2 * half_modes;
    let c = binomial_row(m)?;

    let mut explicit = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let mut g = 0i128;
        for (k, ck) in c.iter().enumerate().take(j) {
            let t = ck.checked_mul((j - k) as i128).ok_or_else(overflow)?;
            g = if (j - 1 - k) % 2 == 0 {
                g.checked_add(t)
            } else {
                g.checked_sub(t)
            }
            .ok_or_else(overflow)?;
        }
        explicit.push(g.checked_mul(2).ok_or_else(overflow)?);
    }

    let mut recursive = vec![0i128, 2];
    for j in 2..=m {
        let g = c[j - 1]
            .checked_sub(recursive[j - 1])
            .and_then(|v| v.checked_mul(2))
            .and_then(|v| v.checked_sub(recursive[j - 2]))
            .ok_or_else(overflow)?;
        recursive.push(g);
    }

    if explicit != recursive {
        return Err(Error::NumericalConsistency(format!(
            "GHZ coefficients disagree: explicit {explicit:?}, recursive {recursive:?}"
        )));
    }
    Ok(GhzCoefficients { values: explicit })
}

/// Analytic partially transposed invariants of the GHZ-type state under the
/// even bipartition: `q^(2j) [(C(2n, j) - g_j) + g_j cosh 4r]`.
pub fn ghz_pt_invariants(p: &GhzParams) -> Result<InvariantVector> {
    let m = p.modes();
    let g = ghz_coefficients(p.half_modes)?;
    let ch = (4.0 * p.r).cosh();
    let q2 = p.q * p.q;
    let values = (0..=m)
        .map(|j| {
            let gj = g.get(j) as f64;
            q2.powi(j as i32) * ((binomial(m, j) - gj) + gj * ch)
        })
        .collect();
    InvariantVector::new(values)
}

/// Alternating sum of the analytic PT invariants; negative iff `q < e^(2r)`.
pub fn ghz_separability_margin(p: &GhzParams) -> Result<f64> {
    let d = ghz_pt_invariants(p)?;
    Ok(d.values()
        .iter()
        .enumerate()
        .map(|(j, v)| if j % 2 == 0 { *v } else { -v })
        .sum())
}

pub fn ghz_threshold(r: f64) -> f64 {
    (2.0 * r).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdScan {
    pub q_star: f64,
    pub iterations: usize,
}

/// Bisects `q -> margin` on `[1, q_max]` down to a bracket of relative width
/// `rel_tol`. The margin is never positive below the threshold, so the lower
/// end keeps `margin <= 0` and the upper end `margin > 0`.
pub fn find_threshold(
    half_modes: usize,
    r: f64,
    q_max: f64,
    rel_tol: f64,
) -> Result<ThresholdScan> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "bisection tolerance {rel_tol} outside (0, 1)"
        )));
    }
    let margin =
        |q: f64| GhzParams::new(half_modes, r, q).and_then(|p| ghz_separability_margin(&p));
    if margin(q_max)? <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "margin is not positive at q_max = {q_max}; no separability threshold below it"
        )));
    }
    let (mut lo, mut hi) = (1.0, q_max);
    let mut iterations = 0;
    while hi - lo > rel_tol * hi && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if margin(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(ThresholdScan {
        q_star: 0.5 * (lo + hi),
        iterations,
    })
}

/// Two-mode squeezed thermal state with noise factor `q`.
pub fn two_mode_squeezed(r: f64, q: f64) -> Result<CovarianceMatrix> {
    check_squeezing(r)?;
    check_noise(q)?;
    let (a, c) = (q * (2.0 * r).cosh(), q * (2.0 * r).sinh());
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        a, 0.0, c, 0.0,
        0.0, a, 0.0, -c,
        c, 0.0, a, 0.0,
        0.0, -c, 0.0, a,
    ]);
    validate_cm(&m, &Tolerances::default())
}

/// Product of thermal states, `diag(nu1, nu1, ..., nun, nun)`.
pub fn thermal(nus: &[f64]) -> Result<CovarianceMatrix> {
    if nus.is_empty() {
        return Err(Error::InvalidArgument(
            "thermal state needs at least one mode".into(),
        ));
    }
    if let Some(v) = nus.iter().find(|v| !(v.is_finite() && **v >= 1.0)) {
        return Err(Error::InvalidArgument(format!(
            "thermal symplectic eigenvalue {v} is below 1"
        )));
    }
    let d = nalgebra::DVector::from_iterator(2 * nus.len(), nus.iter().flat_map(|&v| [v, v]));
    validate_cm(&DMatrix::from_diagonal(&d), &Tolerances::default())
}

pub fn vacuum(n: usize) -> Result<CovarianceMatrix> {
    thermal(&vec![1.0; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_single_pair_is_tmsv() {
        for &(r, q) in &[(0.0, 1.0), (0.3, 1.0), (0.7, 2.5)] {
            let g = ghz_cm(&GhzParams::new(1, r, q).unwrap());
            let t = two_mode_squeezed(r, q).unwrap();
            assert!((g.matrix() - t.matrix()).amax() < 1e-14);
        }
    }

    #[test]
    fn unsqueezed_ghz_is_thermal() {
        let g = ghz_cm(&GhzParams::new(3, 0.0, 1.7).unwrap());
        assert!((g.matrix() - DMatrix::identity(12, 12) * 1.7).amax() < 1e-15);
    }

    #[test]
    fn coefficient_boundary_values() {
        for n in 1..=MAX_HALF_MODES {
            let g = ghz_coefficients(n).unwrap();
            assert_eq!(g.get(0), 0);
            assert_eq!(g.get(1), 2);
            assert_eq!(g.get(2), 4 * n as i128 - 4);
            assert_eq!(g.values().len(), 2 * n + 1);
        }
        assert_eq!(ghz_coefficients(1).unwrap().values(), &[0, 2, 0]);
        assert_eq!(ghz_coefficients(2).unwrap().values(), &[0, 2, 4, 2, 0]);
        assert_eq!(
            ghz_coefficients(3).unwrap().values(),
            &[0, 2, 8, 12, 8, 2, 0]
        );
        assert!(ghz_coefficients(0).is_err());
    }

    #[test]
    fn single_pair_pt_invariants() {
        let (r, q): (f64, f64) = (0.4, 1.3);
        let d = ghz_pt_invariants(&GhzParams::new(1, r, q).unwrap()).unwrap();
        assert!((d.get(1) - 2.0 * q * q * (4.0 * r).cosh()).abs() < 1e-13);
        assert!((d.get(2) - q.powi(4)).abs() < 1e-13);
    }

    #[test]
    fn unsqueezed_pt_invariants_are_thermal() {
        let q: f64 = 1.4;
        let d = ghz_pt_invariants(&GhzParams::new(3, 0.0, q).unwrap()).unwrap();
        for j in 0..=6 {
            let want = q.powi(2 * j as i32) * binomial(6, j);
            assert!((d.get(j) - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn margin_closed_form_single_pair() {
        let m = ghz_separability_margin(&GhzParams::new(1, 0.5, 1.0).unwrap()).unwrap();
        assert!((m - (2.0 - 2.0 * 2f64.cosh())).abs() < 1e-12);
        assert!((m + 5.524391382167263).abs() < 1e-9);
    }

    #[test]
    fn margin_vanishes_at_threshold() {
        for n in 1..=3 {
            for &r in &[0.2, 0.5, 1.0] {
                let p = GhzParams::new(n, r, ghz_threshold(r)).unwrap();
                let scale = ghz_pt_invariants(&p).unwrap().scale();
                assert!(ghz_separability_margin(&p).unwrap().abs() <= 1e-8 * scale);
            }
        }
    }

    #[test]
    fn noisy_side_is_positive() {
        for n in 1..=3 {
            assert!(ghz_separability_margin(&GhzParams::new(n, 0.1, 2.0).unwrap()).unwrap() > 0.0);
        }
    }

    #[test]
    fn parameter_guards() {
        assert!(GhzParams::new(1, -0.1, 1.0).is_err());
        assert!(GhzParams::new(1, 10.5, 1.0).is_err());
        assert!(GhzParams::new(1, 0.5, 0.99).is_err());
        assert!(GhzParams::new(1, 0.5, 21f64.exp()).is_err());
        assert!(GhzParams::new(0, 0.5, 1.0).is_err());
        assert_eq!(GhzParams::with_photons(2, 0.5, 0.25).unwrap().q(), 1.25);
        assert!(two_mode_squeezed(0.5, 0.5).is_err());
        assert!(thermal(&[1.0, 0.9]).is_err());
    }

    #[test]
    fn tmsv_unsqueezed_and_vacuum() {
        assert_eq!(
            two_mode_squeezed(0.0, 2.0).unwrap().matrix(),
            &(DMatrix::identity(4, 4) * 2.0)
        );
        assert_eq!(vacuum(3).unwrap().matrix(), &DMatrix::<f64>::identity(6, 6));
    }

    #[test]
    fn pure_tmsv_has_unit_determinant() {
        for &r in &[0.1, 0.5, 1.2] {
            assert!((two_mode_squeezed(r, 1.0).unwrap().determinant() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn bisection_finds_threshold() {
        let scan = find_threshold(1, 0.5, 100.0, 1e-13).unwrap();
        assert!((scan.q_star / 1f64.exp() - 1.0).abs() < 1e-10);
        assert!(find_threshold(1, 2.0, 10.0, 1e-12).is_err());
    }
}
