#![allow(dead_code)]

pub mod cli;

use cvsep::symplectic::{
    random_physical_cm, random_symplectic, validate_cm, CovarianceMatrix, SampledState,
};
use cvsep::Tolerances;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const NU_MAX: f64 = 4.0;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Depth of random symplectics: deep enough to mix every mode, shallow enough
/// to keep the condition number of the result around 1e6 or below.
pub fn depth(n: usize) -> usize {
    5 * n
}

pub fn sample(n: usize, rng: &mut ChaCha8Rng) -> SampledState {
    random_physical_cm(n, rng, 1.0, NU_MAX, depth(n)).unwrap()
}

pub fn symplectic(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    random_symplectic(n, rng, depth(n)).unwrap()
}

/// `S_A (+) S_B` for the leading `n_a` modes and the rest.
pub fn local_symplectic(n_a: usize, n_b: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let sa = symplectic(n_a, rng);
    let sb = symplectic(n_b, rng);
    let mut s = DMatrix::zeros(2 * (n_a + n_b), 2 * (n_a + n_b));
    s.view_mut((0, 0), (2 * n_a, 2 * n_a)).copy_from(&sa);
    s.view_mut((2 * n_a, 2 * n_a), (2 * n_b, 2 * n_b))
        .copy_from(&sb);
    s
}

/// `S^T diag(nu_1, nu_1, ...) S` for a fixed `S`.
pub fn from_spectrum(nus: &[f64], s: &DMatrix<f64>) -> CovarianceMatrix {
    let d = 2 * nus.len();
    let normal = DMatrix::from_fn(d, d, |r, c| if r == c { nus[r / 2] } else { 0.0 });
    validate_cm(&(s.transpose() * normal * s), &Tolerances::default()).unwrap()
}

pub fn rel_gap(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(f64::MIN_POSITIVE)
}

/// Cycles through pure states, nearly pure states and the full `[1, NU_MAX]`
/// range so that boundary cases (`Sigma = 0`, `nu~ = 1`) are exercised.
pub fn sample_mixed(n: usize, k: usize, rng: &mut ChaCha8Rng) -> SampledState {
    let nu_max = [1.0, 1.05, NU_MAX][k % 3];
    random_physical_cm(n, rng, 1.0, nu_max, depth(n)).unwrap()
}
