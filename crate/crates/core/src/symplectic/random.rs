use super::cm::CovarianceMatrix;
use super::spectrum::SymplecticSpectrum;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use rand::Rng;

/// Random symplectic matrix built from `depth` elementary factors.
///
/// Each factor is a single-mode rotation, a single-mode squeezer
/// `diag(e^z, e^-z)` with `|z| <= 1`, or (for `n >= 2`) a beam splitter
/// mixing a random pair of modes.
pub fn random_symplectic<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    depth: usize,
) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "random symplectic needs at least one mode".into(),
        ));
    }
    let mut s = DMatrix::identity(2 * n, 2 * n);
    let kinds = if n >= 2 { 3 } else { 2 };
    for _ in 0..depth {
        let i = rng.random_range(0..n);
        match rng.random_range(0..kinds) {
            0 => {
                let theta = rng.random_range(0.0..std::f64::consts::TAU);
                mix_columns(&mut s, 2 * i, 2 * i + 1, theta);
            }
            1 => {
                let z: f64 = rng.random_range(-1.0..=1.0);
                s.column_mut(2 * i).scale_mut(z.exp());
                s.column_mut(2 * i + 1).scale_mut((-z).exp());
            }
            _ => {
                let j = (i + rng.random_range(1..n)) % n;
                let theta = rng.random_range(0.0..std::f64::consts::TAU);
                mix_columns(&mut s, 2 * i, 2 * j, theta);
                mix_columns(&mut s, 2 * i + 1, 2 * j + 1, theta);
            }
        }
    }
    Ok(s)
}

/// Right-multiplies `s` by the rotation `[[c, s], [-s, c]]` acting on columns `a`, `b`.
fn mix_columns(s: &mut DMatrix<f64>, a: usize, b: usize, theta: f64) {
    let (sn, cs) = theta.sin_cos();
    for r in 0..s.nrows() {
        let (x, y) = (s[(r, a)], s[(r, b)]);
        s[(r, a)] = cs * x - sn * y;
        s[(r, b)] = sn * x + cs * y;
    }
}

/// A generated covariance matrix together with the spectrum it was built from.
#[derive(Debug, Clone)]
pub struct SampledState {
    pub cm: CovarianceMatrix,
    pub spectrum: SymplecticSpectrum,
}

/// `S^T diag(nu1, nu1, ..., nun, nun) S` with `nu_j` uniform in `[nu_min, nu_max]`.
pub fn random_physical_cm<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    nu_min: f64,
    nu_max: f64,
    depth: usize,
) -> Result<SampledState> {
    if !(nu_min >= 1.0 && nu_max >= nu_min && nu_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "symplectic eigenvalue range [{nu_min}, {nu_max}] must satisfy 1 <= min <= max"
        )));
    }
    let nus: Vec<f64> = (0..n)
        .map(|_| {
            if nu_max > nu_min {
                rng.random_range(nu_min..=nu_max)
            } else {
                nu_min
            }
        })
        .collect();
    let s = random_symplectic(n, rng, depth)?;
    let normal = DMatrix::from_fn(2 * n, 2 * n, |r, c| if r == c { nus[r / 2] } else { 0.0 });
    let cm = CovarianceMatrix::from_matrix_symmetrized(s.transpose() * normal * &s);
    Ok(SampledState {
        cm,
        spectrum: SymplecticSpectrum::new(nus)?,
    })
}
