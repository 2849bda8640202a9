use super::partition::{ModePartition, Side};
use super::spectrum::{symplectic_spectrum, SymplecticSpectrum};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

/// Real symmetric `2n x 2n` second-moment matrix in `xpxp` ordering.
///
/// Construction always goes through [`validate_cm`] or an internal generator
/// that produces an exactly symmetric matrix, so `data` is symmetric bit for
/// bit. Physicality is not part of the type: partially transposed matrices are
/// covariance matrices in this sense too.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    data: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Wraps a matrix the caller knows to be square, even and finite,
    /// averaging it with its transpose.
    pub(crate) fn from_matrix_symmetrized(m: DMatrix<f64>) -> Self {
        let data = (&m + m.transpose()) * 0.5;
        Self { data }
    }

    pub fn n(&self) -> usize {
        self.data.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    /// Row-major copy of the entries.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    /// The `2x2` block coupling modes `j` and `k`.
    pub fn block(&self, j: usize, k: usize) -> [[f64; 2]; 2] {
        let d = &self.data;
        [
            [d[(2 * j, 2 * k)], d[(2 * j, 2 * k + 1)]],
            [d[(2 * j + 1, 2 * k)], d[(2 * j + 1, 2 * k + 1)]],
        ]
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.data.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.min_eigenvalue() > 0.0
    }

    pub fn determinant(&self) -> f64 {
        self.data.clone().lu().determinant()
    }

    /// Congruence `S^T sigma S`. `S` is not checked for symplecticity.
    pub fn congruence(&self, s: &DMatrix<f64>) -> Result<Self> {
        if s.nrows() != self.data.nrows() || s.ncols() != self.data.ncols() {
            return Err(Error::Dimension(format!(
                "congruence by a {}x{} matrix on a {}x{} covariance matrix",
                s.nrows(),
                s.ncols(),
                self.data.nrows(),
                self.data.ncols()
            )));
        }
        Ok(Self::from_matrix_symmetrized(
            s.transpose() * &self.data * s,
        ))
    }

    /// Direct sum `self (+) other`, modes of `other` appended after ours.
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> Self {
        let (a, b) = (self.data.nrows(), other.data.nrows());
        let mut m = DMatrix::zeros(a + b, a + b);
        m.view_mut((0, 0), (a, a)).copy_from(&self.data);
        m.view_mut((a, a), (b, b)).copy_from(&other.data);
        Self { data: m }
    }

    /// Reorders modes: mode `k` of the result is mode `order[k]` of `self`.
    pub fn permute_modes(&self, order: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&m| m >= n || std::mem::replace(&mut seen[m], true))
        {
            return Err(Error::InvalidArgument(format!(
                "{order:?} is not a permutation of 0..{n}"
            )));
        }
        let idx = |a: usize| 2 * order[a / 2] + a % 2;
        let data = DMatrix::from_fn(2 * n, 2 * n, |r, c| self.data[(idx(r), idx(c))]);
        Ok(Self { data })
    }
}

/// Checks shape, finiteness and symmetry of a raw matrix and symmetrizes it.
pub fn validate_cm(raw: &DMatrix<f64>, tol: &Tolerances) -> Result<CovarianceMatrix> {
    let (r, c) = raw.shape();
    if r != c {
        return Err(Error::Dimension(format!("matrix is {r}x{c}, not square")));
    }
    if r == 0 || r % 2 != 0 {
        return Err(Error::Dimension(format!(
            "side {r} is not a positive even number"
        )));
    }
    for j in 0..r {
        for k in 0..r {
            if !raw[(j, k)].is_finite() {
                return Err(Error::NonFinite { row: j, col: k });
            }
        }
    }
    for j in 0..r {
        for k in (j + 1)..r {
            let gap = (raw[(j, k)] - raw[(k, j)]).abs();
            let scale = raw[(j, k)].abs().max(raw[(k, j)].abs()).max(1.0);
            if gap > tol.sym * scale {
                return Err(Error::Symmetry {
                    row: j,
                    col: k,
                    gap,
                });
            }
        }
    }
    Ok(CovarianceMatrix::from_matrix_symmetrized(raw.clone()))
}

/// Physicality status of a covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Physicality {
    Physical,
    MarginallyPhysical,
    Unphysical,
}

impl Physicality {
    pub fn name(self) -> &'static str {
        match self {
            Physicality::Physical => "physical",
            Physicality::MarginallyPhysical => "marginally-physical",
            Physicality::Unphysical => "unphysical",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalityReport {
    pub status: Physicality,
    /// `None` when the matrix is not positive definite.
    pub spectrum: Option<SymplecticSpectrum>,
    pub min_eigenvalue: f64,
    /// Smallest eigenvalue of the Hermitian matrix `sigma + i Omega`.
    pub min_hermitian_eigenvalue: f64,
}

impl PhysicalityReport {
    pub fn min_nu(&self) -> Option<f64> {
        self.spectrum.as_ref().map(|s| s.min())
    }
}

/// Classifies `sigma` by its smallest symplectic eigenvalue and reports the
/// smallest eigenvalue of `sigma + i Omega` alongside as an independent check.
pub fn physicality(sigma: &CovarianceMatrix, tol: &Tolerances) -> Result<PhysicalityReport> {
    let min_eigenvalue = sigma.min_eigenvalue();
    let min_hermitian_eigenvalue = min_hermitian_eigenvalue(sigma);
    if min_eigenvalue <= 0.0 {
        return Ok(PhysicalityReport {
            status: Physicality::Unphysical,
            spectrum: None,
            min_eigenvalue,
            min_hermitian_eigenvalue,
        });
    }
    let spectrum = symplectic_spectrum(sigma)?;
    let nu = spectrum.min();
    let status = if nu > 1.0 + tol.sat {
        Physicality::Physical
    } else if nu >= 1.0 - tol.phys {
        Physicality::MarginallyPhysical
    } else {
        Physicality::Unphysical
    };
    Ok(PhysicalityReport {
        status,
        spectrum: Some(spectrum),
        min_eigenvalue,
        min_hermitian_eigenvalue,
    })
}

/// Smallest eigenvalue of `sigma + i Omega`, through the real symmetric
/// embedding `[[sigma, -Omega], [Omega, sigma]]`.
pub(crate) fn min_hermitian_eigenvalue(sigma: &CovarianceMatrix) -> f64 {
    let d = sigma.data.nrows();
    let w = super::omega(d / 2);
    let mut m = DMatrix::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(&sigma.data);
    m.view_mut((d, d), (d, d)).copy_from(&sigma.data);
    m.view_mut((0, d), (d, d)).copy_from(&(-&w));
    m.view_mut((d, 0), (d, d)).copy_from(&w);
    SymmetricEigen::new(m).eigenvalues.min()
}

/// `T sigma T`, with `T` flipping the momentum of every mode on `side`.
pub fn partial_transpose(
    sigma: &CovarianceMatrix,
    part: &ModePartition,
    side: Side,
) -> Result<CovarianceMatrix> {
    if part.n() != sigma.n() {
        return Err(Error::Dimension(format!(
            "partition covers {} modes, covariance matrix has {}",
            part.n(),
            sigma.n()
        )));
    }
    let mut sign = vec![1.0; 2 * sigma.n()];
    for &m in part.modes(side) {
        sign[2 * m + 1] = -1.0;
    }
    let data = DMatrix::from_fn(sigma.data.nrows(), sigma.data.ncols(), |r, c| {
        sign[r] * sign[c] * sigma.data[(r, c)]
    });
    Ok(CovarianceMatrix { data })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: &[&[f64]]) -> CovarianceMatrix {
        let n = rows.len();
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        validate_cm(
            &DMatrix::from_row_slice(n, n, &flat),
            &Tolerances::default(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_valid() {
        let s = cm(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(s.n(), 1);
        assert_eq!(s.min_eigenvalue(), 1.0);
    }

    #[test]
    fn small_asymmetry_is_averaged() {
        let tol = Tolerances {
            sym: 1e-3,
            ..Tolerances::default()
        };
        let raw = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.49999, 1.0]);
        let s = validate_cm(&raw, &tol).unwrap();
        assert!((s.matrix()[(0, 1)] - 0.499995).abs() < 1e-15);
        assert_eq!(s.matrix()[(0, 1)], s.matrix()[(1, 0)]);
    }

    #[test]
    fn antisymmetric_part_rejected() {
        let raw = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, -2.0, 1.0]);
        assert!(matches!(
            validate_cm(&raw, &Tolerances::default()),
            Err(Error::Symmetry { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn shape_and_finiteness_errors() {
        let tol = Tolerances::default();
        assert!(matches!(
            validate_cm(&DMatrix::identity(3, 3), &tol),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            validate_cm(&DMatrix::zeros(2, 4), &tol),
            Err(Error::Dimension(_))
        ));
        let mut m = DMatrix::identity(2, 2);
        m[(1, 1)] = f64::NAN;
        assert!(matches!(
            validate_cm(&m, &tol),
            Err(Error::NonFinite { row: 1, col: 1 })
        ));
    }

    #[test]
    fn vacuum_is_marginal() {
        let r = physicality(&cm(&[&[1.0, 0.0], &[0.0, 1.0]]), &Tolerances::default()).unwrap();
        assert_eq!(r.status, Physicality::MarginallyPhysical);
        assert!(r.min_hermitian_eigenvalue.abs() < 1e-12);
    }

    #[test]
    fn half_vacuum_is_unphysical() {
        let r = physicality(&cm(&[&[0.5, 0.0], &[0.0, 0.5]]), &Tolerances::default()).unwrap();
        assert_eq!(r.status, Physicality::Unphysical);
        assert!((r.min_nu().unwrap() - 0.5).abs() < 1e-12);
        assert!(r.min_hermitian_eigenvalue < 0.0);
    }

    #[test]
    fn indefinite_matrix_is_unphysical_without_spectrum() {
        let r = physicality(&cm(&[&[1.0, 0.0], &[0.0, -1.0]]), &Tolerances::default()).unwrap();
        assert_eq!(r.status, Physicality::Unphysical);
        assert!(r.spectrum.is_none());
    }

    #[test]
    fn thermal_is_physical() {
        let r = physicality(&cm(&[&[3.0, 0.0], &[0.0, 3.0]]), &Tolerances::default()).unwrap();
        assert_eq!(r.status, Physicality::Physical);
        // sigma + i Omega = [[3, i], [-i, 3]] has eigenvalues 3 -/+ 1
        assert!((r.min_hermitian_eigenvalue - 2.0).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_flips_momentum_correlations() {
        let c = 0.7;
        let s = cm(&[
            &[2.0, 0.0, c, 0.0],
            &[0.0, 2.0, 0.0, -c],
            &[c, 0.0, 2.0, 0.0],
            &[0.0, -c, 0.0, 2.0],
        ]);
        let part = ModePartition::new(2, &[0]).unwrap();
        let t = partial_transpose(&s, &part, Side::A).unwrap();
        assert_eq!(t.block(0, 1), [[c, 0.0], [0.0, c]]);
        assert_eq!(t.block(0, 0), s.block(0, 0));
        assert_eq!(partial_transpose(&t, &part, Side::A).unwrap(), s);
    }

    #[test]
    fn partial_transpose_of_identity() {
        let s = validate_cm(&DMatrix::identity(6, 6), &Tolerances::default()).unwrap();
        let part = ModePartition::new(3, &[1]).unwrap();
        for side in [Side::A, Side::B] {
            assert_eq!(partial_transpose(&s, &part, side).unwrap(), s);
        }
        let wrong = ModePartition::new(2, &[1]).unwrap();
        assert!(matches!(
            partial_transpose(&s, &wrong, Side::A),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn permute_modes_moves_blocks() {
        let s = cm(&[
            &[2.0, 0.1, 0.3, 0.0],
            &[0.1, 3.0, 0.0, 0.4],
            &[0.3, 0.0, 5.0, 0.2],
            &[0.0, 0.4, 0.2, 7.0],
        ]);
        let p = s.permute_modes(&[1, 0]).unwrap();
        assert_eq!(p.block(0, 0), s.block(1, 1));
        assert_eq!(p.block(0, 1), s.block(1, 0));
        assert!(s.permute_modes(&[0, 0]).is_err());
    }
}
