use super::{elementary_symmetric, InvariantVector};
use crate::error::{Error, Result};
use crate::symplectic::SymplecticSpectrum;
use nalgebra::DMatrix;

/// Allowed `|Im| / |root|` for an accepted root of the invariant polynomial.
const IMAG_REL_TOL: f64 = 1e-6;
/// Relative backward error allowed when the recovered roots are expanded again.
const BACKWARD_REL_TOL: f64 = 1e-6;
/// Relative perturbation assumed on the scaled polynomial coefficients when
/// deciding how far apart the copies of a multiple root may drift.
const COEFF_PERTURBATION: f64 = 1e-13;

/// Symplectic spectrum from the invariants.
///
/// The squared eigenvalues are the roots of
/// `P(x) = sum_j (-1)^j Delta_j x^(n-j)`, found as companion-matrix
/// eigenvalues after scaling `x` by `Delta_n^(1/n)`. A `k`-fold root comes out
/// of the eigensolver as a ring of radius about `eps^(1/k)`; such clusters are
/// replaced by their centroid, and the result is accepted only if expanding
/// the recovered roots reproduces the input.
pub fn spectrum_from_invariants(delta: &InvariantVector) -> Result<SymplecticSpectrum> {
    let n = delta.n();
    if n == 0 {
        return Err(Error::InvalidArgument("no modes to recover".into()));
    }
    let top = delta.get(n);
    if top.is_nan() || top <= 0.0 {
        return Err(Error::InconsistentInvariants(format!(
            "Delta_n = {top} must be positive"
        )));
    }
    let s = top.powf(1.0 / n as f64);
    // monic polynomial in y = x / s: y^n + a_1 y^(n-1) + ... + a_n
    let a: Vec<f64> = (1..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * delta.get(j) / s.powi(j as i32)
        })
        .collect();

    let roots = if n == 1 {
        vec![(-a[0], 0.0)]
    } else {
        let mut companion = DMatrix::zeros(n, n);
        for j in 0..n {
            companion[(0, j)] = -a[j];
        }
        for i in 1..n {
            companion[(i, i - 1)] = 1.0;
        }
        companion
            .complex_eigenvalues()
            .iter()
            .map(|z| (z.re, z.im))
            .collect()
    };

    let mut squares = Vec::with_capacity(n);
    for cluster in cluster_roots(roots) {
        let k = cluster.len() as f64;
        let re = cluster.iter().map(|z| z.0).sum::<f64>() / k;
        let im = cluster.iter().map(|z| z.1).sum::<f64>() / k;
        if im.abs() > IMAG_REL_TOL * re.hypot(im) {
            return Err(Error::InconsistentInvariants(format!(
                "root {re} {im:+}i of the invariant polynomial is not real"
            )));
        }
        if re.is_nan() || re <= 0.0 {
            return Err(Error::InconsistentInvariants(format!(
                "root {re} of the invariant polynomial is not positive"
            )));
        }
        squares.extend(std::iter::repeat_n(re, cluster.len()));
    }

    let rebuilt = elementary_symmetric(&squares);
    for j in 1..=n {
        let target = -a[j - 1] * if j % 2 == 0 { -1.0 } else { 1.0 };
        if (rebuilt[j] - target).abs() > BACKWARD_REL_TOL * rebuilt[j].abs().max(target.abs()) {
            return Err(Error::InconsistentInvariants(format!(
                "recovered roots reproduce Delta_{j} as {} instead of {}",
                rebuilt[j] * s.powi(j as i32),
                delta.get(j)
            )));
        }
    }

    SymplecticSpectrum::new(squares.iter().map(|y| (y * s).sqrt()).collect())
}

/// Groups roots sorted by real part into the largest runs whose diameter is
/// compatible with a multiple root of that size.
fn cluster_roots(mut roots: Vec<(f64, f64)>) -> Vec<Vec<(f64, f64)>> {
    roots.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = Vec::new();
    let mut i = 0;
    while i < roots.len() {
        let mut end = i + 1;
        for j in (i + 1..roots.len()).rev() {
            let group = &roots[i..=j];
            let size = group.len();
            let centre = group.iter().map(|z| z.0).sum::<f64>() / size as f64;
            let radius = 4.0 * COEFF_PERTURBATION.powf(1.0 / size as f64) * centre.abs().max(1.0);
            if diameter(group) <= 2.0 * radius {
                end = j + 1;
                break;
            }
        }
        out.push(roots[i..end].to_vec());
        i = end;
    }
    out
}

fn diameter(group: &[(f64, f64)]) -> f64 {
    let mut d: f64 = 0.0;
    for (k, a) in group.iter().enumerate() {
        for b in &group[k + 1..] {
            d = d.max((a.0 - b.0).hypot(a.1 - b.1));
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_give_vacuum() {
        for n in 1..=6 {
            let d = InvariantVector::from_spectrum(&vec![1.0; n]).unwrap();
            let s = spectrum_from_invariants(&d).unwrap();
            assert_eq!(s.len(), n);
            for v in s.values() {
                assert!((v - 1.0).abs() < 1e-9, "n = {n}: {v}");
            }
        }
    }

    #[test]
    fn quadratic_case() {
        // x^2 - 5x + 4 = (x - 1)(x - 4)
        let d = InvariantVector::new(vec![1.0, 5.0, 4.0]).unwrap();
        let s = spectrum_from_invariants(&d).unwrap();
        assert!((s.values()[0] - 1.0).abs() < 1e-12);
        assert!((s.values()[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_multiplicities() {
        let nus = [1.0, 1.0, 1.5, 3.0, 3.0];
        let d = InvariantVector::from_spectrum(&nus).unwrap();
        let s = spectrum_from_invariants(&d).unwrap();
        for (got, want) in s.values().iter().zip(nus) {
            assert!((got - want).abs() < 1e-6, "{got} vs {want}");
        }
    }

    #[test]
    fn complex_roots_rejected() {
        // x^2 - x + 1 has roots (1 +/- i sqrt 3) / 2
        let d = InvariantVector::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            spectrum_from_invariants(&d),
            Err(Error::InconsistentInvariants(_))
        ));
    }

    #[test]
    fn negative_roots_rejected() {
        // (x + 1)(x - 4) = x^2 - 3x - 4
        let d = InvariantVector::new(vec![1.0, 3.0, -4.0]).unwrap();
        assert!(spectrum_from_invariants(&d).is_err());
        // (x + 1)(x + 2) = x^2 + 3x + 2
        let d = InvariantVector::new(vec![1.0, -3.0, 2.0]).unwrap();
        assert!(spectrum_from_invariants(&d).is_err());
    }
}
