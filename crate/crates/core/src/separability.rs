//! Entanglement detection by positivity of the partial transpose, phrased
//! through the partially transposed invariants and their alternating sums,
//! with the partially transposed symplectic spectrum as the reference test.

use crate::error::{Error, Result};
use crate::invariants::{invariants_charpoly, saturation_sum, InvariantVector};
use crate::symplectic::{
    partial_transpose, physicality, symplectic_spectrum, CovarianceMatrix, ModePartition,
    Physicality, Side, SymplecticSpectrum,
};
use crate::tolerances::Tolerances;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Caller-declared family of the state; never inferred from the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StateClass {
    /// Gaussian state split as one mode against the rest.
    Gaussian1xN,
    /// Gaussian state invariant under mode permutations inside each side.
    BisymmetricGaussianMxN,
    GaussianGeneral,
    Unknown,
}

impl StateClass {
    /// Whether a clean PPT test certifies separability for this class.
    fn ppt_is_sufficient(self) -> bool {
        matches!(self, Self::Gaussian1xN | Self::BisymmetricGaussianMxN)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Gaussian1xN => "gaussian-1xn",
            Self::BisymmetricGaussianMxN => "bisymmetric",
            Self::GaussianGeneral => "gaussian",
            Self::Unknown => "unknown",
        }
    }
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian-1xn" => Ok(Self::Gaussian1xN),
            "bisymmetric" => Ok(Self::BisymmetricGaussianMxN),
            "gaussian" => Ok(Self::GaussianGeneral),
            "unknown" => Ok(Self::Unknown),
            other => Err(Error::InvalidArgument(format!(
                "unknown state class `{other}` (expected unknown, gaussian-1xn, bisymmetric or gaussian)"
            ))),
        }
    }
}

/// Invariants of the partially transposed matrix (subsystem A transposed).
pub fn pt_invariants(
    sigma: &CovarianceMatrix,
    part: &ModePartition,
    tol: &Tolerances,
) -> Result<InvariantVector> {
    invariants_charpoly(&partial_transpose(sigma, part, Side::A)?, tol)
}

/// One level of the saturation hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HierarchyStep {
    pub p: usize,
    pub value: f64,
    pub saturated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaOutcome {
    /// First non-saturated level and its value.
    Decisive { p: usize, value: f64 },
    /// Every level `p < n` vanished within tolerance.
    FullySaturated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaTest {
    pub pt_invariants: InvariantVector,
    /// `max(1, sum_j |Delta~_j|)`; saturation means `|S~_p| <= sat * scale`.
    pub scale: f64,
    pub trail: Vec<HierarchyStep>,
    pub outcome: SigmaOutcome,
}

impl SigmaTest {
    /// `Sigma~`, the level-0 sum.
    pub fn sigma(&self) -> f64 {
        self.trail[0].value
    }

    /// `Some(true)` when the decisive level is negative (PPT violated).
    pub fn violated(&self) -> Option<bool> {
        match self.outcome {
            SigmaOutcome::Decisive { value, .. } => Some(value < 0.0),
            SigmaOutcome::FullySaturated => None,
        }
    }

    pub fn escalated(&self) -> bool {
        !matches!(self.outcome, SigmaOutcome::Decisive { p: 0, .. })
    }
}

/// Tests `Sigma~ >= 0`; when it is saturated, walks `S~_1, S~_2, ...` until a
/// level is clearly non-zero. Levels stop at `p = n - 1`: with all `n`
/// eigenvalues at 1 there is nothing left to decide.
pub fn ppt_sigma_test(
    sigma: &CovarianceMatrix,
    part: &ModePartition,
    tol: &Tolerances,
) -> Result<SigmaTest> {
    sigma_test_from(pt_invariants(sigma, part, tol)?, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumTest {
    pub pt_spectrum: SymplecticSpectrum,
    /// Number of `nu~_j < 1 - phys`.
    pub violations: usize,
}

pub fn ppt_spectrum_test(
    sigma: &CovarianceMatrix,
    part: &ModePartition,
    tol: &Tolerances,
) -> Result<SpectrumTest> {
    ppt_spectrum_test_side(sigma, part, Side::A, tol)
}

fn ppt_spectrum_test_side(
    sigma: &CovarianceMatrix,
    part: &ModePartition,
    side: Side,
    tol: &Tolerances,
) -> Result<SpectrumTest> {
    let pt_spectrum = symplectic_spectrum(&partial_transpose(sigma, part, side)?)?;
    let violations = pt_spectrum
        .values()
        .iter()
        .filter(|&&v| v < 1.0 - tol.phys)
        .count();
    Ok(SpectrumTest {
        pt_spectrum,
        violations,
    })
}

/// At most `min(|A|, |B|)` partially transposed symplectic eigenvalues of a
/// physical state can fall below 1. `false` means something upstream is broken.
pub fn little_lemma_check(
    sigma: &CovarianceMatrix,
    part: &ModePartition,
    tol: &Tolerances,
) -> Result<bool> {
    Ok(ppt_spectrum_test(sigma, part, tol)?.violations <= part.min_side())
}

/// Checks that swapping any two modes inside either subsystem leaves `sigma`
/// unchanged within `sym` (relative to the largest entry).
pub fn assert_bisymmetric(
    sigma: &CovarianceMatrix,
    part: &ModePartition,
    tol: &Tolerances,
) -> Result<()> {
    let scale = sigma.matrix().amax().max(1.0);
    for side in [Side::A, Side::B] {
        let modes = part.modes(side);
        for w in modes.windows(2) {
            let mut order: Vec<usize> = (0..sigma.n()).collect();
            order.swap(w[0], w[1]);
            let swapped = sigma.permute_modes(&order)?;
            let gap = (swapped.matrix() - sigma.matrix()).amax();
            if gap > tol.sym * scale {
                return Err(Error::ClassMismatch(format!(
                    "swapping modes {} and {} changes the matrix by {gap:e}; not bisymmetric",
                    w[0], w[1]
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    Entangled,
    SeparableCertified,
    PptSatisfiedInconclusive,
}

impl Decision {
    pub fn name(self) -> &'static str {
        match self {
            Self::Entangled => "entangled",
            Self::SeparableCertified => "separable-certified",
            Self::PptSatisfiedInconclusive => "ppt-satisfied-inconclusive",
        }
    }
}

/// Which test settled the decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiredAt {
    /// Hierarchy level `p` of the alternating sums.
    Hierarchy(usize),
    PtSpectrum,
    Nothing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparabilityVerdict {
    pub decision: Decision,
    pub class: StateClass,
    pub side: Side,
    pub fired_at: FiredAt,
    /// Signed distance of the deciding quantity from its threshold: the
    /// decisive `S~_p`, or `min nu~ - 1` when only the spectrum fired.
    pub margin: f64,
    pub sigma_test: SigmaTest,
    pub pt_spectrum: SymplecticSpectrum,
    pub violations: usize,
    /// Number of `nu~_j` within `sat` of 1.
    pub unit_eigenvalues: usize,
    /// Set when the alternating sum had to escalate or some `nu~_j` sits in
    /// the saturation band; the two tests may legitimately differ there.
    pub near_saturation: bool,
    pub notes: Vec<String>,
}

/// Transposes subsystem A. See [`classify_side`].
pub fn classify(
    sigma: &CovarianceMatrix,
    part: &ModePartition,
    class: StateClass,
    tol: &Tolerances,
) -> Result<SeparabilityVerdict> {
    classify_side(sigma, part, Side::A, class, tol)
}

/// Runs both PPT tests and assembles the verdict.
///
/// Entangled if either test fires. Otherwise separability is certified only
/// for the two classes where PPT is sufficient and only when the alternating
/// sum reached a decisive level.
pub fn classify_side(
    sigma: &CovarianceMatrix,
    part: &ModePartition,
    side: Side,
    class: StateClass,
    tol: &Tolerances,
) -> Result<SeparabilityVerdict> {
    tol.validate()?;
    let phys = physicality(sigma, tol)?;
    if phys.status == Physicality::Unphysical {
        return Err(Error::Unphysical {
            min_nu: phys.min_nu(),
        });
    }
    match class {
        StateClass::Gaussian1xN if part.min_side() != 1 => {
            return Err(Error::ClassMismatch(format!(
                "class gaussian-1xn needs a one-mode subsystem, partition is {}+{}",
                part.modes_a().len(),
                part.modes_b().len()
            )));
        }
        StateClass::BisymmetricGaussianMxN => assert_bisymmetric(sigma, part, tol)?,
        _ => {}
    }

    let pt = partial_transpose(sigma, part, side)?;
    let sigma_test = sigma_test_from(invariants_charpoly(&pt, tol)?, tol)?;
    let spectrum = ppt_spectrum_test_side(sigma, part, side, tol)?;
    let nu_min = spectrum.pt_spectrum.min();
    let unit_eigenvalues = spectrum
        .pt_spectrum
        .values()
        .iter()
        .filter(|&&v| (v - 1.0).abs() <= tol.sat)
        .count();
    let near_saturation = sigma_test.escalated() || unit_eigenvalues > 0;
    let mut notes = Vec::new();

    if let SigmaOutcome::Decisive { p, .. } = sigma_test.outcome {
        if p != unit_eigenvalues {
            notes.push(format!(
                "hierarchy settled at p = {p} but {unit_eigenvalues} partially transposed \
                 symplectic eigenvalue(s) lie within the saturation band"
            ));
        }
    }

    let sigma_fired = sigma_test.violated() == Some(true);
    if sigma_fired && nu_min > 1.0 + tol.sat {
        return Err(Error::Consistency(format!(
            "alternating sum is negative ({:e}) but the smallest partially transposed \
             symplectic eigenvalue is {nu_min}",
            sigma_test.trail.last().map_or(0.0, |s| s.value)
        )));
    }
    let spectrum_fired = spectrum.violations > 0;

    let (decision, fired_at, margin) = if sigma_fired {
        let SigmaOutcome::Decisive { p, value } = sigma_test.outcome else {
            unreachable!("violated() implies a decisive level")
        };
        if !spectrum_fired {
            notes.push(
                "alternating sum is negative while the smallest partially transposed \
                 symplectic eigenvalue is within tolerance of 1"
                    .into(),
            );
        }
        (Decision::Entangled, FiredAt::Hierarchy(p), value)
    } else if spectrum_fired {
        if spectrum.violations % 2 == 0 {
            notes.push(format!(
                "{} partially transposed symplectic eigenvalues violate PPT; an even count \
                 leaves the alternating sum non-negative",
                spectrum.violations
            ));
        } else {
            notes.push("violation detected by the spectrum only (saturation band)".into());
        }
        (Decision::Entangled, FiredAt::PtSpectrum, nu_min - 1.0)
    } else {
        let margin = match sigma_test.outcome {
            SigmaOutcome::Decisive { value, .. } => value,
            SigmaOutcome::FullySaturated => 0.0,
        };
        let decision = match sigma_test.outcome {
            SigmaOutcome::FullySaturated => {
                notes.push(
                    "all hierarchy levels saturated: every partially transposed symplectic \
                     eigenvalue equals 1 within tolerance"
                        .into(),
                );
                Decision::PptSatisfiedInconclusive
            }
            SigmaOutcome::Decisive { .. } if class.ppt_is_sufficient() => {
                Decision::SeparableCertified
            }
            SigmaOutcome::Decisive { .. } => {
                notes.push(format!(
                    "PPT holds, but for class {class} it is only necessary for separability \
                     (bound entanglement is possible)"
                ));
                Decision::PptSatisfiedInconclusive
            }
        };
        (decision, FiredAt::Nothing, margin)
    };

    Ok(SeparabilityVerdict {
        decision,
        class,
        side,
        fired_at,
        margin,
        sigma_test,
        pt_spectrum: spectrum.pt_spectrum,
        violations: spectrum.violations,
        unit_eigenvalues,
        near_saturation,
        notes,
    })
}

fn sigma_test_from(pt_invariants: InvariantVector, tol: &Tolerances) -> Result<SigmaTest> {
    let scale = pt_invariants.scale();
    let mut trail = Vec::new();
    let mut outcome = SigmaOutcome::FullySaturated;
    for p in 0..pt_invariants.n() {
        let value = saturation_sum(&pt_invariants, p)?;
        let saturated = value.abs() <= tol.sat * scale;
        trail.push(HierarchyStep {
            p,
            value,
            saturated,
        });
        if !saturated {
            outcome = SigmaOutcome::Decisive { p, value };
            break;
        }
    }
    Ok(SigmaTest {
        pt_invariants,
        scale,
        trail,
        outcome,
    })
}
