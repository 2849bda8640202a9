//! Report documents emitted by the command-line tool.

use super::document::{Ingested, Ordering};
use super::json::fmt_f64;
use crate::gallery::{GhzCoefficients, ThresholdScan};
use crate::invariants::InvariantVector;
use crate::separability::{FiredAt, SeparabilityVerdict, SigmaOutcome};
use crate::symplectic::{ModePartition, Physicality, PhysicalityReport, Side};
use crate::tolerances::Tolerances;
use serde::Serialize;
use std::fmt::Write;

pub const SCHEMA_VERSION: u32 = 1;

pub fn tool_version() -> String {
    format!("cvsep {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub physicality: Option<PhysicalitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ghz: Option<GhzSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<SeparabilityVerdict>,
}

impl Report {
    pub fn new(command: &'static str, tol: Tolerances) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            tool: tool_version(),
            command,
            input: None,
            tolerances: tol,
            physicality: None,
            invariants: None,
            ghz: None,
            scan: None,
            verdict: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub label: Option<String>,
    pub n: usize,
    pub ordering: Ordering,
    pub hbar: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionEcho>,
}

impl InputEcho {
    pub fn from_ingested(ing: &Ingested) -> Self {
        Self {
            label: ing.label.clone(),
            n: ing.n,
            ordering: ing.ordering,
            hbar: ing.hbar,
            partition: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionEcho {
    pub modes_a: Vec<usize>,
    pub modes_b: Vec<usize>,
    pub transposed: Side,
}

impl PartitionEcho {
    pub fn new(part: &ModePartition, side: Side) -> Self {
        Self {
            modes_a: part.modes_a().to_vec(),
            modes_b: part.modes_b().to_vec(),
            transposed: side,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhysicalitySection {
    pub status: Physicality,
    pub min_nu: Option<f64>,
    pub spectrum: Option<Vec<f64>>,
    pub min_eigenvalue: f64,
    pub min_hermitian_eigenvalue: f64,
}

impl From<&PhysicalityReport> for PhysicalitySection {
    fn from(r: &PhysicalityReport) -> Self {
        Self {
            status: r.status,
            min_nu: r.min_nu(),
            spectrum: r.spectrum.as_ref().map(|s| s.values().to_vec()),
            min_eigenvalue: r.min_eigenvalue,
            min_hermitian_eigenvalue: r.min_hermitian_eigenvalue,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantSection {
    pub charpoly: InvariantVector,
    /// Present when the mode count is small enough for the enumeration.
    pub block_minors: Option<InvariantVector>,
    pub max_rel_diff: Option<f64>,
    pub sigma: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GhzSection {
    pub half_modes: usize,
    pub r: f64,
    pub q: f64,
    pub mean_photons: f64,
    pub threshold: f64,
    pub margin: f64,
    pub g_coefficients: GhzCoefficients,
    pub analytic_pt_invariants: InvariantVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSection {
    pub half_modes: usize,
    pub r: f64,
    pub q_max: f64,
    pub tol: f64,
    pub q_star: f64,
    pub threshold: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub iterations: usize,
}

impl ScanSection {
    pub fn new(
        half_modes: usize,
        r: f64,
        q_max: f64,
        tol: f64,
        scan: &ThresholdScan,
        threshold: f64,
    ) -> Self {
        Self {
            half_modes,
            r,
            q_max,
            tol,
            q_star: scan.q_star,
            threshold,
            abs_error: (scan.q_star - threshold).abs(),
            rel_error: (scan.q_star / threshold - 1.0).abs(),
            iterations: scan.iterations,
        }
    }
}

fn list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| fmt_f64(*v))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Plain-text rendering of a report.
pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", r.tool, r.command);
    if let Some(i) = &r.input {
        let label = i.label.as_deref().unwrap_or("-");
        let _ = writeln!(
            s,
            "input: label {label}, {} modes, ordering {}, hbar {}",
            i.n, i.ordering, i.hbar
        );
        if let Some(p) = &i.partition {
            let _ = writeln!(
                s,
                "partition: A = {:?}, B = {:?}, transposed {:?}",
                p.modes_a, p.modes_b, p.transposed
            );
        }
    }
    if let Some(p) = &r.physicality {
        let _ = writeln!(s, "physicality: {}", p.status.name());
        match p.min_nu {
            Some(nu) => {
                let _ = writeln!(s, "min symplectic eigenvalue: {}", fmt_f64(nu));
            }
            None => {
                let _ = writeln!(
                    s,
                    "min symplectic eigenvalue: undefined (not positive definite)"
                );
            }
        }
        if let Some(sp) = &p.spectrum {
            let _ = writeln!(s, "symplectic spectrum: [{}]", list(sp));
        }
        let _ = writeln!(s, "min eigenvalue of sigma: {}", fmt_f64(p.min_eigenvalue));
        let _ = writeln!(
            s,
            "min eigenvalue of sigma + i Omega: {}",
            fmt_f64(p.min_hermitian_eigenvalue)
        );
    }
    if let Some(inv) = &r.invariants {
        let _ = writeln!(
            s,
            "invariants (charpoly): [{}]",
            list(inv.charpoly.values())
        );
        if let Some(bm) = &inv.block_minors {
            let _ = writeln!(s, "invariants (block minors): [{}]", list(bm.values()));
        }
        if let Some(d) = inv.max_rel_diff {
            let _ = writeln!(s, "max relative difference: {}", fmt_f64(d));
        }
        let _ = writeln!(s, "Sigma: {}", fmt_f64(inv.sigma));
    }
    if let Some(g) = &r.ghz {
        let _ = writeln!(
            s,
            "ghz: {} + {} modes, r {}, q {}",
            g.half_modes,
            g.half_modes,
            fmt_f64(g.r),
            fmt_f64(g.q)
        );
        let _ = writeln!(
            s,
            "analytic PT invariants: [{}]",
            list(g.analytic_pt_invariants.values())
        );
        let _ = writeln!(s, "analytic margin: {}", fmt_f64(g.margin));
        let _ = writeln!(s, "threshold e^(2r): {}", fmt_f64(g.threshold));
    }
    if let Some(sc) = &r.scan {
        let _ = writeln!(
            s,
            "{:>10}  {:>24}  {:>24}  {:>24}  {:>24}",
            "half_modes", "r", "q*", "e^(2r)", "|q* - e^(2r)|"
        );
        let _ = writeln!(
            s,
            "{:>10}  {:>24}  {:>24}  {:>24}  {:>24}",
            sc.half_modes,
            fmt_f64(sc.r),
            fmt_f64(sc.q_star),
            fmt_f64(sc.threshold),
            fmt_f64(sc.abs_error)
        );
        let _ = writeln!(
            s,
            "relative error: {}, bisection steps: {}",
            fmt_f64(sc.rel_error),
            sc.iterations
        );
    }
    if let Some(v) = &r.verdict {
        let _ = writeln!(
            s,
            "PT invariants: [{}]",
            list(v.sigma_test.pt_invariants.values())
        );
        for step in &v.sigma_test.trail {
            let _ = writeln!(
                s,
                "  S~_{} = {}{}",
                step.p,
                fmt_f64(step.value),
                if step.saturated { "  (saturated)" } else { "" }
            );
        }
        if v.sigma_test.outcome == SigmaOutcome::FullySaturated {
            let _ = writeln!(s, "  all levels saturated");
        }
        let _ = writeln!(
            s,
            "PT symplectic spectrum: [{}]",
            list(v.pt_spectrum.values())
        );
        let _ = writeln!(s, "PT violations: {}", v.violations);
        let fired = match v.fired_at {
            FiredAt::Hierarchy(p) => format!("hierarchy p = {p}"),
            FiredAt::PtSpectrum => "PT spectrum".into(),
            FiredAt::Nothing => "none".into(),
        };
        let _ = writeln!(
            s,
            "verdict: {} (class {}, fired at {fired}, margin {})",
            v.decision.name(),
            v.class,
            fmt_f64(v.margin)
        );
        for note in &v.notes {
            let _ = writeln!(s, "note: {note}");
        }
    }
    s
}
