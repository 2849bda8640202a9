use crate::error::{Error, Result};
use serde::Serialize;

/// Numerical thresholds used throughout the crate.
///
/// `sym` is relative, applied per entry as `sym * max(1, |a|)`. `phys` is the
/// slack allowed below 1 for a symplectic eigenvalue that still counts as
/// physical. `sat` is the width of the band around 1 (or around 0 for the
/// alternating sums) that is treated as saturation. `inv_rel` bounds relative
/// disagreement between invariant computations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub sym: f64,
    pub phys: f64,
    pub sat: f64,
    pub inv_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            sym: 1e-9,
            phys: 1e-9,
            sat: 1e-7,
            inv_rel: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn strict() -> Self {
        Self {
            sym: 1e-12,
            phys: 1e-12,
            sat: 1e-10,
            inv_rel: 1e-10,
        }
    }

    /// Looks up a named preset (`default` or `strict`).
    pub fn profile(name: &str) -> Result<Self> {
        match name.trim() {
            "" | "default" => Ok(Self::default()),
            "strict" => Ok(Self::strict()),
            other => Err(Error::InvalidArgument(format!(
                "unknown tolerance profile `{other}` (expected `default` or `strict`)"
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("sym", self.sym),
            ("phys", self.phys),
            ("sat", self.sat),
            ("inv_rel", self.inv_rel),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "tolerance `{name}` must be a positive finite number, got {v}"
                )));
            }
        }
        if self.sat < self.phys {
            return Err(Error::InvalidArgument(format!(
                "saturation tolerance {} must not be below the physicality tolerance {}",
                self.sat, self.phys
            )));
        }
        Ok(())
    }

    pub fn with_sat(mut self, sat: f64) -> Result<Self> {
        self.sat = sat;
        self.validate()?;
        Ok(self)
    }
}
