//! Covariance-matrix input files: a JSON document or a bare CSV matrix.

use crate::error::Error;
use crate::symplectic::{validate_cm, CovarianceMatrix};
use crate::tolerances::Tolerances;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Quadrature ordering of an input matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    /// `(x1, p1, x2, p2, ...)`, the internal convention.
    #[default]
    Xpxp,
    /// `(x1, ..., xn, p1, ..., pn)`.
    Xxpp,
}

impl FromStr for Ordering {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "xpxp" => Ok(Self::Xpxp),
            "xxpp" => Ok(Self::Xxpp),
            other => Err(format!(
                "unknown ordering `{other}` (expected xpxp or xxpp)"
            )),
        }
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Xpxp => "xpxp",
            Self::Xxpp => "xxpp",
        })
    }
}

fn default_hbar() -> f64 {
    2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CmDocument {
    pub n: usize,
    #[serde(default)]
    pub ordering: Ordering,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
    pub matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Problems reading an input file; rendered with line/column where known.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub message: String,
    pub line: Option<u64>,
    pub column: Option<u64>,
}

impl InputError {
    fn plain(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            line: None,
            column: None,
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self::plain(e.to_string())
    }
}

/// What was read, before ordering and hbar overrides are applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RawInput {
    pub matrix: Vec<Vec<f64>>,
    pub ordering: Option<Ordering>,
    pub hbar: Option<f64>,
    pub label: Option<String>,
    pub declared_n: Option<usize>,
}

pub fn read_input(path: &Path) -> Result<RawInput, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::plain(format!("cannot read {}: {e}", path.display())))?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || text.trim_start().starts_with('{');
    if is_json {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}

pub fn parse_json(text: &str) -> Result<RawInput, InputError> {
    let doc: CmDocument = serde_json::from_str(text).map_err(|e| InputError {
        message: e.to_string(),
        line: Some(e.line() as u64),
        column: Some(e.column() as u64),
    })?;
    if doc.matrix.len() != 2 * doc.n {
        return Err(InputError::plain(format!(
            "declared n = {} needs a {}x{} matrix, found {} rows",
            doc.n,
            2 * doc.n,
            2 * doc.n,
            doc.matrix.len()
        )));
    }
    Ok(RawInput {
        matrix: doc.matrix,
        ordering: Some(doc.ordering),
        hbar: Some(doc.hbar),
        label: doc.label,
        declared_n: Some(doc.n),
    })
}

/// Bare matrix, one row per line, comma separated; `#` starts a comment line.
pub fn parse_csv(text: &str) -> Result<RawInput, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut matrix = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| InputError {
            message: e.to_string(),
            line: e.position().map(|p| p.line()),
            column: None,
        })?;
        let line = record.position().map(|p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(k, field)| {
                field.parse::<f64>().map_err(|_| InputError {
                    message: format!("`{field}` is not a number"),
                    line,
                    column: Some(k as u64 + 1),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        matrix.push(row);
    }
    if matrix.is_empty() {
        return Err(InputError::plain("no matrix rows found"));
    }
    Ok(RawInput {
        matrix,
        ordering: None,
        hbar: None,
        label: None,
        declared_n: None,
    })
}

/// Effective ingestion settings after command-line overrides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ingested {
    #[serde(skip)]
    pub cm: CovarianceMatrix,
    pub label: Option<String>,
    pub n: usize,
    pub ordering: Ordering,
    pub hbar: f64,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

/// Applies ordering conversion and hbar rescaling, then validates.
pub fn ingest(
    raw: RawInput,
    ordering_flag: Option<Ordering>,
    hbar_flag: Option<f64>,
    tol: &Tolerances,
) -> Result<Ingested, InputError> {
    let mut warnings = Vec::new();
    let side = raw.matrix.len();
    if let Some((i, row)) = raw.matrix.iter().enumerate().find(|(_, r)| r.len() != side) {
        return Err(InputError::plain(format!(
            "row {} has {} entries, expected {side}",
            i + 1,
            row.len()
        )));
    }
    let ordering = match (ordering_flag, raw.ordering) {
        (Some(flag), Some(doc)) if flag != doc => {
            warnings.push(format!(
                "--ordering {flag} overrides the document's ordering {doc}"
            ));
            flag
        }
        (Some(flag), _) => flag,
        (None, Some(doc)) => doc,
        (None, None) => {
            warnings.push("no ordering given for a bare matrix; assuming xpxp".into());
            Ordering::Xpxp
        }
    };
    let hbar = hbar_flag.or(raw.hbar).unwrap_or_else(default_hbar);
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(InputError::plain(format!(
            "hbar must be positive, got {hbar}"
        )));
    }

    let flat: Vec<f64> = raw.matrix.iter().flatten().copied().collect();
    let m = DMatrix::from_row_slice(side, side, &flat);
    let m = match ordering {
        Ordering::Xpxp => m,
        Ordering::Xxpp => xxpp_to_xpxp(&m)?,
    };
    let m = if hbar == 2.0 { m } else { m * (2.0 / hbar) };
    let cm = validate_cm(&m, tol)?;
    Ok(Ingested {
        n: cm.n(),
        cm,
        label: raw.label,
        ordering,
        hbar,
        warnings,
    })
}

/// Row/column `2k` of the result is `x_k = k` of the input, `2k+1` is `p_k = n+k`.
pub fn xxpp_to_xpxp(m: &DMatrix<f64>) -> Result<DMatrix<f64>, Error> {
    let d = m.nrows();
    if d != m.ncols() || !d.is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "cannot reorder a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = d / 2;
    let src = |a: usize| {
        if a.is_multiple_of(2) {
            a / 2
        } else {
            n + a / 2
        }
    };
    Ok(DMatrix::from_fn(d, d, |r, c| m[(src(r), src(c))]))
}

/// Inverse of [`xxpp_to_xpxp`].
pub fn xpxp_to_xxpp(m: &DMatrix<f64>) -> Result<DMatrix<f64>, Error> {
    let d = m.nrows();
    if d != m.ncols() || !d.is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "cannot reorder a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = d / 2;
    let src = |a: usize| if a < n { 2 * a } else { 2 * (a - n) + 1 };
    Ok(DMatrix::from_fn(d, d, |r, c| m[(src(r), src(c))]))
}

impl CmDocument {
    pub fn from_cm(cm: &CovarianceMatrix, label: Option<String>) -> Self {
        Self {
            n: cm.n(),
            ordering: Ordering::Xpxp,
            hbar: 2.0,
            matrix: cm.to_rows(),
            label,
        }
    }
}
