//! The `cvsep` command-line tool.
//!
//! Exit codes: 0 physical / separable-certified, 2 usage or input error,
//! 3 unphysical input, 4 entangled, 5 PPT satisfied but inconclusive.

pub mod document;
pub mod json;
pub mod report;

use crate::error::Error;
use crate::gallery::{
    find_threshold, ghz_cm, ghz_coefficients, ghz_partition, ghz_pt_invariants,
    ghz_separability_margin, ghz_threshold, max_noise, GhzParams,
};
use crate::invariants::{invariants_blockminors, invariants_charpoly, sigma_value};
use crate::separability::{classify_side, Decision, StateClass};
use crate::symplectic::{physicality, ModePartition, Physicality, Side};
use crate::tolerances::Tolerances;
use clap::{Args, Parser, Subcommand, ValueEnum};
use document::{ingest, read_input, CmDocument, Ingested, Ordering};
use report::{
    render_text, GhzSection, InputEcho, InvariantSection, PartitionEcho, PhysicalitySection,
    Report, ScanSection,
};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNPHYSICAL: i32 = 3;
pub const EXIT_ENTANGLED: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

/// Largest mode count for which `check` also runs the block-minor enumeration.
const CHECK_BLOCK_MINOR_MODES: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "cvsep",
    version,
    about = "Physicality and PPT separability of Gaussian covariance matrices"
)]
pub struct Cli {
    /// Value of hbar used by the input; matrices are rescaled by 2/hbar.
    #[arg(long, global = true)]
    hbar: Option<f64>,

    /// Quadrature ordering of the input matrix.
    #[arg(long, global = true)]
    ordering: Option<Ordering>,

    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Tolerance preset.
    #[arg(
        long,
        global = true,
        env = "CVSEP_TOLERANCE_PROFILE",
        default_value = "default"
    )]
    tolerance_profile: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Physicality, invariants and the symplectic uncertainty relation.
    Check { file: PathBuf },
    /// PPT separability test for a bipartition.
    Ppt(PptArgs),
    /// Noisy GHZ-type state under the even bipartition.
    Ghz(GhzArgs),
    /// Bisect the separability threshold of the GHZ-type family in q.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    A,
    B,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
        }
    }
}

#[derive(Debug, Args)]
struct PptArgs {
    /// JSON covariance-matrix document or bare CSV matrix.
    file: PathBuf,
    /// Comma-separated 0-based modes of subsystem A.
    #[arg(long, value_delimiter = ',', required = true)]
    modes_a: Vec<usize>,
    /// Subsystem to transpose.
    #[arg(long, value_enum, default_value = "a")]
    side: SideArg,
    /// Declared state class: unknown, gaussian-1xn, bisymmetric or gaussian.
    #[arg(long, default_value = "unknown")]
    class: StateClass,
    /// Override the saturation tolerance.
    #[arg(long)]
    sat_tol: Option<f64>,
}

#[derive(Debug, Args)]
struct GhzArgs {
    #[arg(long)]
    half_modes: usize,
    #[arg(long)]
    r: f64,
    /// Noise factor (CM multiplied by q).
    #[arg(long, conflicts_with = "photons", required_unless_present = "photons")]
    q: Option<f64>,
    /// Mean thermal photon number, q - 1.
    #[arg(long)]
    photons: Option<f64>,
    /// Write the covariance matrix as a JSON document.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    half_modes: usize,
    #[arg(long)]
    r: f64,
    /// Upper end of the bisection bracket (default max(100, 4 e^(2r)), capped at e^20).
    #[arg(long)]
    q_max: Option<f64>,
    /// Relative width at which bisection stops.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

/// Command-line failure with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unphysical { .. } => EXIT_UNPHYSICAL,
            _ => EXIT_ERROR,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_ERROR,
        message: message.into(),
    }
}

pub fn decision_exit_code(d: Decision) -> i32 {
    match d {
        Decision::SeparableCertified => EXIT_OK,
        Decision::Entangled => EXIT_ENTANGLED,
        Decision::PptSatisfiedInconclusive => EXIT_INCONCLUSIVE,
    }
}

pub fn main() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err)
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok((report, code)) => {
            let text = if cli.json {
                json::to_string(&report)
            } else {
                render_text(&report)
            };
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(Report, i32), Failure> {
    let tol = Tolerances::profile(&cli.tolerance_profile)?;
    match &cli.command {
        Command::Check { file } => cmd_check(cli, file, tol, err),
        Command::Ppt(args) => cmd_ppt(cli, args, tol, err),
        Command::Ghz(args) => cmd_ghz(args, tol, err),
        Command::Scan(args) => cmd_scan(args, tol),
    }
}

fn load(
    cli: &Cli,
    file: &Path,
    tol: &Tolerances,
    err: &mut dyn Write,
) -> Result<Ingested, Failure> {
    let raw = read_input(file).map_err(|e| fail(format!("{}: {e}", file.display())))?;
    let ing = ingest(raw, cli.ordering, cli.hbar, tol)
        .map_err(|e| fail(format!("{}: {e}", file.display())))?;
    for w in &ing.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(ing)
}

fn cmd_check(
    cli: &Cli,
    file: &Path,
    tol: Tolerances,
    err: &mut dyn Write,
) -> Result<(Report, i32), Failure> {
    let ing = load(cli, file, &tol, err)?;
    let phys = physicality(&ing.cm, &tol)?;
    let charpoly = invariants_charpoly(&ing.cm, &tol)?;
    let block_minors = if ing.n <= CHECK_BLOCK_MINOR_MODES {
        Some(invariants_blockminors(&ing.cm)?)
    } else {
        None
    };
    let max_rel_diff = block_minors.as_ref().map(|b| charpoly.max_rel_diff(b));
    let sigma = sigma_value(&charpoly);

    let mut report = Report::new("check", tol);
    report.input = Some(InputEcho::from_ingested(&ing));
    report.physicality = Some(PhysicalitySection::from(&phys));
    report.invariants = Some(InvariantSection {
        charpoly,
        block_minors,
        max_rel_diff,
        sigma,
    });
    let code = match phys.status {
        Physicality::Unphysical => EXIT_UNPHYSICAL,
        _ => EXIT_OK,
    };
    Ok((report, code))
}

fn cmd_ppt(
    cli: &Cli,
    args: &PptArgs,
    tol: Tolerances,
    err: &mut dyn Write,
) -> Result<(Report, i32), Failure> {
    let tol = match args.sat_tol {
        Some(s) => tol.with_sat(s)?,
        None => tol,
    };
    let ing = load(cli, &args.file, &tol, err)?;
    let part = ModePartition::new(ing.n, &args.modes_a)?;
    let side = Side::from(args.side);
    let verdict = classify_side(&ing.cm, &part, side, args.class, &tol)?;
    let code = decision_exit_code(verdict.decision);

    let mut report = Report::new("ppt", tol);
    let mut echo = InputEcho::from_ingested(&ing);
    echo.partition = Some(PartitionEcho::new(&part, side));
    report.input = Some(echo);
    report.verdict = Some(verdict);
    Ok((report, code))
}

fn cmd_ghz(args: &GhzArgs, tol: Tolerances, err: &mut dyn Write) -> Result<(Report, i32), Failure> {
    let params = match (args.q, args.photons) {
        (Some(q), _) => GhzParams::new(args.half_modes, args.r, q)?,
        (None, Some(nbar)) => GhzParams::with_photons(args.half_modes, args.r, nbar)?,
        (None, None) => return Err(fail("one of --q or --photons is required")),
    };
    let cm = ghz_cm(&params);
    let part = ghz_partition(&params);
    let verdict = classify_side(
        &cm,
        &part,
        Side::A,
        StateClass::BisymmetricGaussianMxN,
        &tol,
    )?;
    let code = decision_exit_code(verdict.decision);

    let label = format!(
        "ghz half_modes={} r={} q={}",
        params.half_modes(),
        params.r(),
        params.q()
    );
    if let Some(path) = &args.emit {
        let doc = CmDocument::from_cm(&cm, Some(label.clone()));
        std::fs::write(path, json::to_string(&doc))
            .map_err(|e| fail(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(err, "wrote {}", path.display());
    }

    let mut report = Report::new("ghz", tol);
    report.input = Some(InputEcho {
        label: Some(label),
        n: params.modes(),
        ordering: Ordering::Xpxp,
        hbar: 2.0,
        partition: Some(PartitionEcho::new(&part, Side::A)),
    });
    report.ghz = Some(GhzSection {
        half_modes: params.half_modes(),
        r: params.r(),
        q: params.q(),
        mean_photons: params.q() - 1.0,
        threshold: ghz_threshold(params.r()),
        margin: ghz_separability_margin(&params)?,
        g_coefficients: ghz_coefficients(params.half_modes())?,
        analytic_pt_invariants: ghz_pt_invariants(&params)?,
    });
    report.verdict = Some(verdict);
    Ok((report, code))
}

fn cmd_scan(args: &ScanArgs, tol: Tolerances) -> Result<(Report, i32), Failure> {
    let threshold = ghz_threshold(args.r);
    let q_max = args
        .q_max
        .unwrap_or_else(|| (4.0 * threshold).max(100.0).min(max_noise()));
    let scan = find_threshold(args.half_modes, args.r, q_max, args.tol)?;
    let mut report = Report::new("scan", tol);
    report.scan = Some(ScanSection::new(
        args.half_modes,
        args.r,
        q_max,
        args.tol,
        &scan,
        threshold,
    ));
    Ok((report, EXIT_OK))
}
