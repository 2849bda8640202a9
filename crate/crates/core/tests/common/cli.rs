use cvsep::cli::{self, EXIT_ENTANGLED, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_UNPHYSICAL};
use std::path::PathBuf;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn fixture(name: &str) -> String {
    root()
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Outcome {
    // pin the profile so CVSEP_TOLERANCE_PROFILE in the environment cannot leak in
    let mut argv = vec!["cvsep"];
    if !args.contains(&"--tolerance-profile") {
        argv.extend(["--tolerance-profile", "default"]);
    }
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: Vec<String>,
    pub code: i32,
}

fn case(name: &'static str, args: &[&str], code: i32) -> GoldenCase {
    let args = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => fixture(f),
            None => a.to_string(),
        })
        .collect();
    GoldenCase { name, args, code }
}

/// Every command over the six fixture files; `@name` expands to a fixture path.
pub fn golden_cases() -> Vec<GoldenCase> {
    vec![
        case("check_vacuum.txt", &["check", "@vacuum.csv"], EXIT_OK),
        case(
            "check_unphysical.txt",
            &["check", "@unphysical.csv"],
            EXIT_UNPHYSICAL,
        ),
        case(
            "check_ghz_n2.json",
            &["--json", "check", "@ghz_n2.json"],
            EXIT_OK,
        ),
        case(
            "ppt_tmsv_1xn.txt",
            &[
                "ppt",
                "@tmsv.json",
                "--modes-a",
                "0",
                "--class",
                "gaussian-1xn",
            ],
            EXIT_ENTANGLED,
        ),
        case(
            "ppt_thermal_unknown.txt",
            &["ppt", "@thermal.json", "--modes-a", "0"],
            EXIT_INCONCLUSIVE,
        ),
        case(
            "ppt_thermal_1xn.json",
            &[
                "--json",
                "ppt",
                "@thermal.json",
                "--modes-a",
                "0",
                "--class",
                "gaussian-1xn",
            ],
            EXIT_OK,
        ),
        case(
            "ppt_tmsv_vacuum.json",
            &["--json", "ppt", "@tmsv_vacuum.json", "--modes-a", "0"],
            EXIT_ENTANGLED,
        ),
        case(
            "ghz_n2_q3.txt",
            &["ghz", "--half-modes", "2", "--r", "0.5", "--q", "3"],
            EXIT_OK,
        ),
        case(
            "ghz_n1_r0.json",
            &["--json", "ghz", "--half-modes", "1", "--r", "0", "--q", "1"],
            EXIT_INCONCLUSIVE,
        ),
        case(
            "scan_n3_r02.txt",
            &["scan", "--half-modes", "3", "--r", "0.2"],
            EXIT_OK,
        ),
        case(
            "scan_n1_r05.json",
            &["--json", "scan", "--half-modes", "1", "--r", "0.5"],
            EXIT_OK,
        ),
    ]
}

/// Runs a case twice and compares against `tests/golden/<name>`;
/// `UPDATE_GOLDEN=1` rewrites the file instead.
pub fn check_golden(c: &GoldenCase) -> Result<(), String> {
    let args: Vec<&str> = c.args.iter().map(String::as_str).collect();
    let first = run(&args);
    if first.code != c.code {
        return Err(format!(
            "{}: exit {} (expected {}): {}",
            c.name, first.code, c.code, first.stderr
        ));
    }
    if run(&args).stdout != first.stdout {
        return Err(format!("{}: output differs between runs", c.name));
    }
    let path = root().join("golden").join(c.name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()))?;
    if expected != first.stdout {
        return Err(format!(
            "{} differs\n--- expected\n{expected}\n--- actual\n{}",
            path.display(),
            first.stdout
        ));
    }
    Ok(())
}
