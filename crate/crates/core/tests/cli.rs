mod common;

use common::cli::{check_golden, fixture, golden_cases, run};
use cvsep::cli::{EXIT_ENTANGLED, EXIT_ERROR, EXIT_OK, EXIT_UNPHYSICAL};
use std::path::Path;

#[test]
fn golden_outputs() {
    for c in golden_cases() {
        if let Err(e) = check_golden(&c) {
            panic!("{e}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["ppt", &fixture("tmsv_vacuum.json"), "--modes-a", "0"]).code,
        EXIT_ENTANGLED
    );
    assert_eq!(
        run(&[
            "ppt",
            &fixture("tmsv_vacuum.json"),
            "--modes-a",
            "0",
            "--side",
            "b"
        ])
        .code,
        EXIT_ENTANGLED
    );
    assert_eq!(
        run(&["ppt", &fixture("tmsv.json"), "--modes-a", "0,1"]).code,
        EXIT_ERROR
    );
    assert_eq!(
        run(&["ppt", &fixture("tmsv.json"), "--modes-a", "7"]).code,
        EXIT_ERROR
    );
    assert_eq!(run(&["ppt", &fixture("tmsv.json")]).code, EXIT_ERROR);
    assert_eq!(run(&["check", "/nonexistent/cm.json"]).code, EXIT_ERROR);
    assert_eq!(
        run(&["ghz", "--half-modes", "0", "--r", "0.5", "--q", "2"]).code,
        EXIT_ERROR
    );
    assert_eq!(
        run(&["ghz", "--half-modes", "2", "--r", "0.5", "--q", "0.5"]).code,
        EXIT_ERROR
    );
    assert_eq!(
        run(&["ghz", "--half-modes", "2", "--r", "0.5"]).code,
        EXIT_ERROR
    );
    assert_eq!(
        run(&[
            "ghz",
            "--half-modes",
            "2",
            "--r",
            "0.5",
            "--q",
            "2",
            "--photons",
            "1"
        ])
        .code,
        EXIT_ERROR
    );
    assert_eq!(
        run(&["scan", "--half-modes", "1", "--r", "0.5", "--q-max", "2"]).code,
        EXIT_ERROR
    );
    assert_eq!(
        run(&[
            "--tolerance-profile",
            "loose",
            "check",
            &fixture("vacuum.csv")
        ])
        .code,
        EXIT_ERROR
    );
    assert_eq!(
        run(&[
            "ppt",
            &fixture("tmsv.json"),
            "--modes-a",
            "0",
            "--sat-tol",
            "-1"
        ])
        .code,
        EXIT_ERROR
    );
    // a 1|3 class does not fit a 2|2 split
    let ghz = fixture("ghz_n2.json");
    assert_eq!(
        run(&["ppt", &ghz, "--modes-a", "0,1", "--class", "gaussian-1xn"]).code,
        EXIT_ERROR
    );
    assert_eq!(
        run(&["ppt", &ghz, "--modes-a", "0,1", "--class", "bisymmetric"]).code,
        EXIT_ENTANGLED
    );
    assert_eq!(run(&["--version"]).code, EXIT_OK);
}

#[test]
fn unphysical_input_to_ppt() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "0.5,0,0,0\n0,0.5,0,0\n0,0,1,0\n0,0,0,1\n").unwrap();
    let out = run(&["ppt", path.to_str().unwrap(), "--modes-a", "0"]);
    assert_eq!(out.code, EXIT_UNPHYSICAL);
    assert!(out.stderr.contains("not physical"), "{}", out.stderr);
}

#[test]
fn parse_errors_carry_position() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bad.csv");
    std::fs::write(&csv, "1,0\n0,abc\n").unwrap();
    let out = run(&["check", csv.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);

    let json = dir.path().join("bad.json");
    std::fs::write(
        &json,
        "{\n  \"n\": 1,\n  \"matrix\": [[1, 0], [0, 1]],,\n}\n",
    )
    .unwrap();
    let out = run(&["check", json.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
}

#[test]
fn bare_csv_warns_about_ordering() {
    let out = run(&["check", &fixture("vacuum.csv")]);
    assert!(out.stderr.contains("assuming xpxp"), "{}", out.stderr);
    let out = run(&["--ordering", "xpxp", "check", &fixture("vacuum.csv")]);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
}

fn emitted_round_trip(dir: &Path, half_modes: &str, r: &str, q: &str) {
    let file = dir.join(format!("ghz_{half_modes}_{r}_{q}.json"));
    let file = file.to_str().unwrap();
    let inline = run(&[
        "--json",
        "ghz",
        "--half-modes",
        half_modes,
        "--r",
        r,
        "--q",
        q,
        "--emit",
        file,
    ]);
    let modes_a: Vec<String> = (0..half_modes.parse::<usize>().unwrap())
        .map(|m| m.to_string())
        .collect();
    let modes_a = modes_a.join(",");
    let reread = run(&[
        "--json",
        "ppt",
        file,
        "--modes-a",
        &modes_a,
        "--class",
        "bisymmetric",
    ]);
    assert_eq!(inline.code, reread.code);
    let verdict =
        |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["verdict"].clone();
    assert_eq!(
        verdict(&inline.stdout),
        verdict(&reread.stdout),
        "n={half_modes} r={r} q={q}"
    );
    assert!(!verdict(&inline.stdout).is_null());
}

#[test]
fn ghz_emit_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    for (n, r, q) in [
        ("1", "0.5", "1.5"),
        ("2", "0.5", "1.1"),
        ("2", "0.3", "3"),
        ("3", "1", "7.5"),
        ("1", "0", "1"),
    ] {
        emitted_round_trip(dir.path(), n, r, q);
    }
}

#[test]
fn ordering_and_hbar_do_not_change_the_report() {
    let reports: Vec<serde_json::Value> = ["thermal.json", "thermal_xxpp_hbar1.json"]
        .iter()
        .map(|f| {
            let out = run(&[
                "--json",
                "ppt",
                &fixture(f),
                "--modes-a",
                "0",
                "--class",
                "gaussian-1xn",
            ]);
            assert_eq!(out.code, EXIT_OK);
            serde_json::from_str(&out.stdout).unwrap()
        })
        .collect();
    for key in ["verdict", "tolerances"] {
        assert_eq!(reports[0][key], reports[1][key], "{key}");
    }
    assert_eq!(reports[0]["input"]["label"], reports[1]["input"]["label"]);

    let dir = tempfile::tempdir().unwrap();
    let xpxp = dir.path().join("tmsv.json");
    run(&[
        "ghz",
        "--half-modes",
        "2",
        "--r",
        "0.4",
        "--q",
        "1.2",
        "--emit",
        xpxp.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&xpxp).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let m: Vec<Vec<f64>> = serde_json::from_value(doc["matrix"].clone()).unwrap();
    let d = m.len();
    let perm: Vec<usize> = (0..d)
        .map(|i| {
            if i < d / 2 {
                2 * i
            } else {
                2 * (i - d / 2) + 1
            }
        })
        .collect();
    let xxpp: Vec<Vec<f64>> = perm
        .iter()
        .map(|&i| perm.iter().map(|&j| m[i][j]).collect())
        .collect();
    doc["matrix"] = serde_json::to_value(xxpp).unwrap();
    doc["ordering"] = "xxpp".into();
    let xxpp_path = dir.path().join("tmsv_xxpp.json");
    std::fs::write(&xxpp_path, doc.to_string()).unwrap();
    for command in [vec!["check"], vec!["ppt"]] {
        let mut a = vec!["--json"];
        a.extend(&command);
        let mut b = a.clone();
        a.push(xpxp.to_str().unwrap());
        b.push(xxpp_path.to_str().unwrap());
        if command[0] == "ppt" {
            a.extend(["--modes-a", "0,1"]);
            b.extend(["--modes-a", "0,1"]);
        }
        let (ra, rb) = (run(&a), run(&b));
        assert_eq!(ra.code, rb.code);
        let strip = |s: &str| {
            let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
            v["input"]["ordering"] = serde_json::Value::Null;
            v
        };
        assert_eq!(strip(&ra.stdout), strip(&rb.stdout), "{command:?}");
    }
}

#[test]
fn tolerance_profile_is_echoed() {
    let out = run(&[
        "--json",
        "--tolerance-profile",
        "strict",
        "check",
        &fixture("vacuum.csv"),
    ]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["tolerances"]["sat"].as_f64(), Some(1e-10));
    assert_eq!(v["schema"], 1);
}
