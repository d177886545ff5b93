use std::io::Write as _;
use std::process::Command;

use ucr_cli::config::Settings;
use ucr_cli::render::{ReportJson, TableauxJson};
use ucr_cli::{build_report, run, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VERIFICATION};
use ucr_core::Limits;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ucr(args: &[&str]) -> Outcome {
    ucr_with(args, &Settings::default())
}

fn ucr_with(args: &[&str], settings: &Settings) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ucr").chain(args.iter().copied());
    let code = run(argv, settings, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn json_report_round_trips() {
    for (d, n) in [(2, 4), (2, 5), (3, 4)] {
        let o = ucr(&["decompose", "--d", &d.to_string(), "--n", &n.to_string(), "--output", "json"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        let parsed: ReportJson = serde_json::from_str(&o.stdout).unwrap();
        let report = build_report(d, n, false, &Limits::default()).unwrap();
        assert_eq!(parsed, ReportJson::from(&report));
        assert_eq!(parsed.to_blocks().unwrap(), report.blocks);
    }
}

#[test]
fn json_field_names_are_stable() {
    let o = ucr(&["decompose", "--d", "2", "--n", "4", "--output", "json", "--structure-only"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["d", "n", "blocks", "dimension_check", "commutant_dim", "interaction_dim", "largest_full_matrix"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(v["blocks"][1], serde_json::json!({"lambda": [3, 1], "dim": 3, "mult": 3}));
    assert_eq!(v["dimension_check"], 16);
}

#[test]
fn mult_zero_shapes_never_appear() {
    let o = ucr(&["decompose", "--d", "2", "--n", "6", "--output", "json", "--structure-only"]);
    let parsed: ReportJson = serde_json::from_str(&o.stdout).unwrap();
    assert!(parsed.blocks.iter().all(|b| b.mult > 0 && b.lambda.len() <= 2));
    assert_eq!(parsed.blocks.len(), 4);
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["decompose", "--d", "3", "--n", "3", "--output", "json"],
        vec!["simulate", "--d", "2", "--n", "3", "--check", "round-trip", "--seed", "7", "--output", "json"],
        vec!["encode-demo", "--d", "2", "--n", "4", "--lambda", "3,1", "--ancilla", "random", "--seed", "3", "--output", "json"],
        vec!["tableaux", "--lambda", "2,2", "--mu", "1,1,2", "--output", "json"],
    ];
    for args in runs {
        let a = ucr(&args);
        let b = ucr(&args);
        assert_eq!(a.code, EXIT_OK, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_2_with_usage_text() {
    let o = ucr(&["decompose", "--d", "2", "--n", "4", "--frobnicate"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("Usage"), "{}", o.stderr);
    assert_eq!(ucr(&["nonsense"]).code, EXIT_USAGE);
    assert_eq!(ucr(&["decompose", "--d", "1", "--n", "4"]).code, EXIT_USAGE);
    assert_eq!(ucr(&["decompose", "--d", "2", "--n", "0"]).code, EXIT_USAGE);
    assert_eq!(ucr(&["tableaux", "--lambda", "1,2"]).code, EXIT_USAGE);
    assert_eq!(ucr(&["tableaux", "--lambda", "2,1", "--mu", "1,1"]).code, EXIT_USAGE);
    assert_eq!(ucr(&["simulate", "--d", "3", "--n", "2", "--generators", "pauli", "--check", "fixed-points"]).code, EXIT_USAGE);
    assert_eq!(ucr(&["simulate", "--d", "2", "--n", "2", "--angles", "0.1,0.2", "--check", "fixed-points"]).code, EXIT_USAGE);
    assert_eq!(ucr(&["encode-demo", "--d", "2", "--n", "3", "--lambda", "1,1,1"]).code, EXIT_USAGE);
    let help = ucr(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("decompose"));
}

#[test]
fn resource_caps_exit_3() {
    let o = ucr(&["decompose", "--d", "2", "--n", "999"]);
    assert_eq!(o.code, EXIT_RESOURCE);
    assert!(o.stderr.contains("cap"));
    let tight = Settings {
        state_cap: 10,
        ..Settings::default()
    };
    assert_eq!(ucr_with(&["decompose", "--d", "2", "--n", "4"], &tight).code, EXIT_RESOURCE);
}

#[test]
fn binary_reads_environment() {
    let bin = env!("CARGO_BIN_EXE_ucr");
    let out = Command::new(bin)
        .args(["decompose", "--d", "2", "--n", "4"])
        .env("UCR_STATE_CAP", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_RESOURCE));
    let out = Command::new(bin)
        .args(["decompose", "--d", "2", "--n", "4"])
        .env("UCR_STATE_CAP", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = Command::new(bin).args(["verify", "--suite", "small"]).env_remove("UCR_TOL").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}

#[test]
fn tolerance_override_can_fail_a_check() {
    // far below rounding: the fixed-point residual (~1e-15) no longer passes
    let strict = Settings {
        tol: 1e-30,
        ..Settings::default()
    };
    let o = ucr_with(&["simulate", "--d", "2", "--n", "3", "--check", "fixed-points"], &strict);
    assert_eq!(o.code, EXIT_VERIFICATION);
    assert!(o.stdout.contains("FAIL"));
}

#[test]
fn generator_files_and_aliasing_warnings() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# a single Z generator\n1 0\n0 -1").unwrap();
    let path = file.path().to_str().unwrap();
    let o = ucr(&[
        "simulate", "--d", "2", "--n", "2", "--generators", path, "--angles", "3.141592653589793", "--check",
        "fixed-points",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stderr.contains("warning"), "{}", o.stderr);
    assert!(o.stdout.contains("note: dim Fix(E)"));

    let o = ucr(&["simulate", "--d", "3", "--n", "2", "--generators", path, "--check", "fixed-points"]);
    assert_eq!(o.code, EXIT_USAGE);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "1 1+i\n1 0").unwrap();
    let o = ucr(&["simulate", "--d", "2", "--n", "2", "--generators", bad.path().to_str().unwrap(), "--check", "fixed-points"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("Hermitian"));
}

#[test]
fn tableaux_listing() {
    let o = ucr(&["tableaux", "--lambda", "2,1,1", "--mu", "2,1,1", "--output", "json"]);
    let t: TableauxJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(t.dim, 3);
    assert_eq!(t.kostka, Some(1));
    let first = &t.semistandard[0].vectors[0];
    let kets: Vec<(&str, i64)> = first.terms.iter().map(|x| (x.ket.as_str(), x.coeff)).collect();
    assert_eq!(kets, vec![("0012", 1), ("0021", -1), ("1002", -1), ("1020", 1), ("2001", 1), ("2010", -1)]);
    let o = ucr(&["tableaux", "--lambda", "3,2"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with("shape (3,2): 5 standard tableaux"));
}

#[test]
fn encode_demo_keeps_fidelity() {
    let o = ucr(&["encode-demo", "--d", "3", "--n", "4", "--lambda", "2,1,1", "--output", "json"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["mult"], 3);
    let f = v["fidelity"].as_array().unwrap();
    assert_eq!(f.len(), 11);
    assert!(f.iter().all(|x| x.as_f64().unwrap() >= 1.0 - 1e-9));
}
