use std::process::{Command, Output};

use serde_json::Value;

const SCHEMA: &str = include_str!("../schema/report.schema.json");

fn quatfn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatfn"))
        .args(args)
        .env("QR_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn assert_valid(report: &Value) {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{report:#}");
}

// Small rules and short schedules keep the pairings quick.
const FAST_RESIDUE: &[&str] = &[
    "residue", "--function", "conj", "--phi22", "bump", "--n-eta", "4", "--n-xi", "8",
    "--schedule", "0.5,0.7,6",
];
const FAST_PV: &[&str] = &[
    "pv", "--function", "conj", "--psi2", "bump", "--n-eta", "4", "--n-xi", "8",
    "--schedule", "0.5,0.7,4",
];

const COMMANDS: &[&[&str]] = &[
    &["classify", "--function", "prop34", "--params", "1,2", "--partner", "conj"],
    &["classify", "--function", "c1 + z2 ; z1"],
    &["apply-d", "--function", "F", "--at", "1,0,0,1"],
    &["apply-d", "--function", "cauchy_kernel"],
    &["inverse", "--function", "conj", "--at", "0.5,-1,0,2"],
    &["product-rule", "--function", "conj", "--partner", "holo:z1"],
    &["hypermero", "--function", "conj", "--at", "1,0,0,0"],
    &["product-compat", "--function", "prop34", "--params", "0,0", "--partner", "prop34"],
    FAST_RESIDUE,
    FAST_PV,
    &["oracle-1d", "--pole", "2", "--phi", "z1"],
    &["oracle-1d", "--mode", "pv", "--phi", "c1", "--schedule", "default"],
    &["catalogue"],
    &["catalogue", "--function", "prop34", "--params", "-3,5"],
];

#[test]
fn every_report_validates_against_the_schema() {
    for args in COMMANDS {
        let out = quatfn(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let report = json(&out);
        assert_eq!(report["command"], args[0]);
        assert_valid(&report);
    }
}

#[test]
fn error_reports_validate_against_the_schema() {
    let out = quatfn(&["product-compat", "--function", "conj", "--partner", "conj"]);
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert_eq!(report["error"]["kind"], "NotHypermeromorphic");
    assert_valid(&report);
}

#[test]
fn reruns_are_byte_identical() {
    for args in COMMANDS {
        let a = quatfn(args);
        let b = quatfn(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let mut csv = FAST_PV.to_vec();
    csv.extend(["--format", "csv"]);
    assert_eq!(quatfn(&csv).stdout, quatfn(&csv).stdout);
}

#[test]
fn thread_count_does_not_change_the_report() {
    let run = |n: &str| {
        Command::new(env!("CARGO_BIN_EXE_quatfn"))
            .args(FAST_RESIDUE)
            .env("QR_THREADS", n)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn classify_prop34_at_origin() {
    let report = json(&quatfn(&["classify", "--function", "prop34", "--params", "0,0"]));
    assert_eq!(report["result"]["hyperholomorphic"], true);
    assert_eq!(report["result"]["hypermeromorphic"], true);
    assert_eq!(report["exact"], true);
}

#[test]
fn classify_conj_is_not_hypermeromorphic() {
    let report = json(&quatfn(&["classify", "--function", "conj"]));
    assert_eq!(report["result"]["hyperholomorphic"], true);
    assert_eq!(report["result"]["hypermeromorphic"], false);
    assert_eq!(report["result"]["hypermero_residuals"][0], "z1 - c1");
}

#[test]
fn apply_d_of_f_is_minus_one_half() {
    let report = json(&quatfn(&["apply-d", "--function", "F", "--at", "1,0,0,1"]));
    let v: Vec<f64> = report["result"]["value"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(v, [-0.5, 0.0, 0.0, 0.0]);
}

#[test]
fn floats_keep_seventeen_significant_digits() {
    let out = quatfn(&["oracle-1d", "--pole", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("6.2831853071795"), "{text}");
    assert!(text.contains("5.0000000000000000e-1"));
}

#[test]
fn csv_table_has_one_row_per_epsilon() {
    let mut args = FAST_PV.to_vec();
    args.extend(["--format", "csv"]);
    let out = quatfn(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "eps,re1,im1,re_j,im_j");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 5));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["apply-d", "--function", "F", "--at", "1,2,3"],
        &["apply-d", "--function", "nope"],
        &["classify", "--function", "z1 + ; 0"],
        &["residue", "--function", "conj", "--phi22", "bump", "--schedule", "2,0.5,6"],
        &["residue", "--function", "conj", "--phi22", "bump", "--n-eta", "2"],
        &["classify", "--function", "conj", "--format", "csv"],
    ] {
        let out = quatfn(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = Command::new(env!("CARGO_BIN_EXE_quatfn"))
        .args(["catalogue"])
        .env("QR_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_0() {
    assert_eq!(quatfn(&["--help"]).status.code(), Some(0));
    assert_eq!(quatfn(&["residue", "--help"]).status.code(), Some(0));
}

#[test]
fn zero_inside_the_domain_exits_3_with_its_location() {
    let out = quatfn(&[
        "residue", "--function", "z1 - c1 ; 0", "--phi22", "bump", "--domain", "metric",
        "--n-eta", "4", "--n-xi", "8",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert_valid(&report);
    assert_eq!(report["error"]["kind"], "PoleOnDomain");
    assert!(!report["error"]["message"].as_str().unwrap().contains("NaN"));
}

#[test]
fn strict_turns_non_convergence_into_exit_4() {
    let out = quatfn(FAST_PV);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["diagnostics"]["converged"], false);

    let mut strict = FAST_PV.to_vec();
    strict.push("--strict");
    let out = quatfn(&strict);
    assert_eq!(out.status.code(), Some(4));
    assert_valid(&json(&out));
}
