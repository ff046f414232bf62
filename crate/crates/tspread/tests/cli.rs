//! End-to-end CLI checks: exit codes, JSON round trips, determinism, and
//! the fault-injection path.
#![cfg(feature = "cli")]

use std::process::{Command, Output};

use tspread::cli::{
    AssReport, DualReport, FacetsReport, GensReport, PersistenceReport, ReesGbReport,
    ReproduceReport, ScmReport, SortReport,
};
use tspread::powers::DepthReport;

fn run(args: &[&str]) -> Output {
    let bin = env!("CARGO_BIN_EXE_tspread");
    Command::new(bin).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Deserialize, re-serialize, and compare with the original bytes: the
/// report type reproduces its own JSON exactly.
fn round_trip<T: serde::de::DeserializeOwned + serde::Serialize>(text: &str) -> T {
    let value: T = serde_json::from_str(text).expect("parses into the report type");
    let again = serde_json::to_string_pretty(&value).expect("serializes");
    assert_eq!(text.trim_end(), again, "JSON round trip must be exact");
    value
}

#[test]
fn gens_json_round_trip() {
    let out = run(&["gens", "--n", "9", "--t", "2", "--u", "2,4,9", "--json"]);
    assert!(out.status.success());
    let report: GensReport = round_trip(&stdout(&out));
    assert_eq!(report.count, 13);
    assert_eq!(report.generators[0], "x1*x3*x5");
    assert_eq!(report.generators[12], "x2*x4*x9");
}

#[test]
fn dual_and_facets_json_round_trip() {
    let out = run(&["dual", "--n", "9", "--t", "2", "--u", "2,4,9", "--json"]);
    assert!(out.status.success());
    let report: DualReport = round_trip(&stdout(&out));
    assert_eq!(report.generators.len(), 6);
    assert_eq!(report.generators[0].form, "prefix");

    let out = run(&["facets", "--n", "9", "--t", "2", "--u", "2,4,9", "--json"]);
    assert!(out.status.success());
    let report: FacetsReport = round_trip(&stdout(&out));
    assert_eq!(report.facets.len(), 6);
}

#[test]
fn scm_check_json_and_exit() {
    let out = run(&[
        "scm-check",
        "--n",
        "9",
        "--t",
        "2",
        "--u",
        "2,4,9",
        "--json",
    ]);
    assert!(out.status.success());
    let report: ScmReport = round_trip(&stdout(&out));
    assert!(report.linear);
    let rs: Vec<usize> = report.steps.iter().map(|s| s.r).collect();
    assert_eq!(rs, vec![0, 1, 1, 2, 2, 2]);
}

#[test]
fn rees_gb_json_pins_family_and_marking() {
    let out = run(&[
        "rees-gb", "--n", "9", "--t", "2", "--u", "2,4,9", "--verify", "--json",
    ]);
    assert!(out.status.success());
    let report: ReesGbReport = round_trip(&stdout(&out));
    assert!(report.count > 0);
    let text = stdout(&out);
    assert!(text.contains("\"family\": \"sorting\""));
    assert!(text.contains("\"family\": \"x\""));
    assert!(report.binomials.iter().all(|b| b.marked == "lhs"));
    let verify = report.verify.expect("--verify fills the block");
    assert!(verify.kernel && verify.x_condition && verify.reduced);
    assert_eq!(verify.buchberger, "verified");
}

#[test]
fn power_depth_json_shape() {
    let out = run(&[
        "power-depth",
        "--n",
        "8",
        "--t",
        "2",
        "--u",
        "3,5,8",
        "--k",
        "3",
        "--json",
    ]);
    assert!(out.status.success());
    let report: DepthReport = round_trip(&stdout(&out));
    assert_eq!((report.k, report.projdim, report.depth), (3, 8, 0));
    assert!(report.witness.is_some());
}

#[test]
fn sort_accepts_text_and_exponent_lists() {
    let out = run(&["sort", "--monomials", "x2*x4*x6,x1*x3*x9"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x1*x3*x6,x2*x4*x9");

    let out = run(&[
        "sort",
        "--monomials",
        r#"[[0,1,0,1,0,1,0,0,0], "x1*x3*x9"]"#,
        "--json",
    ]);
    assert!(out.status.success());
    let report: SortReport = round_trip(&stdout(&out));
    assert_eq!(report.sorted, vec!["x1*x3*x6", "x2*x4*x9"]);

    // Mismatched degrees are a usage error.
    let out = run(&["sort", "--monomials", "x1,x2*x3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ass_and_persistence() {
    let out = run(&[
        "ass", "--n", "4", "--t", "2", "--u", "2,4", "--k", "2", "--json",
    ]);
    assert!(out.status.success());
    let report: AssReport = round_trip(&stdout(&out));
    assert!(!report.primes.is_empty());

    let out = run(&[
        "persistence",
        "--n",
        "4",
        "--t",
        "2",
        "--u",
        "2,4",
        "--kmax",
        "3",
        "--json",
    ]);
    assert!(out.status.success());
    let report: PersistenceReport = round_trip(&stdout(&out));
    assert!(report.holds);
}

#[test]
fn oracle_decompose() {
    let out = run(&["oracle", "decompose", "--n", "2", "--gens", "x1^2,x1*x2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "(x1)\n(x1^2, x2)");
}

#[test]
fn exit_codes() {
    // Usage: invalid instance.
    let out = run(&["gens", "--n", "9", "--t", "3", "--u", "2,4,9"]);
    assert_eq!(out.status.code(), Some(2));
    // Usage: missing required argument (clap).
    let out = run(&["gens", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
    // Guard refusal.
    let out = run(&[
        "power-depth",
        "--n",
        "9",
        "--t",
        "2",
        "--u",
        "2,4,9",
        "--k",
        "2",
        "--max-power-gens",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // Hypothesis violation is reported as a usage error.
    let out = run(&["facets", "--n", "8", "--t", "4", "--u", "2,8"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("divide no generator"), "stderr: {stderr}");
    // Guard override through the environment.
    let bin = env!("CARGO_BIN_EXE_tspread");
    let out = Command::new(bin)
        .args([
            "power-depth",
            "--n",
            "9",
            "--t",
            "2",
            "--u",
            "2,4,9",
            "--k",
            "2",
        ])
        .env("TSPREAD_MAX_POWER_GENS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn lex_witness_defaults_on_the_classic_instance() {
    let out = run(&["lex-witness", "--n", "10", "--t", "2", "--u", "6,8,10"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("divisor of the cubic: none"));
    // Other instances need an explicit cubic.
    let out = run(&["lex-witness", "--n", "9", "--t", "2", "--u", "2,4,9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_is_deterministic_and_fault_injection_fails() {
    let a = run(&["reproduce", "--seed", "7", "--json"]);
    let b = run(&["reproduce", "--seed", "7", "--json"]);
    assert!(a.status.success());
    assert_eq!(
        a.stdout, b.stdout,
        "identical seed must give identical bytes"
    );
    let report: ReproduceReport = round_trip(&stdout(&a));
    assert!(report.all_pass);
    assert_eq!(report.checks.len(), 11);

    let bad = run(&["reproduce", "--seed", "7", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("[FAIL] dual-example-order"));
}
