//! End-to-end acceptance run of the `springer` binary.
//!
//! Each criterion maps to one suite of `verify-all`. A few checks are known to
//! disagree with the published reference data; they are listed in
//! `KNOWN_FAILURES` and the run must fail on exactly those ids and no others.
//!
//! Runs without the libtest harness so the per-criterion lines always print.

use std::collections::BTreeSet;
use std::panic;
use std::process::{Command, ExitCode, Output};

use serde_json::Value;

const SEED: &str = "42";

/// (criterion, suite, wall-clock budget in ms).
const CRITERIA: [(u32, &str, u64); 12] = [
    (1, "table1", 10_000),
    (2, "dual-algorithm", 30_000),
    (3, "steinberg-subsystems", 30_000),
    (4, "weyl-indices", 10_000),
    (5, "folding", 5_000),
    (6, "d4", 20_000),
    (7, "springer-type-a", 60_000),
    (8, "kawanaka", 20_000),
    (9, "centralizer-commutativity", 120_000),
    (10, "nilpotent-translation", 20_000),
    (11, "center-character", 5_000),
    (12, "determinism", 60_000),
];

/// Checks whose reference values are not reproduced by exact computation.
const KNOWN_FAILURES: [&str; 4] = [
    // Parabolic index of node 6 in E7 is 756, not 1512.
    "e7-parabolic-6",
    // The trace from F_{3^6} to F_3 kills the needed element; no S3 solution.
    "d4-descent-s3-F(3,6)",
    // Z_PGL2(u) over F_2[e] has 8 points and is commutative.
    "pgl2-dual-centralizer-noncommutative",
    "commutativity-equivalence-PGL2-F(2)",
];

fn springer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn suite<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["suite"] == name)
        .unwrap_or_else(|| panic!("suite {name} missing"))
}

fn failing_ids(suite: &Value) -> Vec<String> {
    suite["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] != true)
        .map(|c| c["id"].as_str().unwrap().to_string())
        .collect()
}

fn acceptance_criteria() {
    let first = springer(&["verify-all", "--seed", SEED]);
    let second = springer(&["verify-all", "--seed", SEED]);
    let timed = json_of(&springer(&["--timings", "verify-all", "--seed", SEED]));
    let report = json_of(&first);
    let identical = first.stdout == second.stdout;

    let known: BTreeSet<String> = KNOWN_FAILURES.iter().map(|s| s.to_string()).collect();
    let mut all_failing = BTreeSet::new();
    let mut unexpected = Vec::new();

    for (criterion, name, budget) in CRITERIA {
        let s = suite(&report, name);
        let failing = failing_ids(s);
        let runtime = suite(&timed, name)["runtime_ms"].as_u64().unwrap_or(0);
        let in_time = runtime < budget;
        let mut passed = s["passed"] == true && in_time;
        if criterion == 12 {
            passed &= identical;
        }
        let status = if passed { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {criterion:>2} [{name}] {status} ({runtime} ms)");
        if !failing.is_empty() {
            line.push_str(&format!(" failing: {}", failing.join(", ")));
        }
        if !in_time {
            line.push_str(&format!(" over budget {budget} ms"));
        }
        if criterion == 12 && !identical {
            line.push_str(" reports differ between runs");
        }
        println!("{line}");
        for id in &failing {
            if !known.contains(id) {
                unexpected.push(id.clone());
            }
        }
        if !in_time || (!passed && failing.is_empty()) {
            unexpected.push(format!("criterion {criterion}"));
        }
        all_failing.extend(failing);
    }

    assert!(identical, "verify-all is not byte-reproducible");
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
    assert_eq!(all_failing, known, "known failures changed");
    assert_eq!(report["passed"], false);
    assert_eq!(first.status.code(), Some(1), "check failures exit with 1");
}

fn table1_rows_cover_listed_types() {
    let out = springer(&["table1"]);
    assert!(out.status.success());
    let rows = json_of(&out);
    let names: Vec<&str> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["type"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 22);
    let e8 = rows.as_array().unwrap().iter().find(|r| r["type"] == "E8").unwrap();
    assert_eq!(e8["bad"], serde_json::json!([2, 3, 5]));
    assert_eq!(e8["singular"], serde_json::json!([]));
}

fn fold_d4_triality_gives_g2() {
    let out = springer(&["--text", "fold", "D4", "--auto", "rot3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("G2"));
}

fn usage_errors_exit_2() {
    assert_eq!(springer(&["--bogus", "table1"]).status.code(), Some(2));
    assert_eq!(springer(&["classify", "Q7"]).status.code(), Some(2));
    assert_eq!(springer(&["--json", "--text", "table1"]).status.code(), Some(2));
    assert_eq!(springer(&["exists", "A1", "sc", "4"]).status.code(), Some(2));
}

fn verify_springer_split_and_quasisplit() {
    let out = springer(&["verify-springer", "--n", "2", "--ring", "F(3)", "--coeffs", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let q = springer(&[
        "verify-springer", "--n", "2", "--ring", "F(3)", "--quasisplit", "--ext", "F(3,2)",
    ]);
    assert_eq!(q.status.code(), Some(0));
    let report = json_of(&q);
    let checks = report["suites"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["id"] == "recurrence" && c["passed"] == true));
}

fn non_unit_leading_coefficient_fails_validity() {
    let out = springer(&["verify-springer", "--n", "2", "--ring", "F(3)", "--coeffs", "0,1"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    let checks = report["suites"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["id"] == "coefficients" && c["passed"] == false));
}

fn solve_descent_cases() {
    for case in ["c2", "c3", "s3"] {
        let out = springer(&["solve-descent", "--type", "d4", "--case", case]);
        assert_eq!(out.status.code(), Some(0), "case {case}");
    }
    let out = springer(&["solve-descent", "--type", "a", "--case", "c2", "--n", "3", "--ring", "F(5)"]);
    assert_eq!(out.status.code(), Some(0));
}

fn main() -> ExitCode {
    let cases: [(&str, fn()); 7] = [
        ("acceptance_criteria", acceptance_criteria),
        ("table1_rows_cover_listed_types", table1_rows_cover_listed_types),
        ("fold_d4_triality_gives_g2", fold_d4_triality_gives_g2),
        ("usage_errors_exit_2", usage_errors_exit_2),
        ("verify_springer_split_and_quasisplit", verify_springer_split_and_quasisplit),
        ("non_unit_leading_coefficient_fails_validity", non_unit_leading_coefficient_fails_validity),
        ("solve_descent_cases", solve_descent_cases),
    ];
    let mut failed = 0;
    for (name, case) in cases {
        let ok = panic::catch_unwind(case).is_ok();
        println!("test {name} ... {}", if ok { "ok" } else { "FAILED" });
        failed += usize::from(!ok);
    }
    println!("acceptance: {} passed; {failed} failed", cases.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
