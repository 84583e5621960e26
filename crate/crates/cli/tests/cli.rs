//! End-to-end tests of the `spectile` binary: exit codes, text output,
//! JSON schema stability and byte-identical round-tripping.

use std::path::PathBuf;
use std::process::{Command, Output};

use spectile_cli::report::{SetReport, VerifyReport};

fn spectile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectile"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("spectile-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn analyze_positive_set_in_text_mode() {
    let out = spectile(&["analyze", "-N", "30", "-A", "0,15"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("T1 yes | T2 yes | tile yes | spectral yes"));
    assert!(text.contains("spectrum: {0, 15}"));
    assert!(text.contains("S_A [2]"));
}

#[test]
fn analyze_negative_set_still_exits_zero() {
    let out = spectile(&["analyze", "-N", "30", "-A", "0,1,3"]);
    assert_eq!(out.status.code(), Some(0), "a decided negative is a success");
    let text = stdout_of(&out);
    assert!(text.contains("tile no | spectral no"));
}

#[test]
fn analyze_emits_schema_stable_json() {
    let out = spectile(&["analyze", "-N", "30", "-A", "0,15", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: SetReport = serde_json::from_str(&stdout_of(&out)).expect("valid schema");
    assert_eq!(report.schema, 1);
    assert_eq!(report.command, "analyze");
    assert_eq!(report.group.n, 30);
    assert_eq!(report.group.primes, vec![2, 3, 5]);
    assert_eq!(report.input, "0,15");
    assert_eq!(report.verdicts.t1, Some(true));
    assert_eq!(report.verdicts.t2, Some(true));
    assert_eq!(report.verdicts.tile, Some(true));
    assert_eq!(report.verdicts.spectral, Some(true));
    assert_eq!(report.witnesses.spectrum.as_deref(), Some(&[0, 15][..]));
    assert_eq!(report.zero_profile.s_a, vec![2]);
    assert!(!report.budget.exhausted);
}

#[test]
fn json_report_round_trips_byte_identically() {
    let path = temp_path("analyze.json");
    let out = spectile(&[
        "analyze",
        "-N",
        "30",
        "-A",
        "0,1,2,3,4,5",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let bytes = std::fs::read_to_string(&path).expect("report written");
    let parsed: SetReport = serde_json::from_str(&bytes).expect("valid schema");
    let re_emitted = serde_json::to_string_pretty(&parsed).expect("serializable") + "\n";
    assert_eq!(re_emitted, bytes);
    std::fs::remove_file(&path).ok();
}

#[test]
fn rejects_non_square_free_modulus() {
    let out = spectile(&["analyze", "-N", "12", "-A", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rejects_malformed_literals_and_flags() {
    for args in [
        ["analyze", "-N", "30", "-A", "0,,5"].as_slice(),
        ["analyze", "-N", "30", "-A", "30"].as_slice(),
        ["tile", "-N", "30", "-A", "0^2,15"].as_slice(),
        ["decompose", "-N", "30", "-A", "0,15", "--primes", "7"].as_slice(),
        ["verify", "-N", "30"].as_slice(),
    ] {
        let out = spectile(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?} should be rejected");
    }
}

#[test]
fn exhausted_budget_exits_three() {
    let out = spectile(&["spectrum", "-N", "30", "-A", "0,1,3", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let report: SetReport = serde_json::from_str(&stdout_of(&spectile(&[
        "spectrum", "-N", "30", "-A", "0,1,3", "--budget", "0", "--format", "json",
    ])))
    .expect("valid schema");
    assert!(report.budget.exhausted);
    assert_eq!(report.verdicts.spectral, None);
}

#[test]
fn spectrum_and_tile_report_single_sided_verdicts() {
    let out = spectile(&["spectrum", "-N", "30", "-A", "0,5,10,15,20,25", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: SetReport = serde_json::from_str(&stdout_of(&out)).expect("valid schema");
    assert_eq!(report.verdicts.spectral, Some(true));
    assert_eq!(report.verdicts.tile, None);
    assert!(report.witnesses.spectrum.is_some());

    let out = spectile(&["tile", "-N", "30", "-A", "0,6,12,18,24", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: SetReport = serde_json::from_str(&stdout_of(&out)).expect("valid schema");
    assert_eq!(report.verdicts.tile, Some(true));
    assert_eq!(report.verdicts.spectral, None);
    let complement = report.witnesses.tiling_complement.expect("tile witness");
    assert_eq!(complement, vec![0, 5, 10, 15, 20, 25]);
}

#[test]
fn decompose_reports_cycles() {
    let out = spectile(&["decompose", "-N", "30", "-A", "0,6,12,18,24", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: SetReport = serde_json::from_str(&stdout_of(&out)).expect("valid schema");
    let cycles = report.cycles.expect("decomposition found");
    assert_eq!(cycles.len(), 1);
    assert_eq!((cycles[0].order, cycles[0].base), (5, 0));
}

#[test]
fn counterexample_command_confirms_the_family() {
    let out = spectile(&["counterexample", "2", "3", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("input 5,6,12,18,24,25"));
    assert!(text.contains("vanishes exactly at class 1: true"));
    assert!(text.contains("prime-cycle decomposition infeasible: true"));

    let out = spectile(&["counterexample", "2", "2", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exhaustive_small_sizes_matches_golden_counts() {
    let path = temp_path("verify.json");
    let out = spectile(&[
        "verify",
        "-N",
        "30",
        "--exhaustive",
        "--sizes",
        "1,2",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let bytes = std::fs::read_to_string(&path).expect("report written");
    let report: VerifyReport = serde_json::from_str(&bytes).expect("valid schema");
    assert_eq!(report.mode, "exhaustive");
    assert_eq!(report.samples_per_size, None);
    let rows: Vec<(u64, u64, u64)> = report
        .per_size
        .iter()
        .map(|r| (r.size, r.examined, r.positives))
        .collect();
    assert_eq!(rows, vec![(1, 1, 1), (2, 7, 4)]);
    assert!(report.violations.is_empty());
    assert!(report.inconclusive.is_empty());
    assert_eq!(report.case_suite.pairs_examined, 5);
    assert_eq!(report.case_suite.failures, 0);
    let re_emitted = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    assert_eq!(re_emitted, bytes);
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_sampled_is_deterministic_for_a_seed() {
    let run = || {
        let out = spectile(&[
            "verify", "-N", "42", "--sampled", "20", "--seed", "1", "--format", "json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let mut report: VerifyReport =
            serde_json::from_str(&stdout_of(&out)).expect("valid schema");
        report.timing_ms = 0;
        report
    };
    let first = run();
    assert_eq!(first.mode, "sampled");
    assert_eq!(first.seed, Some(1));
    assert_eq!(first.samples_per_size, Some(20));
    assert_eq!(first, run());
}
