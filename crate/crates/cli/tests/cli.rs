//! End-to-end tests of the `zeckgap` binary: expected outputs, exit codes,
//! the enumeration cap override, and byte-identical reruns.

use std::process::{Command, Output};

fn zeckgap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeckgap"))
        .args(args)
        .output()
        .expect("failed to spawn zeckgap")
}

fn stdout_of(args: &[&str]) -> String {
    let out = zeckgap(args);
    assert!(
        out.status.success(),
        "args {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    zeckgap(args).status.code().unwrap()
}

#[test]
fn seq_prints_terms() {
    assert_eq!(stdout_of(&["seq", "--kangaroo", "2,1", "--count", "6"]), "1 2 3 4 6 9\n");
    assert_eq!(stdout_of(&["seq", "--coeffs", "1,1", "--count", "4"]), "1 2 3 5\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit_code(&["seq", "--kangaroo", "1,1", "--count", "0"]), 2);
    assert_eq!(exit_code(&["seq", "--count", "3"]), 2); // no spec given
    assert_eq!(exit_code(&["seq", "--kangaroo", "1,1", "--coeffs", "1,1", "--count", "3"]), 2);
    assert_eq!(exit_code(&["decompose", "--kangaroo", "1,1", "0"]), 2);
    assert_eq!(exit_code(&["spectral", "--coeffs", "0,1"]), 2);
    assert_eq!(exit_code(&["census", "--kangaroo", "1,1", "--n", "5", "--method", "bogus"]), 2);
}

#[test]
fn decompose_greedy_and_fardiff() {
    assert_eq!(stdout_of(&["decompose", "--kangaroo", "2,1", "10"]), "9 + 1\n");
    assert_eq!(stdout_of(&["decompose", "--coeffs", "1,1", "100"]), "89 + 8 + 3\n");
    assert_eq!(stdout_of(&["decompose", "--fardiff", "10"]), "+13 - 3\n");
    assert_eq!(stdout_of(&["decompose", "--fardiff", "11"]), "+13 - 2\n");
    assert_eq!(stdout_of(&["decompose", "--fardiff", "33"]), "+34 - 1\n");
}

#[test]
fn census_counts_match_the_exact_method() {
    let by_enum = stdout_of(&["census", "--kangaroo", "1,3", "--n", "5", "--method", "enum"]);
    assert_eq!(by_enum, "j,count\n1,13\n2,8\n3,3\n4,1\n");
    let exact = stdout_of(&["census", "--kangaroo", "1,3", "--n", "5", "--method", "exact"]);
    assert_eq!(by_enum, exact);
    let sharded = stdout_of(&[
        "census", "--kangaroo", "1,3", "--n", "5", "--method", "enum", "--shards", "4",
    ]);
    assert_eq!(by_enum, sharded);
}

#[test]
fn enumeration_cap_is_overridable_and_exits_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_zeckgap"))
        .args(["census", "--kangaroo", "1,1", "--n", "30", "--method", "enum"])
        .env("ZECK_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code().unwrap(), 3);
}

#[test]
fn theory_rows_below_the_minimum_gap_are_zero() {
    let out = stdout_of(&["theory", "--kangaroo", "2,1", "--jmax", "5"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("j,p_theory"));
    assert_eq!(lines.next(), Some("1,0"));
    assert_eq!(lines.next(), Some("2,0"));
    assert!(lines.next().unwrap().starts_with("3,0.3176"));
}

#[test]
fn compare_fibonacci_errors_stay_small() {
    let out = stdout_of(&["compare", "--kangaroo", "1,1", "--n", "200", "--jmax", "8"]);
    for line in out.lines().skip(1) {
        let err: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(err <= 0.01, "abs_err too large in row: {line}");
    }
}

#[test]
fn compare_emits_both_pg_columns_when_l_is_at_least_three() {
    let out = stdout_of(&["compare", "--kangaroo", "1,3", "--n", "20", "--jmax", "6"]);
    let header = out.lines().next().unwrap();
    assert_eq!(
        header,
        "j,count,p_empirical,p_theory,abs_err,p_theory_unweighted,p_theory_weighted"
    );
    let json = stdout_of(&[
        "compare", "--kangaroo", "1,3", "--n", "20", "--jmax", "6", "--format", "json",
    ]);
    assert!(json.contains("\"pg\":{\"j\":1,"));
    // no experiment columns for l < 3
    let plain = stdout_of(&["compare", "--kangaroo", "1,2", "--n", "20", "--jmax", "6"]);
    assert_eq!(plain.lines().next().unwrap(), "j,count,p_empirical,p_theory,abs_err");
}

#[test]
fn fardiff_reports_carry_the_marker() {
    let json = stdout_of(&["census", "--fardiff", "--n", "5", "--format", "json"]);
    assert_eq!(
        json,
        "{\"g\":null,\"l\":null,\"fardiff\":true,\"n\":5,\"Y\":3,\"rows\":[{\"j\":3,\"count\":1},{\"j\":4,\"count\":2}]}\n"
    );
    let cmp = stdout_of(&["compare", "--fardiff", "--n", "20", "--jmax", "8", "--format", "json"]);
    assert!(cmp.contains("\"fardiff\":true"));
}

#[test]
fn spectral_summary_is_deterministic_json() {
    let out = stdout_of(&["spectral", "--kangaroo", "1,1"]);
    assert!(out.starts_with("{\"g\":1,\"l\":1,\"lambda1\":1.61803398875,"));
    assert_eq!(out, stdout_of(&["spectral", "--kangaroo", "1,1"]));
}

#[test]
fn approx_reports_alpha_and_residual() {
    let out = stdout_of(&["approx", "--g", "100"]);
    assert!(out.contains("\"alpha\":3.40961340236"));
    assert!(out.contains("\"residual\":"));
    let with_l = stdout_of(&["approx", "--g", "100", "--l", "5"]);
    assert!(with_l.contains("\"lambda\":"));
    assert!(with_l.contains("\"gapRatio\":"));
}

#[test]
fn metadata_goes_to_stderr_only_under_meta() {
    let plain = zeckgap(&["seq", "--kangaroo", "1,1", "--count", "3"]);
    assert!(plain.stderr.is_empty());
    let meta = zeckgap(&["seq", "--kangaroo", "1,1", "--count", "3", "--meta"]);
    assert_eq!(meta.stdout, plain.stdout);
    assert!(String::from_utf8_lossy(&meta.stderr).starts_with("# zeckgap "));
}

#[test]
fn output_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join("zeckgap-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("compare.csv");
    let on_stdout = stdout_of(&["compare", "--kangaroo", "2,2", "--n", "30", "--jmax", "7"]);
    let out = zeckgap(&[
        "compare", "--kangaroo", "2,2", "--n", "30", "--jmax", "7",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), on_stdout);
}
