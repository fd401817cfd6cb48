//! End-to-end tests of the `dfrat` binary: every verb's happy path, the
//! exit-code contract (0 success, 1 uncertifiable, 2 malformed input), and
//! byte-level determinism of the reports.

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn dfrat_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dfrat"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn dfrat");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().expect("wait for dfrat");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn dfrat(args: &[&str], stdin: &str) -> (i32, String, String) {
    dfrat_env(args, stdin, &[])
}

fn parse(stdout: &str) -> Value {
    serde_json::from_str(stdout.trim()).expect("report is valid JSON")
}

#[test]
fn expand_prints_the_coefficient_box() {
    let gf = r#"{"vars": 1, "num": "1", "den": "1 - x"}"#;
    let (code, out, _) = dfrat(&["--verify-box", "5", "expand"], gf);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["dims"], json!([5]));
    assert_eq!(v["data"], json!(["1", "1", "1", "1", "1"]));

    let (code, out, _) = dfrat(&["--verify-box", "3", "--format", "text", "expand"], gf);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "[1, 1, 1]");
}

#[test]
fn expand_uses_dimension_dependent_default_boxes() {
    let (code, out, _) = dfrat(&["expand"], r#"{"vars": 2, "num": "1", "den": "1 - x*y"}"#);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["dims"], json!([32, 32]));

    let (code, out, _) = dfrat(
        &["linsys"],
        r#"{"vars": 3, "rows": [{"coeffs": [1, 1, -1], "rel": "eq", "offset": 0}]}"#,
    );
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["verify_box"], json!([16, 16, 16]));
}

#[test]
fn fit_round_trips_through_expand() {
    let gf = r#"{"vars": 1, "num": "1", "den": "1 - x - x^2"}"#;
    let (code, expanded, _) = dfrat(&["--verify-box", "20", "expand"], gf);
    assert_eq!(code, 0);
    let (code, out, _) = dfrat(&["fit", "--num-box", "1", "--den-box", "2"], &expanded);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["num"], json!("1"));
    assert_eq!(v["den"], json!("1 - x - x^2"));

    let (code, out, _) = dfrat(
        &["--format", "text", "fit", "--num-box", "1", "--den-box", "2"],
        &expanded,
    );
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 / (1 - x - x^2)");

    let diag = r#"{"vars": 2, "num": "1", "den": "1 - x*y"}"#;
    let (_, expanded, _) = dfrat(&["--verify-box", "12", "expand"], diag);
    let (code, out, _) = dfrat(
        &["--format", "text", "fit", "--num-box", "0", "--den-box", "1,1"],
        &expanded,
    );
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 / (1 - x*y)");
}

#[test]
fn fit_refuses_when_no_certified_fit_exists() {
    let gf = r#"{"vars": 1, "num": "1", "den": "1 - x - x^2"}"#;
    let (_, expanded, _) = dfrat(&["--verify-box", "20", "expand"], gf);
    let (code, out, err) = dfrat(&["fit", "--num-box", "0", "--den-box", "1"], &expanded);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("no verifiable rational fit"));
}

#[test]
fn szego_reports_preperiod_period_and_gf() {
    let mut seq = vec!["3".to_string()];
    for i in 0..45 {
        seq.push(if i % 2 == 0 { "1" } else { "2" }.to_string());
    }
    let input = serde_json::to_string(&seq).unwrap();
    let (code, out, _) = dfrat(&["szego"], &input);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["preperiod"], json!(["3"]));
    assert_eq!(v["period"], json!(["1", "2"]));
    assert_eq!(v["gf"]["den"], json!("1 - x^2"));
}

#[test]
fn szego_rejects_aperiodic_input_with_exit_1() {
    let squares: Vec<String> = (0..60u64).map(|n| (n * n).to_string()).collect();
    let input = serde_json::to_string(&squares).unwrap();
    let (code, out, err) = dfrat(&["szego"], &input);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("no preperiod/period pair"));
}

#[test]
fn classify_support_certifies_both_classes() {
    // single-term relation (n-3)(n-5) * a_n = 0: support ends at 5
    let finite = r#"{"shifts": [0], "coeffs": ["n^2 - 8*n + 15"], "valid_from": 0,
                     "init": ["1", "2", "3"]}"#;
    let (code, out, _) = dfrat(&["classify-support"], finite);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["class"], json!("finite"));
    assert_eq!(v["bound"], json!(5));

    // a_{n+2} = a_n with a nonzero start: gaps stay bounded by 2
    let periodic = r#"{"shifts": [0, 2], "coeffs": ["-1", "1"], "valid_from": 0,
                       "init": ["1", "0"]}"#;
    let (code, out, _) = dfrat(&["--format", "text", "classify-support"], periodic);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "syndetic from=2 constant=2");
}

#[test]
fn semilinear_gf_reports_the_fitted_function() {
    let set = r#"{"finite": [], "parts": [{"base": [0, 0], "periods": [[1, 1]]}]}"#;
    let (code, out, _) = dfrat(&["--verify-box", "10", "semilinear-gf"], set);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["gf"]["text"], json!("1 / (1 - x*y)"));
    assert_eq!(v["unambiguous"], json!(true));
    assert_eq!(v["verify_box"], json!([10, 10]));
}

#[test]
fn linsys_matches_the_composition_identity() {
    let sys = r#"{"vars": 3, "rows": [{"coeffs": [1, 1, -1], "rel": "eq", "offset": 0}]}"#;
    let (code, out, _) = dfrat(&["--verify-box", "8", "--format", "text", "linsys"], sys);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        "gf: 1 / (1 - x*z - y*z + x*y*z^2)\nverified: true"
    );
}

#[test]
fn curve2_classifies_lines_and_flags_suspected_irrationality() {
    let (code, out, _) = dfrat(&["--verify-box", "12", "curve2"], r#"{"factors": ["x - y"]}"#);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["factors"][0]["class"]["kind"], json!("line"));
    assert_eq!(v["outcome"]["kind"], json!("rational"));
    assert_eq!(v["outcome"]["gf"]["text"], json!("1 / (1 - x*y)"));
    assert_eq!(v["verified"], json!(true));

    // a suspected-non-rational outcome is a finding, not a failure: exit 0
    let (code, out, _) = dfrat(
        &["--verify-box", "12", "curve2"],
        r#"{"factors": ["x^2 - y"]}"#,
    );
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["outcome"]["kind"], json!("not-rational-suspected"));
    assert_eq!(v["verified"], json!(false));
}

#[test]
fn pipeline_d2_reconstructs_the_diagonal_series() {
    let n = 40;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(if i == j { "1" } else { "0" });
        }
    }
    let input = json!({
        "prefix": {"dims": [n, n], "valid": [n, n], "data": data},
        "rec": {"window": 1, "entries": [
            {"offset": [0, 0], "q": "1"},
            {"offset": [1, 1], "q": "-1"},
        ]},
    })
    .to_string();
    let (code, out, _) = dfrat(&["pipeline-d2"], &input);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["gf"]["text"], json!("1 / (1 - x*y)"));
    assert_eq!(v["verified"], json!(true));
    assert_eq!(v["primes"], json!([]));
}

#[test]
fn demo_np3_verifies_on_the_default_bound() {
    let (code, out, _) = dfrat(&["demo-np3"], "");
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["bound"], json!(30));
    assert_eq!(v["zeros_are_diagonal"], json!(true));
    assert_eq!(v["gf"]["text"], json!("1 / (1 - x*y)"));
    assert_eq!(v["gf_matches_diagonal"], json!(true));
    assert_eq!(v["gf_matches_product"], json!(false));
    assert_eq!(v["verified"], json!(true));
}

#[test]
fn mahler_reports_a_witness_or_none() {
    let fast: Vec<String> = (0..12u32).map(|m| (1u128 << (m * m)).to_string()).collect();
    let input = serde_json::to_string(&fast).unwrap();
    let (code, out, _) = dfrat(&["mahler", "--c", "2", "--horizon", "11"], &input);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["witness"], json!(1));

    let (code, out, _) = dfrat(
        &["--format", "text", "mahler", "--c", "3", "--horizon", "2"],
        r#"["1", "1", "1"]"#,
    );
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "witness: none");
}

#[test]
fn malformed_input_exits_2_with_a_location() {
    let (code, out, err) = dfrat(&["expand"], "{\"vars\": 1, \"num\": \n");
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line") && err.contains("column"), "{err}");

    // well-formed JSON that is not a generating function is still exit 2
    let (code, _, _) = dfrat(&["expand"], r#"{"vars": 1}"#);
    assert_eq!(code, 2);
}

#[test]
fn unknown_flags_exit_2() {
    let (code, _, _) = dfrat(&["expand", "--bogus"], "");
    assert_eq!(code, 2);
    let (code, _, _) = dfrat(&["no-such-verb"], "");
    assert_eq!(code, 2);
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_settings() {
    let set = r#"{"finite": [[2, 0]], "parts": [{"base": [0, 0], "periods": [[1, 1], [2, 1]]}]}"#;
    let (c1, first, _) = dfrat(&["semilinear-gf"], set);
    let (c2, second, _) = dfrat(&["semilinear-gf"], set);
    let (c3, third, _) = dfrat_env(&["semilinear-gf"], set, &[("DFRAT_THREADS", "8")]);
    assert_eq!((c1, c2, c3), (0, 0, 0));
    assert_eq!(first, second);
    assert_eq!(first, third);

    let (_, a, _) = dfrat(&["demo-np3", "--bound", "12"], "");
    let (_, b, _) = dfrat_env(&["demo-np3", "--bound", "12"], "", &[("DFRAT_THREADS", "1")]);
    assert_eq!(a, b);
}
