use std::process::Command;

fn gassmann(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gassmann"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn no_arguments_is_a_usage_error() {
    assert_eq!(gassmann(&[]).0, 64);
    assert_eq!(gassmann(&["det", "--bogus"]).0, 64);
}

#[test]
fn printed_determinant() {
    let (code, out) = gassmann(&["det", "--pattern", "fixtures/g384_printed.pat", "--assign", "1,1,-1,0,0,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "4294967296");
}

#[test]
fn local_integral_pair_of_order_384() {
    let args = [
        "equiv", "--group", "fixtures/g384.grp", "--h1", "fixtures/g384_h1.grp", "--h2",
        "fixtures/g384_h2.grp", "--relation", "local-integral", "--expect", "true",
    ];
    let (code, out) = gassmann(&args);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("local-integral: true"));
}

#[test]
fn expect_false_verdict_exits_1() {
    let args = [
        "equiv", "--group", "g1440", "--h1", "g1440_h1", "--h2", "g1440_h2", "--relation",
        "solvable", "--expect", "true",
    ];
    assert_eq!(gassmann(&args).0, 1);
}

#[test]
fn json_output_and_errors() {
    let (code, out) = gassmann(&["--json", "split", "-g", "g1440", "--h1", "g1440_h1", "--h2", "g1440_h2",
        "--decomposition", "h1", "--inertia", "h1&h2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h1"], serde_json::json!([[1, 1, 4], [2, 2, 2], [3, 2, 2], [6, 1, 8], [6, 2, 4]]));
    assert_eq!(v["diagnostics"]["sum_e"], serde_json::json!([86, 82]));
    assert_eq!(gassmann(&["enumerate", "--group", "missing.grp"]).0, 2);
}
