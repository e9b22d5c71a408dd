mod common;

use common::{check_case, run_cli, schema_errors, CASES};

#[test]
fn golden_outputs_match() {
    let problems: Vec<String> = CASES.iter().flat_map(check_case).collect();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn json_outputs_follow_schemas() {
    for case in CASES {
        if let Some(schema) = case.schema {
            let out = run_cli(case.args);
            let errs = schema_errors(schema, &out.stdout);
            assert!(errs.is_empty(), "{}: {errs:?}", case.name);
        }
    }
}

#[test]
fn reruns_are_byte_identical() {
    for case in CASES {
        let a = run_cli(case.args);
        let b = run_cli(case.args);
        assert_eq!(
            (a.exit, a.stdout, a.stderr),
            (b.exit, b.stdout, b.stderr),
            "{}",
            case.name
        );
    }
}

#[test]
fn csv_has_header_and_lf_endings() {
    let out = run_cli(&[
        "sequence", "--K", "0", "--m-min", "2", "--m-max", "3", "--slack", "0", "--format", "csv",
    ]);
    assert_eq!(out.exit, 0);
    assert!(!out.stdout.contains('\r'));
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "m,i,target_len,len_lo,len_hi,lam_lo,lam_hi");
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines[1].starts_with("2,1,"));
    assert!(lines[6].starts_with("3,3,"));
}

#[test]
fn inconclusive_certificate_exits_four() {
    let out = run_cli(&["certify", "--f", "t1^60 + t2", "--K", "0", "--slack", "0"]);
    assert_eq!(out.exit, 4);
    assert!(schema_errors("certificate", &out.stdout).is_empty());
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(doc["m_star"].is_null());
    assert!(doc["flags"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f == "inconclusive"));
}

#[test]
fn envelope_needs_lead_assertion() {
    let base = ["certify", "--f", "t1 - t2", "--envelope", "M=1,r=1"];
    assert_eq!(run_cli(&base).exit, 2);
    let mut with = base.to_vec();
    with.push("--lead-complete");
    let out = run_cli(&with);
    assert_eq!(out.exit, 0, "{}", out.stderr);
    assert!(out.stdout.contains("conditional-lead"));
}

#[test]
fn precision_guard_from_environment() {
    let args = [
        "sequence",
        "--regime",
        "thurston-from",
        "--genus",
        "2",
        "--m-min",
        "3",
        "--m-max",
        "12",
    ];
    let plain = run_cli(&args);
    assert_eq!(plain.exit, 0);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_pinchcert"))
        .args(args)
        .env("PINCHCERT_PRECISION_GUARD", "1e100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let narrow: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let wide: serde_json::Value = serde_json::from_str(&plain.stdout).unwrap();
    assert!(
        narrow["columns"].as_array().unwrap().len() < wide["columns"].as_array().unwrap().len()
    );
    let bad = std::process::Command::new(env!("CARGO_BIN_EXE_pinchcert"))
        .args(args)
        .env("PINCHCERT_PRECISION_GUARD", "nope")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
