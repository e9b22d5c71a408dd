#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// One recorded CLI invocation.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    /// Schema for stdout, when stdout carries a JSON document.
    pub schema: Option<&'static str>,
}

pub const CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "stratum_kappa_2",
        args: &["stratum", "--kappa", "2"],
        exit: 0,
        schema: Some("stratum"),
    },
    GoldenCase {
        name: "stratum_kappa_4",
        args: &["stratum", "--kappa", "4"],
        exit: 0,
        schema: Some("stratum"),
    },
    GoldenCase {
        name: "stratum_kappa_3",
        args: &["stratum", "--kappa", "3"],
        exit: 2,
        schema: None,
    },
    GoldenCase {
        name: "sequence_teichmuller",
        args: &[
            "sequence",
            "--regime",
            "teichmuller",
            "--genus",
            "2",
            "--K",
            "0",
            "--m-min",
            "2",
            "--m-max",
            "2",
            "--slack",
            "0",
        ],
        exit: 0,
        schema: Some("sequence"),
    },
    GoldenCase {
        name: "sequence_thurston_from",
        args: &[
            "sequence",
            "--regime",
            "thurston-from",
            "--genus",
            "2",
            "--m-min",
            "2",
            "--m-max",
            "2",
            "--c",
            "2",
        ],
        exit: 3,
        schema: None,
    },
    GoldenCase {
        name: "sequence_reversed_range",
        args: &[
            "sequence",
            "--regime",
            "teichmuller",
            "--genus",
            "2",
            "--m-min",
            "5",
            "--m-max",
            "3",
        ],
        exit: 2,
        schema: None,
    },
    GoldenCase {
        name: "certify_difference",
        args: &[
            "certify",
            "--f",
            "t1 - t2",
            "--regime",
            "teichmuller",
            "--genus",
            "2",
            "--K",
            "0",
            "--slack",
            "0",
        ],
        exit: 0,
        schema: Some("certificate"),
    },
    GoldenCase {
        name: "certify_single_monomial",
        args: &[
            "certify",
            "--f",
            "t1",
            "--regime",
            "teichmuller",
            "--genus",
            "2",
            "--K",
            "0",
            "--slack",
            "0",
        ],
        exit: 0,
        schema: Some("certificate"),
    },
    GoldenCase {
        name: "certify_dangling_caret",
        args: &["certify", "--f", "t1 ^ "],
        exit: 2,
        schema: None,
    },
    GoldenCase {
        name: "hyp_collar",
        args: &["hyp", "collar", "--length", "1.0"],
        exit: 0,
        schema: Some("hyp"),
    },
    GoldenCase {
        name: "hyp_wolpert",
        args: &["hyp", "wolpert", "--K", "0", "--length", "0.125"],
        exit: 0,
        schema: Some("hyp"),
    },
    GoldenCase {
        name: "hyp_thurston_lb",
        args: &[
            "hyp",
            "thurston-lb",
            "--x-lengths",
            "1,0.5",
            "--y-lengths",
            "0.5,1",
        ],
        exit: 0,
        schema: Some("hyp"),
    },
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schema")
        .join(format!("{name}.schema.json"))
}

pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str]) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_pinchcert"))
        .args(args)
        .env_remove("PINCHCERT_PRECISION_GUARD")
        .output()
        .expect("binary runs");
    Outcome {
        exit: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Compare against `<name>.stdout` / `<name>.stderr`. With `PINCHCERT_BLESS=1`
/// the files are rewritten instead. Returns a list of mismatches.
pub fn check_case(case: &GoldenCase) -> Vec<String> {
    let got = run_cli(case.args);
    let mut problems = Vec::new();
    if got.exit != case.exit {
        problems.push(format!(
            "{}: exit {} (expected {})",
            case.name, got.exit, case.exit
        ));
    }
    let bless = std::env::var("PINCHCERT_BLESS").is_ok_and(|v| v == "1");
    for (ext, text) in [("stdout", &got.stdout), ("stderr", &got.stderr)] {
        let path = golden_dir().join(format!("{}.{ext}", case.name));
        if bless {
            std::fs::write(&path, text).expect("write golden file");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if &want == text => {}
            Ok(_) => problems.push(format!(
                "{}: {ext} differs from {}",
                case.name,
                path.display()
            )),
            Err(e) => problems.push(format!(
                "{}: cannot read {}: {e}",
                case.name,
                path.display()
            )),
        }
    }
    problems
}

/// Validate `doc` against the named schema; returns the error messages.
pub fn schema_errors(schema: &str, doc: &str) -> Vec<String> {
    let schema_text = std::fs::read_to_string(schema_path(schema)).expect("schema file");
    let schema_json: serde_json::Value =
        serde_json::from_str(&schema_text).expect("schema is JSON");
    let instance: serde_json::Value = match serde_json::from_str(doc) {
        Ok(v) => v,
        Err(e) => return vec![format!("not JSON: {e}")],
    };
    let validator = jsonschema::validator_for(&schema_json).expect("schema compiles");
    validator
        .iter_errors(&instance)
        .map(|e| e.to_string())
        .collect()
}
