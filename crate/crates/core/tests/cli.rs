//! End-to-end tests of the command line interface: output formats, the JSON
//! schema of `decompose --json`, and the exit code contract (0 success,
//! 2 rejected input).

use std::process::{Command, Output};

fn laddec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laddec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = laddec(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn decompose_text_output() {
    let text = stdout_of(&["decompose", "[1,2]", "[2,3]"]);
    assert!(text.contains("factors (2):"));
    assert!(text.contains("[1,2]+[2,3]"));
    assert!(text.contains("[1,3]+[2,2]"));
    assert!(text.contains("[max]"));
}

#[test]
fn decompose_json_schema() {
    let text = stdout_of(&["decompose", "[2,3]", "[1,2]", "--json", "--certificates"]);
    let value: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    let pair = value.get("pair").expect("pair key");
    for key in ["m1", "m2", "lambda", "mu", "w", "j1", "j2"] {
        assert!(pair.get(key).is_some(), "pair.{key} present");
    }
    let factors = value.get("factors").and_then(|f| f.as_array()).expect("factors");
    assert_eq!(factors.len(), 2);
    let mut max_flags = 0;
    for factor in factors {
        for key in ["x", "segments", "d_otimes", "is_max", "certificate"] {
            assert!(factor.get(key).is_some(), "factor.{key} present");
        }
        if factor["is_max"].as_bool().unwrap() {
            max_flags += 1;
            assert_eq!(factor["segments"], serde_json::json!([[1, 3], [2, 2]]));
            assert_eq!(factor["d_otimes"], serde_json::json!(1));
        }
    }
    assert_eq!(max_flags, 1);
}

#[test]
fn decompose_accepts_json_input_and_oracle_check() {
    let text = stdout_of(&[
        "decompose",
        "{\"segments\": [[1,2]]}",
        "{\"segments\": [[2,3]]}",
        "--oracle-check",
    ]);
    assert!(text.contains("oracle check: all candidates agree"));
}

#[test]
fn invalid_input_exits_with_code_2() {
    for args in [
        vec!["decompose", "[1,2]", "[1,3]"],   // repeated begin point
        vec!["decompose", "[1,2", "[2,3]"],    // parse error
        vec!["character", "[1,3]+[2,2]"],      // not a ladder
        vec!["rs", "3,2,1"],                   // not 321-avoiding
        vec!["gadgets", "2,1", "--j1", "1,2"], // w not increasing on J1
        vec!["invariants", "[1,2]", "[2,3]", "2,1,3"], // size mismatch
        vec!["catalan", "1", "3"],             // count constraint
    ] {
        let out = laddec(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn shuffle_and_qshuffle_output() {
    let text = stdout_of(&["shuffle", "e1", "e2"]);
    assert_eq!(text.trim(), "1 * e1.e2\n1 * e2.e1");

    let text = stdout_of(&["qshuffle", "e1", "e2"]);
    assert_eq!(text.trim(), "1 * e1.e2\nq * e2.e1");

    let text = stdout_of(&["qshuffle", "e1", "e1"]);
    assert_eq!(text.trim(), "q^-2 + 1 * e1.e1");
}

#[test]
fn character_output() {
    let text = stdout_of(&["character", "[1,2]+[2,3]"]);
    assert_eq!(text.trim(), "1 * e2.e1.e3.e2\n1 * e2.e3.e1.e2");

    // negative coordinates are shifted with a note
    let text = stdout_of(&["character", "[-1,0]"]);
    assert!(text.contains("shifted by 2"));
    assert!(text.contains("1 * e2.e1"));
}

#[test]
fn invariants_output() {
    let text = stdout_of(&["invariants", "[1,2]", "[2,3]", "2,1"]);
    assert!(text.contains("matrix exists: yes"));
    assert!(text.contains("alpha = (0, 1)"));
    assert!(text.contains("d_otimes = -1"));
    assert!(text.contains("d_otimes_via_shuffle = -1"));

    let text = stdout_of(&["invariants", "[1,2]+[2,3]", "0", "2,1"]);
    assert!(text.contains("matrix exists: no"));
}

#[test]
fn gadgets_output() {
    let text = stdout_of(&["gadgets", "1,2", "--j1", "2"]);
    assert!(text.contains("prec order: 1 < 2"));
    assert!(text.contains("f(1) = 2"));
    assert!(text.contains("J_tilde = {1}"));
    assert!(text.contains("x_max = (2,1)"));
}

#[test]
fn rs_output() {
    let text = stdout_of(&["rs", "2,1"]);
    assert!(text.contains("P = [2][1]"));
    assert!(text.contains("Q = [2][1]"));
    assert!(text.contains("wbar = (1,2)"));
    assert!(text.contains("J1 = {2}"));
    assert!(text.contains("J2 = {1}"));
}

#[test]
fn pimax_and_catalan_output() {
    let text = stdout_of(&["pimax", "[2,3]", "[1,2]"]);
    assert!(text.contains("pi_max = [1,3]+[2,2]"));
    assert!(text.contains("d = 1"));

    let text = stdout_of(&["catalan", "2", "1"]);
    assert!(text.contains("factors: 5"));
}
