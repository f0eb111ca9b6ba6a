use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_cft");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `$ cft ...` lines in the README followed by their expected output, up to a blank line.
fn readme_examples() -> Vec<(String, String)> {
    let text = include_str!("../../../README.md");
    let mut out = Vec::new();
    let mut lines = text.lines();
    while let Some(line) = lines.next() {
        if let Some(cmd) = line.strip_prefix("$ cft ") {
            let expected: Vec<&str> = lines.by_ref().take_while(|l| !l.is_empty()).collect();
            out.push((cmd.to_string(), expected.join("\n") + "\n"));
        }
    }
    out
}

#[test]
fn readme_examples_match() {
    let examples = readme_examples();
    assert!(examples.len() >= 10);
    for (cmd, expected) in examples {
        let o = Command::new("sh")
            .arg("-c")
            .arg(format!("\"$CFT\" {cmd}"))
            .env("CFT", BIN)
            .output()
            .unwrap();
        assert!(o.status.success(), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), expected, "{cmd}");
    }
}

#[test]
fn residue_of_dt_over_t() {
    let o = run(&["residue", "--q", "3", "--x", "t^-1", "--y", "t"]);
    assert_eq!(stdout(&o), "{\"residue\":\"1\"}\n");
}

#[test]
fn field_flag_is_accepted() {
    let a = run(&["pairing-local", "--field", "GF(4)", "--x", "t^-1", "--y", "t"]);
    let b = run(&["pairing-local", "--q", "4", "--x", "t^-1", "--y", "t"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn idele_on_stdin() {
    let idele = r#"{"rational_part":"1","corrections":{"T":"T"}}"#;
    let a = run_stdin(&["symbol", "--q", "2", "--ext", "constant:3"], idele);
    let b = run_stdin(&["symbol", "--q", "2", "--ext", "constant:3", "--idele", "-"], idele);
    assert_eq!(stdout(&a), "{\"exponent\":1,\"modulus\":3}\n");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn neukirch_output_feeds_symbol() {
    let j = run(&["neukirch", "--q", "3", "--j", "2", "--n", "4"]);
    assert!(j.status.success());
    let s = run_stdin(&["symbol", "--ext", "constant:4"], &stdout(&j));
    assert_eq!(stdout(&s), "{\"exponent\":2,\"modulus\":4}\n");
}

#[test]
fn principal_idele_has_trivial_as_symbol() {
    let o = run(&["symbol", "--q", "2", "--ext", "as:1/T", "--idele", r#"{"rational_part":"T+1","corrections":{}}"#]);
    assert_eq!(stdout(&o), "{\"p\":2,\"shift\":0}\n");
}

#[test]
fn splitting_json() {
    let o = run(&["splitting", "--q", "2", "--x", "1/T", "--max-degree", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let kinds: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["splitting"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["SPLIT", "RAMIFIED", "INERT"]);
}

#[test]
fn verify_single_suite_json() {
    let o = run(&["verify", "--suite", "product-formula", "--seed", "7"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["residue", "--q", "2", "--x", "t^("]).status.code(), Some(1));
    let parse = run(&["residue", "--q", "2", "--x", "t^(", "--y", "1"]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parse.stderr).starts_with("parse error"));
    let unsupported = run(&["residue", "--q", "6", "--x", "1", "--y", "1"]);
    assert_eq!(unsupported.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unsupported.stderr).starts_with("error:"));
    assert_eq!(run_stdin(&["symbol", "--q", "2", "--ext", "constant:2"], "{").status.code(), Some(1));
}

#[test]
fn as_symbol_rejects_degenerate_extension() {
    // T^2 + T lies in wp K, so the extension is trivial
    let o = run(&["symbol", "--q", "2", "--ext", "as:T^2+T", "--idele", r#"{"rational_part":"T","corrections":{}}"#]);
    assert_eq!(o.status.code(), Some(2));
}
