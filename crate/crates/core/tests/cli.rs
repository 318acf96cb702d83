//! Golden tests of the `propkit` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use propkit::envelope::{to_json, Derivation};
use propkit::natded::{and_e1, and_i, nax};
use propkit::parse;

fn propkit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_propkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn decide_excluded_middle() {
    let o = propkit(&["decide", "p | ~p"], "");
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "VALID\n"));
}

#[test]
fn decide_atom_is_refuted() {
    let o = propkit(&["decide", "p"], "");
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "INVALID\np=false\n"));
}

#[test]
fn decide_sequents() {
    let o = propkit(&["decide", "--sequent", "p -> q, p => q"], "");
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "VALID\n"));
    let o = propkit(&["decide", "--sequent", "p | q => p"], "");
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "INVALID\np=false,q=true\n"));
    let o = propkit(&["decide", "--sequent", "=>"], "");
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "INVALID\n\n"));
    let o = propkit(&["decide", "--sequent", "p, q"], "");
    assert_eq!(code(&o), 2);
}

#[test]
fn decide_writes_a_checkable_proof() {
    let dir = tempfile::tempdir().unwrap();
    for (args, calculus) in [(vec!["decide", "(p -> q) -> ~q -> ~p"], "nc"), (vec!["decide", "--sequent", "p & q => q | r"], "gcf")] {
        let file = dir.path().join(format!("{calculus}.json"));
        let mut argv = args.clone();
        argv.extend(["--out", file.to_str().unwrap()]);
        let o = propkit(&argv, "");
        assert_eq!((code(&o), stdout(&o).as_str()), (0, "VALID\n"));
        let o = propkit(&["check", file.to_str().unwrap()], "");
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(stdout(&o).starts_with(&format!("OK {calculus} ")));
    }
}

#[test]
fn parse_normalizes() {
    let o = propkit(&["parse", "~(p&q)|r->s"], "");
    assert_eq!(stdout(&o), "~(p & q) | r -> s\n");
    let o = propkit(&["parse", "(p -> q) -> r"], "");
    assert_eq!(stdout(&o), "(p -> q) -> r\n");
    let o = propkit(&["parse", "p &"], "");
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: cannot parse formula"));
}

#[test]
fn eval_prints_booleans() {
    let o = propkit(&["eval", "p -> q", "--val", "p=true,q=false"], "");
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "false\n"));
    let o = propkit(&["eval", "p -> q", "--val", "p=false"], "");
    assert_eq!(stdout(&o), "true\n");
    let o = propkit(&["eval", "p", "--val", "p"], "");
    assert_eq!(code(&o), 2);
}

#[test]
fn table_golden() {
    let o = propkit(&["table", "p & q | ~p"], "");
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "p q | p & q | ~p\nF F | T\nF T | T\nT F | F\nT T | T\n");
    let o = propkit(&["table", "bot"], "");
    assert_eq!(stdout(&o), "| bot\n| F\n");
}

#[test]
fn proofs_in_every_calculus_check() {
    for calculus in ["nc", "hc", "gc", "gcf"] {
        let o = propkit(&["prove", "((p -> q) -> p) -> p", "--calculus", calculus], "");
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let json = stdout(&o);
        let c = propkit(&["check", "-"], &json);
        assert_eq!(code(&c), 0, "{}", stderr(&c));
        let expected = if calculus.starts_with('g') { "=> ((p -> q) -> p) -> p" } else { "|- ((p -> q) -> p) -> p" };
        assert_eq!(stdout(&c), format!("OK {calculus} {expected}\n"));
    }
    let o = propkit(&["prove", "p -> q", "--calculus", "gcf"], "");
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "INVALID\np=true,q=false\n"));
}

#[test]
fn translations_and_cut_elimination_check() {
    let nc = stdout(&propkit(&["prove", "p | ~p"], ""));
    for to in ["nc", "hc", "gc"] {
        let t = propkit(&["translate", "-", "--to", to], &nc);
        assert_eq!(code(&t), 0, "{}", stderr(&t));
        let c = propkit(&["check", "-"], &stdout(&t));
        assert_eq!(code(&c), 0);
        assert!(stdout(&c).starts_with(&format!("OK {to} ")));
        let e = propkit(&["cut-elim", "-"], &stdout(&t));
        assert_eq!(code(&e), 0, "{}", stderr(&e));
        assert_eq!(stdout(&propkit(&["check", "-"], &stdout(&e))), "OK gcf => p | ~p\n");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [&["prove", "(p & q) -> (q & p)", "--calculus", "hc"][..], &["table", "a | b -> c"], &["decide", "p -> q"]] {
        let first = propkit(args, "");
        let second = propkit(args, "");
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status, second.status);
    }
}

#[test]
fn tampered_file_reports_node_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("proof.json");
    let good = stdout(&propkit(&["prove", "p -> p"], ""));
    let mut v: serde_json::Value = serde_json::from_str(&good).unwrap();
    v["premises"][0]["premises"][0]["formula"] = serde_json::Value::from("q");
    std::fs::write(&file, v.to_string()).unwrap();
    let o = propkit(&["check", file.to_str().unwrap()], "");
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains(" at root.0 ("), "{err}");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&propkit(&["check", "/nonexistent/proof.json"], "")), 2);
    assert_eq!(code(&propkit(&["check", "-"], "{}")), 2);
    assert_eq!(code(&propkit(&["check", "-"], r#"{"version":"propkit-derivation/9","calculus":"nc"}"#)), 2);
    assert_eq!(code(&propkit(&["translate", "-", "--to", "gcf"], "")), 2);
    assert_eq!(code(&propkit(&[], "")), 2);
    assert_eq!(code(&propkit(&["--version"], "")), 0);
}

#[test]
fn deep_derivations_are_checked() {
    let json = std::thread::Builder::new()
        .stack_size(1 << 29)
        .spawn(|| {
            let p = parse("p").unwrap();
            let mut d = nax(vec![p.clone()], 0).unwrap();
            for _ in 0..20_000 {
                d = and_e1(and_i(d, nax(vec![p.clone()], 0).unwrap()).unwrap()).unwrap();
            }
            to_json(&Derivation::Nc(d))
        })
        .unwrap()
        .join()
        .unwrap();
    let o = propkit(&["check", "-"], &json);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "OK nc p |- p\n"), "{}", stderr(&o));
}
