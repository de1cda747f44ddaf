use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn pdfa(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pdfa")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CERNY4: &str = "states: 4\nalphabet: a b\n\
    trans: 0 a 1\ntrans: 0 b 1\ntrans: 1 a 2\ntrans: 1 b 1\n\
    trans: 2 a 3\ntrans: 2 b 2\ntrans: 3 a 0\ntrans: 3 b 3\n";

const EVEN_ODD: &str = "alphabet: a b\n\
    machine:\nstates: 2\ninitial: 0\naccepting: 0\n\
    trans: 0 a 1\ntrans: 0 b 0\ntrans: 1 a 0\ntrans: 1 b 1\n\
    machine:\nstates: 2\ninitial: 0\naccepting: 1\n\
    trans: 0 a 1\ntrans: 0 b 0\ntrans: 1 a 0\ntrans: 1 b 1\n";

#[test]
fn rank_methods_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.txt", CERNY4);
    let (code, out, _) = pdfa(&["rank", s(&c4), "--witness"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("rank: 1\nwitness: "));
    assert_eq!(out.lines().nth(1).unwrap().split_whitespace().count(), 1 + 9);

    let (code, out, _) = pdfa(&["--json", "rank", s(&c4), "--method", "poly"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rank"], 1);

    let (code, out, _) = pdfa(&["--json", "oracle", "rank", s(&c4)]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witness"].as_array().unwrap().len(), 9);
}

#[test]
fn poly_rank_rejects_disconnected_input() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = write(dir.path(), "m2.txt", "states: 2\nalphabet: a\ntrans: 0 a 1\ntrans: 1 a 1\n");
    let (code, _, err) = pdfa(&["rank", s(&m2), "--method", "poly"]);
    assert_eq!(code, 2);
    assert!(err.contains("strongly connected"), "{err}");
}

#[test]
fn budget_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.txt", CERNY4);
    let (code, _, err) = pdfa(&["--budget", "3", "sync", s(&c4)]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn saturate_reports_word_or_none() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = write(dir.path(), "p2.txt", "states: 2\nalphabet: a\ntrans: 0 a 1\ntrans: 1 a 0\n");
    let (code, out, _) = pdfa(&["saturate", s(&p2), "--set", "0"]);
    assert_eq!((code, out.as_str()), (0, "saturating word: ε\n"));
    let m2 = write(dir.path(), "m2.txt", "states: 2\nalphabet: a\ntrans: 0 a 1\ntrans: 1 a 1\n");
    let (code, out, _) = pdfa(&["saturate", s(&m2), "--set", "0"]);
    assert_eq!((code, out.as_str()), (1, "none\n"));
    let (code, _, _) = pdfa(&["saturate", s(&m2), "--set", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn birecurrence_needs_initial_state() {
    let dir = tempfile::tempdir().unwrap();
    let plain = write(dir.path(), "p.txt", "states: 1\nalphabet: a\ntrans: 0 a 0\n");
    let (code, _, err) = pdfa(&["birecurrent", s(&plain)]);
    assert_eq!(code, 2);
    assert!(err.contains("initial"));
    let acc = write(dir.path(), "a.txt", "states: 1\nalphabet: a\ninitial: 0\naccepting: 0\ntrans: 0 a 0\n");
    for method in ["direct", "char", "both"] {
        let (code, out, _) = pdfa(&["birecurrent", s(&acc), "--method", method]);
        assert_eq!((code, out.as_str()), (0, "birecurrent: yes\n"));
    }
}

#[test]
fn instance_commands() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.txt", EVEN_ODD);
    let (code, out, _) = pdfa(&["validate", s(&inst)]);
    assert_eq!((code, out.as_str()), (0, "ok: instance with 2 machines\n"));
    let (code, out, _) = pdfa(&["oracle", "common-word", s(&inst)]);
    assert_eq!((code, out.as_str()), (1, "none\n"));

    let out_path = dir.path().join("g.txt");
    let (code, _, _) = pdfa(&["reduce", "sync", s(&inst), "-o", s(&out_path)]);
    assert_eq!(code, 0);
    let (code, out, _) = pdfa(&["sync", s(&out_path)]);
    assert_eq!((code, out.as_str()), (1, "not synchronizing\n"));
    let layout: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("g.txt.layout.json")).unwrap()).unwrap();
    assert_eq!(layout["kind"], "sync");
    assert!(layout["letter_map"]["r"].is_number());
    assert!(layout["special_states"]["Y"].is_number());
}

#[test]
fn binarize_writes_binary_automaton() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.txt", CERNY4);
    let out = dir.path().join("b.txt");
    let (code, _, _) = pdfa(&["binarize", s(&c4), "--add-selfloop", "-o", s(&out)]);
    assert_eq!(code, 0);
    let (code, info, _) = pdfa(&["info", s(&out)]);
    assert_eq!(code, 0);
    assert!(info.contains("states: 12\nalphabet: 0 1\n"), "{info}");
    let (code, _, _) = pdfa(&["sync", s(&out)]);
    assert_eq!(code, 0);

    let (code, _, _) = pdfa(&["binarize", s(&c4), "--last-letter", "b", "-o", s(&out)]);
    assert_eq!(code, 0);
    let (code, _, err) = pdfa(&["binarize", s(&c4), "--last-letter", "q", "-o", s(&out)]);
    assert_eq!(code, 2);
    assert!(err.contains("q"));
    let (code, _, _) = pdfa(&["binarize", s(&c4), "-o", s(&out)]);
    assert_eq!(code, 2);
}

#[test]
fn dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let acc = write(dir.path(), "a.txt", "states: 2\nalphabet: a b\ninitial: 0\naccepting: 1\ntrans: 0 a 1\n");
    let (code, out, _) = pdfa(&["dot", s(&acc)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph automaton {"));
    assert!(out.contains("1 [shape=doublecircle];"));
    assert_eq!(out.matches("->").count(), 2);
}

#[test]
fn malformed_files_report_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "states: 2\nalphabet: a\n\ntrans: 0 z 1\n");
    let (code, out, err) = pdfa(&["validate", s(&bad)]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 4") && err.contains("unknown letter"), "{err}");
}
