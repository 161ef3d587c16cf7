use std::process::{Command, Output};

use scdt::catalog::{construct, CatalogName};
use scdt::codefile::{load_code, write_code};

fn scdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scdt"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn corpus_exit_codes() {
    for name in CatalogName::corpus() {
        if name.is_extended() {
            continue;
        }
        let target = format!("catalog:{name}");
        let out = scdt(&["analyze", &target]);
        assert_eq!(out.status.code(), Some(0), "{target}\n{}", stdout(&out));
        assert!(stdout(&out).ends_with("verdict: ok\n"), "{target}");
    }
}

#[test]
fn icosahedron_report() {
    let out = scdt(&["analyze", "catalog:icosahedron"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0));
    for needle in ["E_0,E_3,E_2,E_1", "(1 3)", "icosahedron", "1/5*sqrt(5)"] {
        assert!(text.contains(needle), "missing {needle}:\n{text}");
    }
    let decimal = text
        .as_bytes()
        .windows(3)
        .any(|w| w[0].is_ascii_digit() && w[1] == b'.' && w[2].is_ascii_digit());
    assert!(!decimal, "decimal in trusted report:\n{text}");
    let approx = stdout(&scdt(&["analyze", "catalog:icosahedron", "--approx"]));
    assert!(approx.starts_with(&text[..text.find("verdict").unwrap()]));
    assert!(approx.contains("untrusted"));
}

#[test]
fn reports_are_byte_identical() {
    let a = scdt(&["--threads", "1", "analyze", "catalog:e8_kissing"]);
    let b = scdt(&["--threads", "4", "analyze", "catalog:e8_kissing"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(
        &bad,
        "scdt-code v1\nlabel x\ndim 2\nsize 2\nkind gram\n1 nope\n-1 1\n",
    )
    .unwrap();
    let out = scdt(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 6"));

    assert_eq!(
        scdt(&["analyze", "missing-file.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(
        scdt(&["analyze", "catalog:dodecahedron"]).status.code(),
        Some(2)
    );
    assert_eq!(scdt(&["analyze", "catalog:cell600"]).status.code(), Some(2));
    assert_eq!(scdt(&["scan", "--s", "7"]).status.code(), Some(2));
    assert_eq!(
        scdt(&["scan", "--s", "3", "--n-min", "9", "--n-max", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn broken_scheme_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eleven.txt");
    let sub = construct("icosahedron")
        .unwrap()
        .subcode(&(0..11).collect::<Vec<_>>())
        .unwrap();
    write_code(&sub, &path).unwrap();
    let out = scdt(&["scheme", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("not a scheme"));
    // not a Delsarte code, so analyze asserts nothing about its scheme
    let out = scdt(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn emit_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "icosahedron",
        "simplex(9)",
        "clebsch16",
        "e8_kissing",
        "cell24",
    ] {
        let path = dir.path().join("code.txt");
        let out = scdt(&["catalog", "emit", name, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(
            load_code(&path).unwrap(),
            construct(name).unwrap(),
            "{name}"
        );
    }
    let path = dir.path().join("ico.txt");
    scdt(&["catalog", "emit", "icosahedron", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("kind gram"));
    let body: Vec<&str> = text
        .lines()
        .skip(5)
        .flat_map(str::split_whitespace)
        .collect();
    assert_eq!(body.len(), 144);
    assert!(body
        .iter()
        .all(|t| ["1", "-1", "1/5*sqrt(5)", "-1/5*sqrt(5)"].contains(t)));
}

#[test]
fn bound_and_scan_commands() {
    let out = scdt(&["bound", "catalog:clebsch16"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("16/125") && text.contains("4/7"), "{text}");

    let out = scdt(&["scan", "--s", "4", "--n-min", "3", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("6/7"));

    let out = scdt(&["scheme", "catalog:cell24"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("spectral"), "{}", stdout(&out));
}
