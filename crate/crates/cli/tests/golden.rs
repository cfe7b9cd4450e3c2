//! Runs the `brauer` binary on every `tests/golden/*.in` file and compares
//! the machine report byte for byte with the matching `.report` file.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer")).args(args).output().expect("binary runs")
}

fn status_code(report: &str) -> i32 {
    match report.lines().find_map(|l| l.strip_prefix("status=")) {
        Some("determined") => 0,
        Some("error") => 1,
        Some("partial") => 2,
        other => panic!("bad status line {other:?}"),
    }
}

#[test]
fn brauer_reports_match_golden_files() {
    let tmp = tempfile::tempdir().unwrap();
    let mut inputs: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "in"))
        .collect();
    inputs.sort();
    assert!(inputs.len() >= 8);
    for input in inputs {
        let name = input.file_stem().unwrap().to_str().unwrap().to_string();
        let out_path = tmp.path().join(format!("{name}.report"));
        let out =
            brauer(&["brauer", "--input", input.to_str().unwrap(), "--report", out_path.to_str().unwrap(), "--verify"]);
        let got = fs::read_to_string(&out_path).unwrap();
        let want = fs::read_to_string(input.with_extension("report")).unwrap();
        assert_eq!(got, want, "report for {name} differs");
        assert_eq!(out.status.code(), Some(status_code(&want)), "exit code for {name}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn cohomology_command() {
    for (group, degree, coeff, want) in [
        ("cyclic:6", "3", "units", "Z/6"),
        ("semidirect_z2:4:3", "2", "units", "Z/2"),
        ("cyclic:5", "2", "units", "0"),
        ("product:cyclic:2*cyclic:4", "2", "Z", "Z/2 + Z/4"),
    ] {
        let tmp = tempfile::tempdir().unwrap();
        let report = tmp.path().join("r.txt");
        let out = brauer(&[
            "cohomology",
            "--group",
            group,
            "--degree",
            degree,
            "--coeff",
            coeff,
            "--report",
            report.to_str().unwrap(),
            "--verify",
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let text = fs::read_to_string(&report).unwrap();
        assert!(text.contains(&format!("\nvalue={want}\n")), "{text}");
        assert!(String::from_utf8_lossy(&out.stdout).ends_with(&format!("= {want}\n")));
    }
}

#[test]
fn cohomology_table_groups() {
    let table = golden_dir().join("q8.table");
    let spec = format!("table:{}", table.display());
    let out = brauer(&["cohomology", "--group", &spec, "--degree", "2", "--coeff", "Z", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), format!("H^2({spec}, Z) = Z/2 + Z/2\n"));
}

#[test]
fn resource_cap_and_io_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let report = tmp.path().join("r.txt");
    let out = brauer(&[
        "cohomology",
        "--group",
        "cyclic:8",
        "--degree",
        "4",
        "--coeff",
        "Z",
        "--max-entries",
        "100",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(fs::read_to_string(&report).unwrap().contains("error_code=resource-cap\n"));

    let out = brauer(&[
        "brauer",
        "--input",
        tmp.path().join("absent.in").to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(fs::read_to_string(&report).unwrap().contains("error_code=io\n"));
}

#[test]
fn char_flag_overrides_input() {
    let input = golden_dir().join("dihedral_node.in");
    let out = brauer(&["brauer", "--input", input.to_str().unwrap(), "--char", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("tameness"));
    let out = brauer(&["brauer", "--input", input.to_str().unwrap(), "--char", "3"]);
    assert_eq!(out.status.code(), Some(0));
}
