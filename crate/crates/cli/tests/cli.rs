use std::process::{Command, Output};

use einstab::spaces::Report;

fn einstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_einstab")).args(args).env_remove("EINSTAB_REGISTRY").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_json_carries_the_einstein_constant() {
    let o = einstab(&["analyze", "flag:e8", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rho"], "4/15");
    assert_eq!(v["verdict"]["kind"], "G-stable");
}

#[test]
fn json_report_round_trips() {
    let o = einstab(&["analyze", "som:sphere(3)x3", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.spec, "som:sphere(3)x3");
    assert_eq!(format!("{}\n", report.to_json()), text);
}

#[test]
fn markdown_is_the_default_and_csv_has_a_header() {
    let md = stdout(&einstab(&["analyze", "grassmann-square:n=3"]));
    assert!(md.starts_with("## "), "{md}");
    assert!(md.contains("| rho |"), "{md}");
    let csv = stdout(&einstab(&["analyze", "grassmann-square:n=3", "--format", "csv"]));
    assert!(csv.starts_with("field,value\n"), "{csv}");
}

#[test]
fn generator_errors_exit_three() {
    let o = einstab(&["analyze", "grassmann-square:n=2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("n ≥ 3"), "{}", stderr(&o));
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        &["analyze", "flag:"][..],
        &["analyze", "grassmann-square:m=3"],
        &["criteria", "h9"],
        &["criteria", "e8", "--rho", "four"],
        &["table", "IC"],
        &["oracle", "torus:n=3"],
    ] {
        let o = einstab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn every_table_regenerates() {
    for t in ["IA", "IAA", "IB1", "IB2", "IB3"] {
        let o = einstab(&["table", t]);
        assert!(o.status.success(), "{t}: {}", stderr(&o));
        assert!(stdout(&o).starts_with(&format!("## Table {t}")));
    }
    let csv = stdout(&einstab(&["table", "ib1", "--format", "csv"]));
    assert!(csv.starts_with("table,row,spec,row_status,field,expected,computed,field_status\n"));
}

#[test]
fn structural_criterion_on_e8() {
    let o = einstab(&["criteria", "e8", "--dim-k", "24"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("sc2-i fires: 24 < 36 → G-stable"), "{}", stdout(&o));
}

#[test]
fn thresholds_on_e6() {
    let o = einstab(&["criteria", "e6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["thresholds"], serde_json::json!(["9", "91/3"]));
}

#[test]
fn einstein_criterion_from_rho() {
    let o = einstab(&["criteria", "e8", "--rho", "4/15"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("sc1-i fires"), "{}", stdout(&o));
}

#[test]
fn oracle_targets_pass() {
    let o = einstab(&["oracle", "som:sphere(3)x3", "flag:so(6)"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("all pass"));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn oracle_settles_the_largest_eigenvalue() {
    let o = einstab(&["oracle", "resolve-lambda-max"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("λ_p^max = 13/14"), "{}", stdout(&o));
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e7.json");
    let o = einstab(&["analyze", "flag:e7", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rho"], "5/18");
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.md");
    let o = einstab(&["grammar", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["analyze", "e8-su3x4", "--format", "json"][..],
        &["table", "IB3"],
        &["oracle", "grassmann:n=3", "--format", "csv"],
    ] {
        let a = einstab(args);
        let b = einstab(args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn bad_registry_path_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_einstab"))
        .args(["analyze", "e8-spin9"])
        .env("EINSTAB_REGISTRY", dir.path().join("absent.txt"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("registry"), "{}", stderr(&o));
}

#[test]
fn grammar_lists_the_families() {
    let text = stdout(&einstab(&["grammar"]));
    for family in ["flag:", "som:", "su-triple:", "EXIT CODES"] {
        assert!(text.contains(family), "{family}");
    }
}
