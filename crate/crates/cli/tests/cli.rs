use std::process::{Command, Output};

use fsind_core::tables::{builtin_rows, Claim, Expected};
use serde_json::Value;

fn fsind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsind")).args(args).env_remove("FI_TOLERANCE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

const Z3: &str = r#"{"cyclic_factors":[3]}"#;

#[test]
fn gauss_examples() {
    let o = fsind(&["gauss", "--group", Z3, "--form", "g^2/3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("0 1"));
    assert!(stdout(&o).contains("# phase 1/4"));

    let o = fsind(&["gauss", "--group", Z3, "--form", "monomial", "g^2/3", "--scale", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("0 -1"));

    let o = fsind(&["gauss", "--group", r#"{"cyclic_factors":[]}"#, "--form", r#"{"table":["0/1"]}"#]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().next(), Some("1 0"));

    let o = fsind(&["gauss", "--group", r#"{"cyclic_factors":[5]}"#, "--form", "2g^2/5"]);
    assert_eq!(stdout(&o).lines().next(), Some("-1 0"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fsind(&["gauss", "--group", Z3, "--form", "g^2/4"]).status.code(), Some(2));
    assert_eq!(fsind(&["gauss", "--group", "not json", "--form", "g^2/3"]).status.code(), Some(2));
    assert_eq!(fsind(&["verify-tables", "--table", "ng4"]).status.code(), Some(2));
    assert_eq!(fsind(&["verify-tables", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(fsind(&["agl", "--q", "6"]).status.code(), Some(2));
    assert_eq!(fsind(&["indicators", "--row", "ng9:7"]).status.code(), Some(2));
    assert_eq!(fsind(&["--tolerance", "1", "agl", "--q", "3"]).status.code(), Some(2));
    assert_eq!(fsind(&["--tolerance", "0", "agl", "--q", "3"]).status.code(), Some(2));
}

#[test]
fn env_tolerance_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_fsind"))
        .args(["agl", "--q", "3"])
        .env("FI_TOLERANCE", "0.5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_fsind"))
        .args(["agl", "--q", "3"])
        .env("FI_TOLERANCE", "1e-6")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn single_table_passes() {
    let o = fsind(&["verify-tables", "--table", "ng13", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("table_id,row_id"));
    let rows: std::collections::BTreeSet<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(rows.len(), 4);

    let o = fsind(&["verify-tables", "--table", "ng9", "--format", "json"]);
    assert!(o.status.success());
    let records = json(&o);
    assert!(records.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn tampered_rows_fail_with_exit_one() {
    let mut rows: Vec<_> = builtin_rows().into_iter().filter(|r| r.table_id == "ng5").collect();
    rows[0].claims = vec![Claim::At { k: 5, expected: Expected::integer(7) }];
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), serde_json::to_string(&rows).unwrap()).unwrap();
    let path = file.path().to_str().unwrap();

    let o = fsind(&["verify-tables", "--rows", path, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("false"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ng5:1"));
}

#[test]
fn indicators_for_a_row() {
    let o = fsind(&["indicators", "--row", "ng9:1", "--path", "both"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["orientation"], "as_given");
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len() as u64, v["period"].as_u64().unwrap());
    assert_eq!(values[0]["re"], 0.0);
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-9);
    let nu9 = &values[8];
    assert!((nu9["re"].as_f64().unwrap() - 3.0).abs() < 1e-9);
}

#[test]
fn indicators_from_spec_file() {
    let spec = r#"{"family":"NG1","group":{"cyclic_factors":[2]},"p":3,"zeta1":"0"}"#;
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), spec).unwrap();
    let arg = format!("@{}", file.path().display());
    let o = fsind(&["indicators", "--spec", &arg, "--kmax", "4", "--path", "closed"]);
    assert!(o.status.success());
    let v = json(&o);
    let re: Vec<f64> = v["values"].as_array().unwrap().iter().map(|e| e["re"].as_f64().unwrap()).collect();
    assert_eq!(re.len(), 4);
    assert!((re[1] - 1.0).abs() < 1e-9 && (re[2] - 1.0).abs() < 1e-9);
}

#[test]
fn rigidity_of_sign_pair() {
    let specs = r#"[
        {"family":"NG1","group":{"cyclic_factors":[3]},"p":2,"zeta1":"0","label":"plus"},
        {"family":"NG1","group":{"cyclic_factors":[3]},"p":2,"zeta1":"1/4","label":"minus"}
    ]"#;
    let o = fsind(&["rigidity", "--specs", specs]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert_eq!(v["separations"][0]["k"], 2);
    assert_eq!(v["classes"][1][0]["label"], "minus");

    let o = fsind(&["rigidity", "--specs", specs, "--kmax", "1"]);
    assert_eq!(json(&o)["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn rigidity_of_table_rows() {
    let specs: Vec<_> = builtin_rows().into_iter().filter(|r| r.table_id == "ng13").map(|r| r.spec).collect();
    let text = serde_json::to_string(&specs).unwrap();
    let o = fsind(&["rigidity", "--specs", &text]);
    assert!(o.status.success());
    let classes = json(&o)["classes"].as_array().unwrap().clone();
    assert_eq!(classes.len(), 2);
    assert!(classes.iter().all(|c| c.as_array().unwrap().len() == 2));
}

#[test]
fn rigidity_rejects_mixed_rings() {
    let specs = r#"[{"family":"NG1X"},{"family":"NG1","group":{"cyclic_factors":[3]},"p":2,"zeta1":"0"}]"#;
    assert_eq!(fsind(&["rigidity", "--specs", specs]).status.code(), Some(2));
}

#[test]
fn agl_table() {
    let o = fsind(&["agl", "--q", "4", "--kmax", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    for line in &lines[1..] {
        assert_eq!(line.split('\t').next_back(), Some("0"));
    }
    assert!(lines[3].starts_with("3\t2\t2"));

    let o = fsind(&["agl", "--q", "2", "--kmax", "2"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn output_is_deterministic() {
    let a = fsind(&["verify-tables", "--format", "csv"]);
    let b = fsind(&["verify-tables", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    let a = fsind(&["indicators", "--row", "hi3:1", "--path", "both"]);
    let b = fsind(&["indicators", "--row", "hi3:1", "--path", "both"]);
    assert_eq!(a.stdout, b.stdout);
}
