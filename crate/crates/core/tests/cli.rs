use std::process::{Command, Output};

use serde_json::Value;

fn sector_kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sector-kit")).args(args).output().expect("binary runs")
}

fn json_report(args: &[&str]) -> Value {
    let out = sector_kit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(doc["schema"], "sector-kit/1");
    assert_eq!(doc["passed"], true);
    doc
}

fn error_kind(args: &[&str], code: i32) -> String {
    let out = sector_kit(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    let doc: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert_eq!(doc["schema"], "sector-kit/1");
    doc["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn tableaux_report() {
    let doc = json_report(&["tableaux", "--N", "5"]);
    assert_eq!(doc["report"]["factorial"], 120);
    assert_eq!(doc["report"]["sum_of_squares"], 120);
    assert_eq!(doc["report"]["shapes"].as_array().unwrap().len(), 7);
}

#[test]
fn sectors_report() {
    let doc = json_report(&["sectors", "--m", "2", "--N", "3", "--lambda", "2,1"]);
    let report = &doc["report"];
    assert_eq!(report["commutant_dim"], 20);
    assert_eq!(report["rank_sum"], 8);
    for p in report["young_projectors"].as_array().unwrap() {
        assert!((p["trace"].as_f64().unwrap() - 2.0).abs() < 1e-10);
    }
    assert_eq!(report["spans"]["total_rank"], 8);
}

#[test]
fn equiv_reports() {
    let two = json_report(&["equiv", "--m", "2", "--N", "2"]);
    assert_eq!(two["report"]["proposition"]["certificate"]["equivalent"], true);
    assert_eq!(two["report"]["boson_vs_fermion"]["equivalent"], false);
    let three = json_report(&["equiv", "--m", "2", "--N", "3"]);
    assert_eq!(three["report"]["proposition"]["certificate"]["carrier_dims"], serde_json::json!([2, 2]));
    let four = json_report(&["equiv", "--m", "2", "--N", "4", "--lambda", "2,2"]);
    assert_eq!(four["report"]["multiplet"]["carrier_dims"], serde_json::json!([1, 1]));
}

#[test]
fn cover_report_from_flags_and_file() {
    let doc = json_report(&["cover", "--q-size", "3", "--N", "2"]);
    assert_eq!(doc["report"]["dimension_sum"], 18);

    let dir = std::env::temp_dir().join(format!("sector-kit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z3.json");
    std::fs::write(&path, r#"{"kind":"explicit","points":["a","b","c","d","e","f"],"generators":["(a b c)(d e f)"]}"#)
        .unwrap();
    let doc = json_report(&["cover", "--cover", path.to_str().unwrap()]);
    assert_eq!(doc["report"]["irrep_count"], 3);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn circle_csv_rows() {
    let out = sector_kit(&["circle", "--theta", "3", "--grid", "64", "--k-max", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,k,eigenvalue,reference,error");
    assert_eq!(lines.len(), 1 + 5);
    let middle: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(middle[1], "0");
    assert!((middle[2].parse::<f64>().unwrap() - 3.0).abs() < 1e-9);

    let fd = sector_kit(&[
        "circle",
        "--theta",
        "3",
        "--grid",
        "64",
        "--k-max",
        "2",
        "--format",
        "csv",
        "--stencil",
        "central-difference",
    ]);
    assert!(fd.status.success());
    assert_ne!(fd.stdout, text.as_bytes());
}

#[test]
fn negative_theta_is_accepted() {
    let doc = json_report(&["circle", "--theta", "-1", "--grid", "32"]);
    assert!((doc["report"]["theta"].as_f64().unwrap() - (std::f64::consts::TAU - 1.0)).abs() < 1e-12);
}

#[test]
fn pretty_output_ends_with_verdict() {
    let out = sector_kit(&["cover", "--q-size", "3", "--N", "2", "--format", "pretty"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().trim_end().ends_with("PASS"));
}

#[test]
fn output_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("sector-kit-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = ["sectors", "--m", "3", "--N", "3", "--seed", "42", "--out", path.to_str().unwrap()];
    assert!(sector_kit(&args).status.success());
    let first = std::fs::read(&path).unwrap();
    assert!(sector_kit(&args).status.success());
    assert_eq!(first, std::fs::read(&path).unwrap());
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(error_kind(&["equiv", "--m", "1", "--N", "2"], 2), "domain");
    assert_eq!(error_kind(&["equiv", "--m", "2", "--N", "5"], 2), "domain");
    assert_eq!(error_kind(&["sectors", "--m", "4", "--N", "5"], 3), "resource_cap");
    assert_eq!(error_kind(&["cover", "--q-size", "10", "--N", "4"], 3), "resource_cap");
    assert_eq!(error_kind(&["circle", "--theta", "0", "--grid", "4"], 2), "domain");
    assert_eq!(error_kind(&["cover", "--cover", "/nonexistent/cover.json"], 2), "io");
    // Argument errors come from the parser, also with exit code 2.
    assert_eq!(sector_kit(&["tableaux", "--N", "9"]).status.code(), Some(2));
    assert_eq!(sector_kit(&["sectors", "--m", "2"]).status.code(), Some(2));
}
