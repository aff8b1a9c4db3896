use std::fs;
use std::process::{Command, Output};

use tempfile::tempdir;

fn taustar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taustar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const FAST: [&str; 4] = ["--samples", "2000", "--starts", "20"];

#[test]
fn verify_writes_reports_and_flags_failures() {
    let dir = tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = taustar(&[&["verify", "--out", out, "--format", "csv"][..], &FAST[..]].concat());
    // the cuboid surrogate and two coefficient claims do not hold numerically
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    let items = json["items"].as_array().unwrap();
    let names: Vec<&str> = items.iter().map(|i| i["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let failed: Vec<&str> = items.iter().filter(|i| i["status"] == "fail").map(|i| i["name"].as_str().unwrap()).collect();
    assert_eq!(failed, ["hankel.max.FS", "hankel.max.a5", "hankel.surrogate.argmax_distance", "hankel.surrogate.max"]);
    assert_eq!(json["meta"]["series_order"], 48);
    assert_eq!(json["meta"]["grid_n"], 101);
    assert!(items.iter().all(|i| i.get("runtime_ms").is_none()));
    let md = fs::read_to_string(dir.path().join("report.md")).unwrap();
    assert!(md.contains("## hankel") && md.contains("## radius"));
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("name,section,paper_value,computed_value,tolerance,status"));
}

#[test]
fn verify_is_byte_identical_for_a_fixed_seed() {
    let (a, b) = (tempdir().unwrap(), tempdir().unwrap());
    for d in [&a, &b] {
        taustar(&[&["verify", "--seed", "7", "--out", d.path().to_str().unwrap()][..], &FAST[..]].concat());
    }
    let ja = fs::read(a.path().join("report.json")).unwrap();
    let jb = fs::read(b.path().join("report.json")).unwrap();
    assert!(!ja.is_empty());
    assert_eq!(ja, jb);
}

#[test]
fn low_order_skips_high_degree_items() {
    let dir = tempdir().unwrap();
    taustar(&[&["verify", "--order", "4", "--out", dir.path().to_str().unwrap()][..], &FAST[..]].concat());
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    let status = |name: &str| {
        json["items"].as_array().unwrap().iter().find(|i| i["name"] == name).unwrap()["status"].clone()
    };
    assert_eq!(status("extremal.tau_tilde.z^4"), "pass");
    assert_eq!(status("extremal.tau_tilde.z^5"), "skipped");
    assert_eq!(status("extremal.tau_tilde.z^6"), "skipped");
}

#[test]
fn timings_flag_adds_runtimes() {
    let dir = tempdir().unwrap();
    taustar(&[&["verify", "--timings", "--out", dir.path().to_str().unwrap()][..], &FAST[..]].concat());
    let text = fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert!(text.contains("runtime_ms"));
}

#[test]
fn tolerance_override_changes_status() {
    let dir = tempdir().unwrap();
    let o = taustar(&[
        &["verify", "--out", dir.path().to_str().unwrap(), "--tol-overrides", r#"{"extremal.tau_tilde.z^2": -1.0}"#][..],
        &FAST[..],
    ]
    .concat());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL extremal.tau_tilde.z^2"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(taustar(&["bogus"]).status.code(), Some(2));
    assert_eq!(taustar(&["hankel-max", "--target", "a9"]).status.code(), Some(2));
    assert_eq!(taustar(&["radius-table", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(taustar(&["verify", "--tol-overrides", "{not json"]).status.code(), Some(2));
    assert_eq!(taustar(&["verify", "--tol-overrides", r#"{"no.such.item": 1}"#]).status.code(), Some(2));
    assert_eq!(taustar(&["verify", "--grid", "10"]).status.code(), Some(2));
    assert_eq!(taustar(&["plot", "--which", "nowhere"]).status.code(), Some(2));
    assert_eq!(taustar(&["growth-table", "--radii", "0.5,1.5"]).status.code(), Some(2));
}

#[test]
fn radius_table_rows() {
    let o = taustar(&["radius-table", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = |name: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(&format!("{name},"))).unwrap();
        line.split(',').nth(2).unwrap().parse().unwrap()
    };
    assert!((row("S*_L→S*_τ") - std::f64::consts::PI * (8.0 - std::f64::consts::PI) / 16.0).abs() < 1e-12);
    assert!((row("S*_τ→S*_C") - 0.786843).abs() < 1e-6);
    assert!((row("S*_τ→S*_℘") - 0.385426).abs() < 1e-6);
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn hankel_max_json_shape_and_determinism() {
    let args = ["hankel-max", "--target", "a4", "--starts", "20", "--seed", "3"];
    let a = taustar(&args);
    let b = taustar(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["target", "bound", "attained", "argmax", "seed", "evaluations"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["target"], "a4");
    assert_eq!(v["seed"], 3);
    assert!((v["attained"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-3);
    // 17 significant digits
    let raw = String::from_utf8(a.stdout).unwrap();
    assert!(raw.contains("\"bound\": 3.3333333333333331e-1"));
}

#[test]
fn coeff_bounds_table() {
    let o = taustar(&["coeff-bounds", "--format", "md", "--starts", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for t in ["a4", "a5", "FS", "H2", "H3"] {
        assert!(text.contains(&format!("| {t} |")), "{t}");
    }
}

#[test]
fn plot_writes_polylines_and_svg() {
    let dir = tempdir().unwrap();
    let o = taustar(&["plot", "--which", "strip", "--svg", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let files: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert!(files.iter().any(|f| f.contains("strip_left") && f.ends_with(".csv")));
    assert!(files.iter().any(|f| f.contains("disk") && f.ends_with(".csv")));
    let svg = fs::read_to_string(dir.path().join("strip.svg")).unwrap();
    assert!(svg.contains("viewBox=\"0 0 1000 1000\""));
    let left = files.iter().find(|f| f.contains("strip_left")).unwrap();
    let csv = fs::read_to_string(dir.path().join(left)).unwrap();
    assert!(csv.starts_with("theta,re,im\n"));
    let re: f64 = csv.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((re - (1.0 - std::f64::consts::FRAC_PI_4)).abs() < 1e-15);
}

#[test]
fn plot_to_unwritable_path_fails() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("occupied");
    fs::write(&file, "x").unwrap();
    let o = taustar(&["plot", "--which", "tau-in-SG", "--out", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn growth_table_csv() {
    let o = taustar(&["growth-table", "--format", "csv", "--radii", "0.5,0.9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("r,lower,upper,series_route_gap,rotation"));
    assert_eq!(text.lines().count(), 3);
}
