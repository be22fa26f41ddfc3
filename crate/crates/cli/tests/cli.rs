use std::process::Command;

use milnor_cli::Report;

fn milnor(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_milnor")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out) = milnor(&a);
    let r = Report::from_json(&out).expect("structured output parses");
    assert_eq!(r.to_json(), out, "round trip through the report parser");
    (code, r)
}

fn whitehead() -> String {
    format!("{}/../core/data/whitehead.sl", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn witt_dims() {
    let (code, r) = json(&["witt", "--gens", "2", "--max-deg", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["dims"], serde_json::json!([2, 1, 2, 3, 6, 9]));
}

#[test]
fn bracket_of_equal_letters_is_zero() {
    let (code, r) = json(&["bracket", "[X,X]"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["value"], "0");
    let (code, r) = json(&["bracket", "[X,"]);
    assert_eq!(code, 1);
    assert_eq!(r.error.unwrap().0, "LieError::Syntax");
}

#[test]
fn whitehead_mu() {
    let wh = whitehead();
    let (code, r) = json(&["milnor", "--diagram", &wh, "--index", "221", "--target", "1", "--cap", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["mu"].as_i64().unwrap().abs(), 1);
    assert!(r.conventions.contains_key("crossing_sign"));
    let (code, r) = json(&["linking", "--diagram", &wh]);
    assert_eq!(code, 0);
    assert_eq!(r.results["linking_number"], 0);
    let (code, _) = json(&["milnor", "--diagram", &wh, "--index", "2211", "--target", "1", "--cap", "4"]);
    assert_eq!(code, 1);
}

#[test]
fn artin_of_whitehead() {
    let (code, r) = json(&["artin", "--diagram", &whitehead(), "--level", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["level_one_integer"], 0);
    assert_eq!(r.results["degree"], "3");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(milnor(&["nosuch"]).0, 2);
    assert_eq!(milnor(&["witt"]).0, 2);
    let (code, r) = json(&["linking", "--diagram", "/nonexistent.sl"]);
    assert_eq!(code, 2);
    assert_eq!(r.error.unwrap().0, "Io");
    let out = Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(["witt", "--max-deg", "3"])
        .env("MILNOR_DEGREE_CAP", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degree_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(["sder-dim", "--max-deg", "6", "--format", "json"])
        .env("MILNOR_DEGREE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(r.conventions["degree_cap"], 5);
}

#[test]
fn sder_reports() {
    let (code, r) = json(&["sder-dim", "--max-deg", "5", "--basis"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["dims"], serde_json::json!([1, 0, 1, 0, 3]));
    let (code, r) = json(&["sder-derived", "--cap", "8", "--depth", "2", "--parallel"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["dims_by_depth"][0], serde_json::json!([1, 0, 1, 0, 3, 0, 6, 4]));
    assert!(r.results["statement"].as_str().unwrap().contains("not a proof"));
    let (code, r) = json(&["verify-exact", "--max-level", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["exact"], true);
}

#[test]
fn magnus_and_weight() {
    let (_, r) = json(&["magnus", "x y x^-1 y^-1", "--cap", "2"]);
    assert_eq!(r.results["series"], serde_json::json!({ "1": 1, "XY": 1, "YX": -1 }));
    let (_, r) = json(&["lcs-weight", "[[x,y],y]", "--cap", "5"]);
    assert_eq!(r.results["weight"], "3");
    let (_, r) = json(&["lyndon", "--degree", "3"]);
    assert_eq!(r.results["words"], serde_json::json!(["XXY", "XYY"]));
}

#[test]
fn text_output_is_deterministic() {
    let a = milnor(&["sder-derived", "--cap", "6"]);
    let b = milnor(&["sder-derived", "--cap", "6", "--parallel"]);
    assert_eq!(a, b);
}
