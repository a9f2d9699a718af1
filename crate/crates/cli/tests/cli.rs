use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kloc"))
        .args(args)
        .output()
        .expect("kloc runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kloc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn chi_on_z3() {
    let out = kloc(&["chi", "--fixture", "Z3-P1", "--degree", "6"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["results"]["total"], "3");
    let sectors: Vec<&str> = r["results"]["sectors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["contribution"]["coeffs"][0].as_str().unwrap())
        .collect();
    assert_eq!(sectors, ["7/3", "1/3", "1/3"]);
    assert_eq!(r["pass"], true);
}

#[test]
fn sectors_report_lefschetz() {
    let out = kloc(&["sectors", "--fixture", "A4-std", "--degree", "4"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn weyl_char_21() {
    let out = kloc(&["weyl-char", "--n", "3", "--lambda", "2,1,0"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["results"]["dimension"], "8");
    assert_eq!(r["checks"].as_array().unwrap().len(), 2);
    let neg = kloc(&["weyl-char", "--lambda", "0,1"]);
    assert!(neg.status.success());
    assert_eq!(report(&neg)["results"]["dimension"], "0");
}

#[test]
fn euler_gkm_builtins_and_input() {
    let out = kloc(&[
        "euler-gkm",
        "--fixture",
        "partial-flag",
        "--n",
        "3",
        "--composition",
        "2,1",
    ]);
    assert!(out.status.success());
    assert_eq!(report(&out)["results"]["points"], 3);
    let p1 = temp_file(
        "p1.json",
        r#"{"variables": ["a", "b"], "points": [
        {"label": "0", "tangent": [[1, -1]]}, {"label": "1", "tangent": [[-1, 1]]}]}"#,
    );
    let out = kloc(&["euler-gkm", "--input", p1.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(report(&out)["results"]["total"], "2");
}

#[test]
fn localize_gset_fixture_and_input() {
    let out = kloc(&["localize-gset", "--fixture", "S3"]);
    assert!(out.status.success());
    assert_eq!(report(&out)["results"]["gsets"].as_array().unwrap().len(), 4);
    // S3 acting on {0,1,2} ⊔ {3}: two orbits.
    let input = temp_file(
        "gset.json",
        r#"{"group": "S3", "points": 4,
        "generators": [[1, 0, 2, 3], [1, 2, 0, 3]]}"#,
    );
    let out = kloc(&["localize-gset", "--input", input.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["results"]["gsets"][0]["orbits"], 2);
}

#[test]
fn descriptor_errors_carry_pointers() {
    let bad = temp_file(
        "bad.json",
        r#"{"action": {"group": {"type": "matrix", "cyclotomic_order": 3,
        "generators": [[[1, 0], [0, "x"]]]}}, "degree": 2}"#,
    );
    let out = kloc(&["chi", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/action/group/generators/0/1/1"), "{err}");
}

#[test]
fn rejects_bad_requests_before_computing() {
    assert!(!kloc(&["frobnicate"]).status.success());
    assert_eq!(
        kloc(&["chi", "--fixture", "Z3-P1", "--degree", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kloc(&["chi", "--fixture", "nope", "--degree", "2"]).status.code(),
        Some(2)
    );
    let capped = kloc(&[
        "chi",
        "--fixture",
        "A4-std",
        "--degree",
        "5",
        "--caps",
        r#"{"monomial_basis": 10}"#,
    ]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap exceeded"));
}

#[test]
fn verify_subset_writes_report_file() {
    let path = std::env::temp_dir().join(format!("kloc-verify-{}.json", std::process::id()));
    let out = kloc(&["verify", "--criterion", "9", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["criteria"][0]["criterion"], 9);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS criterion 9"));
}
