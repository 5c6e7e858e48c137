use std::process::Command;

fn keypoly(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_keypoly")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn counts_prints_the_formula() {
    let (code, out) = keypoly(&["counts", "--k", "3", "--g", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["omega_real"], 18);
}

#[test]
fn gen_round_trips_through_json() {
    let (code, out) = keypoly(&["gen", "--n", "3"]);
    assert_eq!(code, 0);
    let p = keypoly::algebra::json::from_json_str(&out).unwrap();
    let q = keypoly::keypoly::key_poly(&keypoly::keypoly::CurveFamily::Legendre, 3);
    assert_eq!(p, q);
}

#[test]
fn verify_single_suite() {
    let (code, out) = keypoly(&["verify", "--suite", "casework"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "VERIFIED-UP-TO-BOUND");
}

#[test]
fn bad_input_exits_with_usage_code() {
    assert_eq!(keypoly(&["roots", "--n", "3", "--lambda", "0"]).0, 2);
    assert_eq!(keypoly(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(keypoly(&["gen", "--n", "x"]).0, 2);
}

#[test]
fn zero_budget_exceeds() {
    assert_eq!(keypoly(&["--budget-seconds", "0", "verify"]).0, 3);
}
