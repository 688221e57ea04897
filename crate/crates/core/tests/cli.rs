use std::process::{Command, Output};

fn cubicf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubicf"))
        .args(args)
        .output()
        .expect("spawn cubicf")
}

#[test]
fn reduce_prints_coordinates() {
    let out = cubicf(&["reduce", "--t", "100", "--a", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["g1"], 1);
    assert_eq!(v["g2"], 1);
    assert_eq!(v["t1"], 100);
    assert_eq!(v["t2"], 10000);
    assert_eq!(v["a_star"], 3);
}

#[test]
fn out_of_domain_is_a_usage_error() {
    let out = cubicf(&["verify", "theorem1", "--t", "3", "--a", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_flags_exit_3_and_help_exits_0() {
    assert_eq!(cubicf(&["reduce", "--t", "x", "--a", "1"]).status.code(), Some(3));
    assert_eq!(cubicf(&["--help"]).status.code(), Some(0));
}

#[test]
fn theorem_report_is_reproducible() {
    let args = [
        "verify",
        "theorem1",
        "--t",
        "100",
        "--a",
        "1",
        "--seed",
        "5",
        "--samples",
        "40",
        "--jobs",
        "2",
    ];
    let a = cubicf(&args);
    let b = cubicf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = cubicf(&[
        "verify",
        "theorem1",
        "--t",
        "100",
        "--a",
        "1",
        "--seed",
        "6",
        "--samples",
        "40",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn convergents_csv_header() {
    let out = cubicf(&["convergents", "--t", "6", "--a", "2", "--n", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,p,q,gcd"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn scan_csv_columns() {
    let out = cubicf(&[
        "scan", "--a-max", "2", "--t-min", "90", "--t-max", "100", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("t,a,g1,g2,t1,t2,a_star,c6_lo,c6_hi,c7_lo,c7_hi,lambda_lo,lambda_hi,nontrivial,predicted")
    );
}

#[test]
fn json_only_subcommands_reject_csv() {
    assert_eq!(
        cubicf(&["reduce", "--t", "6", "--a", "2", "--format", "csv"])
            .status
            .code(),
        Some(3)
    );
}
