use std::process::Command;

use charvar::cli::{run, EXIT_OK, EXIT_USAGE};
use charvar::exact::{poly_from_json, poly_to_json};

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_charvar")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn epoly_text() {
    let (code, out, _) = bin(&["epoly", "-n", "1", "-g", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 - 4*q + 6*q^2 - 4*q^3 + q^4");
}

#[test]
fn mhp_rank_one_genus_one() {
    let (code, out, _) = bin(&["mhp", "-n", "1", "-g", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 + 2*q*t + q^2*t^2");
}

#[test]
fn verify_duality_passes() {
    let (code, out, _) = bin(&["verify", "--check", "duality", "-n", "3", "-g", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "PASS");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["epoly", "-n", "1"]).0, 2);
    assert_eq!(bin(&["nonsense"]).0, 2);
    assert_eq!(bin(&["epoly", "-n", "0", "-g", "2"]).0, 2);
    let (code, _, err) = bin(&["epoly", "-n", "50", "-g", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"), "{err}");
    assert_eq!(bin(&["oracle", "--mode", "twisted", "-n", "2", "-q", "4", "-g", "1"]).0, 2);
    assert_eq!(bin(&["oracle", "--mode", "twisted", "-n", "2", "-q", "2", "-g", "1"]).0, 2);
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["charvar", "epoly", "-n", "2", "-g", "2", "--format", "json"],
        vec!["charvar", "hbar", "-n", "2", "-g", "1", "--format", "json"],
        vec!["charvar", "mhp", "-n", "2", "-g", "2", "--format", "json", "--pgl"],
        vec!["charvar", "m2", "--what", "ring", "-g", "2", "--format", "json"],
    ] {
        let out = run(args.clone());
        assert_eq!(out.code, EXIT_OK, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let p = poly_from_json(&v["payload"]).unwrap();
        assert_eq!(poly_to_json(&p), v["payload"]);
        assert_eq!(v["payload"].to_string(), serde_json::to_string(&poly_to_json(&p)).unwrap());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["charvar", "untwisted", "-g", "2", "-N", "3"];
    assert_eq!(run(args), run(args));
    let (_, a, _) = bin(&args[1..]);
    let (_, b, _) = bin(&args[1..]);
    assert_eq!(a, b);
}

#[test]
fn oracle_and_m2_pass() {
    let out = run(["charvar", "oracle", "--mode", "twisted", "-n", "2", "-q", "3", "-g", "1"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("count: 96"));
    let out = run(["charvar", "oracle", "--mode", "untwisted", "-n", "2", "-q", "2", "-g", "1"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("count: 18"));
    let ring = run(["charvar", "m2", "--what", "ring", "-g", "3"]);
    let closed = run(["charvar", "m2", "--what", "closed", "-g", "3"]);
    assert_eq!(ring.stdout, closed.stdout);
    let l = run(["charvar", "m2", "--what", "lefschetz", "-g", "2"]);
    assert_eq!(l.code, EXIT_OK);
    assert_eq!(l.stdout.lines().last().unwrap(), "PASS");
}

#[test]
fn every_check_runs() {
    for c in ["g0", "g0u", "g1", "gh", "duality", "t-minus-one"] {
        let out = run(["charvar", "verify", "--check", c, "--order", "3", "-g", "2"]);
        assert_eq!(out.code, EXIT_OK, "{c}: {}", out.stderr);
    }
}

#[test]
fn report_flag_leaves_passing_and_usage_results_alone() {
    let out = run(["charvar", "euler", "-n", "2", "-g", "1", "--report"]);
    assert_eq!(out.code, EXIT_USAGE);
    let out = run(["charvar", "verify", "--check", "gh", "--order", "3", "--report"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.is_empty());
    let out = run(["charvar", "euler", "-n", "4", "-g", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.trim(), "0");
}
