//! Behavioral tests of the `qutrit-msd` binary: exit codes, output
//! formats, and byte-stable CSV files.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qutrit-msd"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn wigner_named_norrell_shows_the_negativity() {
    let out = run(&["wigner", "--named", "norrell"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("-1.66666667e-1"), "{text}");
    assert!(text.contains("sum-negativity: 3.33333333e-1"), "{text}");
    assert!(text.contains("Wigner polytope:     outside"), "{text}");
}

#[test]
fn wigner_at_the_origin_is_flat() {
    let out = run(&["wigner", "--r", "0", "--theta", "0", "--phi", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("1.11111111e-1").count(), 10, "{text}"); // 9 entries + margin
    assert!(text.contains("stabilizer polytope: inside"), "{text}");
}

#[test]
fn wigner_named_e_is_outside() {
    let out = run(&["wigner", "--named", "E"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Wigner polytope:     outside"), "{text}");
    let sn_line = text
        .lines()
        .find(|l| l.starts_with("sum-negativity"))
        .unwrap();
    assert!(!sn_line.contains("0.00000000e0"), "{sn_line}");
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["wigner", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["threshold", "--code", "edge"]); // no target at all
    assert_eq!(out.status.code(), Some(3)); // domain error: empty state spec
}

#[test]
fn stabilizer_target_exits_three() {
    let out = run(&["threshold", "--code", "edge", "--target", "zero"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("no threshold in bracket"), "{err}");
}

#[test]
fn membership_reports_both_polytopes() {
    let out = run(&["membership", "--named", "mixed"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("wigner inside"), "{text}");
    assert!(text.contains("stabilizer inside"), "{text}");
}

#[test]
fn scan_csv_shape_and_determinism() {
    let dir = std::env::temp_dir().join("qutrit_msd_cli_tests");
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("scan_a.csv");
    let b = dir.join("scan_b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "scan",
            "--code",
            "edge",
            "--target",
            "fourier",
            "--plane",
            "xz",
            "--n",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let ca = std::fs::read(&a).unwrap();
    let cb = std::fs::read(&b).unwrap();
    assert_eq!(ca, cb, "scan CSV must be byte-stable");
    let text = String::from_utf8(ca).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "coord1,coord2,class,fidelity,p_succ");
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5, "{line}");
        assert!(
            ["STAB", "POSW", "DISTILL", "NEGUNDIST"].contains(&fields[2]),
            "{line}"
        );
    }
}

#[test]
fn search_is_deterministic_and_dumps_codes() {
    let dir = std::env::temp_dir().join("qutrit_msd_cli_tests");
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("atlas_a.csv");
    let b = dir.join("atlas_b.csv");
    let codes = dir.join("codes.json");
    for path in [&a, &b] {
        let out = run(&[
            "search",
            "--seed",
            "11",
            "--candidates",
            "4",
            "--max-iters",
            "60",
            "--out",
            path.to_str().unwrap(),
            "--codes-out",
            codes.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "atlas CSV must be byte-stable"
    );
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("code_id,fixed_point_class,theta,phi,r,sum_negativity"));
    // The code dump parses back into valid codes.
    let map: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&codes).unwrap()).unwrap();
    let obj = map.as_object().unwrap();
    assert_eq!(obj.len(), 4);
    for (_, v) in obj {
        let code = qutrit_msd_cli::codefile::parse_code(&v.to_string()).unwrap();
        assert!(code.is_valid());
    }
}

#[test]
fn distill_with_json_code_file_matches_builtin() {
    let dir = std::env::temp_dir().join("qutrit_msd_cli_tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("edge.json");
    std::fs::write(&path, qutrit_msd_cli::codefile::EDGE_CODE_JSON).unwrap();
    let from_file = run(&[
        "distill",
        "--code",
        path.to_str().unwrap(),
        "--named",
        "E",
        "--max-iters",
        "3",
    ]);
    let builtin = run(&[
        "distill",
        "--code",
        "edge",
        "--named",
        "E",
        "--max-iters",
        "3",
    ]);
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file), stdout(&builtin));
}

#[test]
fn threshold_face_norrell_quotes_the_published_value() {
    let out = run(&["threshold", "--code", "face", "--target", "norrell"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let p_line = text.lines().find(|l| l.starts_with("p* = ")).unwrap();
    let value: f64 = p_line.trim_start_matches("p* = ").parse().unwrap();
    assert!((value - 0.32989).abs() < 1e-3, "{p_line}");
}

#[test]
fn verify_fast_prints_one_line_per_criterion() {
    let out = run(&["verify", "--fast"]);
    let text = stdout(&out);
    for name in [
        "edge-fourier-threshold",
        "face-norrell-threshold",
        "edge-norrell-threshold",
        "edge-tightness-sweep",
        "fixed-points",
        "success-probability",
        "norrell-negativity",
        "group-orders",
        "property-suites",
        "nonconvexity-witness",
        "linear-suppression",
    ] {
        let line = text.lines().find(|l| l.starts_with(name));
        assert!(line.is_some(), "missing line for {name} in:\n{text}");
        let line = line.unwrap();
        assert!(
            line.contains("PASS") || line.contains("FAIL"),
            "no verdict on: {line}"
        );
    }
    assert!(!text.contains("scan-consistency"), "--fast skips the scan");
}

#[test]
fn fault_injected_code_fixture_fails_threshold() {
    // A corrupted edge-code file must be rejected up front, naming the
    // violated invariant.
    let dir = std::env::temp_dir().join("qutrit_msd_cli_tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path: &Path = &dir.join("broken.json");
    let broken = qutrit_msd_cli::codefile::EDGE_CODE_JSON
        .replace("[0, 0, 0, 2, 2, 2, 0, 0]", "[1, 0, 0, 2, 2, 2, 0, 0]");
    std::fs::write(path, broken).unwrap();
    let out = run(&[
        "threshold",
        "--code",
        path.to_str().unwrap(),
        "--target",
        "fourier",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
