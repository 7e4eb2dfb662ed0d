//! Acceptance suite: every published value the simulator must reproduce,
//! one test per criterion. Each test prints its PASS/FAIL line with the
//! measured numbers.

use qutrit_msd_cli::verify::{self, CriterionOutcome};

fn check(outcome: CriterionOutcome) {
    println!(
        "{} {}: {}",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.name,
        outcome.detail
    );
    assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
}

#[test]
fn criterion_01_edge_fourier_threshold() {
    check(verify::criterion_1_edge_fourier_threshold());
}

#[test]
fn criterion_02_face_norrell_threshold() {
    check(verify::criterion_2_face_norrell_threshold());
}

#[test]
fn criterion_03_edge_norrell_threshold() {
    check(verify::criterion_3_edge_norrell_threshold());
}

#[test]
fn criterion_04_edge_tightness_sweep() {
    check(verify::criterion_4_edge_tightness_sweep());
}

#[test]
fn criterion_05_fixed_points() {
    check(verify::criterion_5_fixed_points());
}

#[test]
fn criterion_06_success_probability() {
    check(verify::criterion_6_success_probability());
}

#[test]
fn criterion_07_norrell_negativity() {
    check(verify::criterion_7_norrell_negativity());
}

#[test]
fn criterion_08_group_orders() {
    check(verify::criterion_8_group_orders());
}

#[test]
fn criterion_09_property_suites() {
    check(verify::criterion_9_property_suites());
}

#[test]
fn criterion_10_nonconvexity_witness() {
    check(verify::criterion_10_nonconvexity_witness());
}

#[test]
fn criterion_11_linear_suppression() {
    check(verify::criterion_11_linear_suppression());
}

#[test]
fn scan_consistency_distill_points_are_negative() {
    check(verify::scan_consistency());
}
