//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`; a failing criterion panics
//! with its diagnostic).

use std::path::Path;

use wzs_cli::acceptance as acc;

fn report(name: &str, result: Result<(), String>) {
    match result {
        Ok(()) => println!("criterion {name}: PASS"),
        Err(msg) => {
            println!("criterion {name}: FAIL ({msg})");
            panic!("criterion {name} failed: {msg}");
        }
    }
}

#[test]
fn criterion_01_davenport() {
    report("01-davenport", acc::criterion_01_davenport());
}

#[test]
fn criterion_02_unions_formula() {
    report("02-unions-formula", acc::criterion_02_unions_formula());
}

#[test]
fn criterion_03_two_j_lengths() {
    report("03-two-j-lengths", acc::criterion_03_two_j_lengths());
}

#[test]
fn criterion_04_delta_catenary_omega() {
    report("04-delta-catenary-omega", acc::criterion_04_delta_catenary_omega());
}

#[test]
fn criterion_05_seminormality() {
    report("05-seminormality", acc::criterion_05_seminormality());
}

#[test]
fn criterion_06_aut_membership_parity() {
    report("06-aut-membership-parity", acc::criterion_06_aut_membership_parity());
}

#[test]
fn criterion_07_class_semigroup() {
    report("07-class-semigroup", acc::criterion_07_class_semigroup());
}

#[test]
fn criterion_08_krull_witnesses() {
    report("08-krull-witnesses", acc::criterion_08_krull_witnesses());
}

#[test]
fn criterion_09_system_separation() {
    report("09-system-separation", acc::criterion_09_system_separation());
}

#[test]
fn criterion_10_transfer_equivalence() {
    report("10-transfer-equivalence", acc::criterion_10_transfer_equivalence());
}

#[test]
fn criterion_11_length_transfer() {
    report("11-length-transfer", acc::criterion_11_length_transfer());
}

#[test]
fn criterion_12_determinism() {
    let bin = Path::new(env!("CARGO_BIN_EXE_wzs"));
    report("12-determinism", acc::criterion_12_determinism(bin));
}
