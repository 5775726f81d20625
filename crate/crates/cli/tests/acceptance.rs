// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! per verified claim (visible with `cargo test -- --nocapture`).
//!
//! Criteria 1-9 cover, in order: the closed-form dF table, the first-order
//! residual bound and its quadratic scaling, gate independence, the
//! second-order pi-rotation coefficients, collective-equals-uncorrelated,
//! coherence-rate structure, Haar moment identities, exact-vs-Monte-Carlo
//! oracle agreement, and the engine invariants.

use lindblad_fidelity_cli::verify::{criterion, format_row, VerifyOptions};

fn run_criterion(k: u8) {
    let rows = criterion(k, &VerifyOptions { fast: false });
    assert!(!rows.is_empty());
    let mut failures = Vec::new();
    for row in &rows {
        println!("{}", format_row(row));
        if !row.pass {
            failures.push(format_row(row));
        }
    }
    assert!(
        failures.is_empty(),
        "criterion {k} failed rows:\n{}",
        failures.join("\n")
    );
}

#[test]
fn criterion_1_closed_form_delta_f_table() {
    run_criterion(1);
}

#[test]
fn criterion_2_first_order_residual_bound_and_scaling() {
    run_criterion(2);
}

#[test]
fn criterion_3_gate_independence_of_deficit() {
    run_criterion(3);
}

#[test]
fn criterion_4_second_order_pi_rotation_coefficients() {
    run_criterion(4);
}

#[test]
fn criterion_5_collective_equals_uncorrelated_first_order() {
    run_criterion(5);
}

#[test]
fn criterion_6_coherence_rate_structure() {
    run_criterion(6);
}

#[test]
fn criterion_7_haar_moment_identities() {
    run_criterion(7);
}

#[test]
fn criterion_8_oracle_equivalence() {
    run_criterion(8);
}

#[test]
fn criterion_9_engine_invariants() {
    run_criterion(9);
}
