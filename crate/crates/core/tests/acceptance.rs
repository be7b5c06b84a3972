//! Acceptance suite: every criterion is an exhaustive exact computation with
//! tolerance zero (canonical cyclotomic equality). Each test prints one
//! pass/fail line; run with `--nocapture` to see them on success.
//!
//! Pinned parameters: precision 6 (re-checked at 8), shell window 6, unit
//! level 3, zeta bound 24, seed 0 for the sampled spot checks.

use sscgamma::verify::{self, Outcome};

const SEED: u64 = 0;

fn report(outcome: &Outcome) {
    println!(
        "criterion {}: {} ({} cases; {})",
        outcome.name,
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.cases,
        outcome.detail
    );
    if let Some(cx) = &outcome.counterexample {
        println!("  counterexample: {cx}");
    }
    assert!(outcome.passed, "{} failed", outcome.name);
}

#[test]
fn c01_tame_gamma_criterion_matches_distinction() {
    report(&verify::tame_gamma_criterion_matches_distinction(&[3, 5, 7]));
}

#[test]
fn c02_no_distinguished_triples_in_odd_degree() {
    report(&verify::odd_degree_admits_no_distinguished_triple(&[3, 5]));
}

#[test]
fn c03_self_duality_parameter_classification() {
    report(&verify::self_duality_parameter_classification(&[3, 5]));
}

#[test]
fn c04_pontryagin_kernel_detection() {
    report(&verify::pontryagin_kernel_detection(&[3, 5]));
}

#[test]
fn c05_c06_depth_one_oracle_sweep() {
    let (collapse, tilde_and_gamma) = verify::depth_one_oracle_sweep(SEED);
    report(&collapse);
    report(&tilde_and_gamma);
}

#[test]
fn c07_tame_gamma_matches_functional_equation_oracle() {
    report(&verify::tame_oracle_cross_check(SEED));
}

#[test]
fn c08_depth_one_gamma_trivial_at_half_for_distinguished() {
    report(&verify::depth_one_gamma_trivial_at_half_for_distinguished());
}

#[test]
fn c09_dual_group_sizes_and_character_consistency() {
    report(&verify::dual_group_sizes_and_character_consistency(&[3, 5, 7]));
}

#[test]
fn c10_integral_robustness_invariants() {
    report(&verify::integral_robustness_invariants());
}
