//! The full acceptance gate: every suite criterion over the default
//! exhaustive universe, with one pass/fail line per criterion.

use fubinilab::harness::checks::{
    check_cartesian_closed, check_chain_localization, check_free_adjunction,
    check_enrichment_roundtrip, check_main_implication, check_monad_laws, check_oracle,
    check_retraction, check_strong_monoidal, check_tensor_iterated, CheckOutcome,
};
use fubinilab::harness::{AxiomChoice, SuiteConfig};

fn default_config() -> SuiteConfig {
    SuiteConfig::default()
}

fn down_only_config() -> SuiteConfig {
    SuiteConfig {
        axioms: AxiomChoice::DownOnly,
        ..SuiteConfig::default()
    }
}

fn report(criterion: usize, outcome: &CheckOutcome) {
    println!(
        "criterion {criterion:2} [{}]: {} — {}",
        outcome.name,
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.detail
    );
    assert!(outcome.passed, "criterion {criterion} failed: {}", outcome.detail);
}

#[test]
fn criterion_01_cartesian_closedness_both_axiom_modes() {
    report(1, &check_cartesian_closed(&default_config()));
    report(1, &check_cartesian_closed(&down_only_config()));
}

#[test]
fn criterion_02_free_adjunction_hom_counts_and_triangles() {
    report(2, &check_free_adjunction(&default_config()));
}

#[test]
fn criterion_03_strong_monoidal_comparison_and_symmetry() {
    report(3, &check_strong_monoidal(&default_config()));
}

#[test]
fn criterion_04_monad_laws_exact_on_the_universe() {
    report(4, &check_monad_laws(&default_config()));
}

#[test]
fn criterion_05_tensor_composites_equal_iterated_sums() {
    report(5, &check_tensor_iterated(&default_config()));
}

#[test]
fn criterion_06_retraction_identity_hypothesis_free() {
    report(6, &check_retraction(&default_config()));
}

#[test]
fn criterion_07_reflexivity_implies_commutation_zero_failures() {
    report(7, &check_main_implication(&default_config()));
}

#[test]
fn criterion_08_chain_localization_links() {
    report(8, &check_chain_localization(&default_config()));
}

#[test]
fn criterion_09_enrichment_roundtrip() {
    report(9, &check_enrichment_roundtrip(&default_config()));
}

#[test]
fn criterion_10_independent_oracle_agreement() {
    report(10, &check_oracle(&default_config()));
}
