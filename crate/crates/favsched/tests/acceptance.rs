//! End-to-end checks of the shipped guarantees. Each test runs one
//! criterion from the verification suite and prints its one-line verdict;
//! `cargo test --test acceptance -- --nocapture` shows them all.

use favsched::harness::acceptance;

fn assert_criterion(outcome: acceptance::CriterionOutcome) {
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn greedy_pays_the_full_bound_on_forcing_sequences() {
    assert_criterion(acceptance::criterion_1());
}

#[test]
fn greedy_prefix_loads_stay_under_released_work() {
    assert_criterion(acceptance::criterion_2());
}

#[test]
fn halving_game_extracts_the_logarithmic_factor() {
    assert_criterion(acceptance::criterion_3());
}

#[test]
fn exponential_rule_stays_within_rho_of_known_optimum() {
    assert_criterion(acceptance::criterion_4(2.0));
}

#[test]
fn doubling_wrapper_loses_at_most_a_factor_four() {
    assert_criterion(acceptance::criterion_5(2.0));
}

#[test]
fn greedy_obeys_the_two_group_closed_form() {
    assert_criterion(acceptance::criterion_6());
}

#[test]
fn favorite_only_rule_is_tight() {
    assert_criterion(acceptance::criterion_7());
}

#[test]
fn tight_constructions_match_their_closed_forms() {
    assert_criterion(acceptance::criterion_8());
}

#[test]
fn two_machine_game_forces_the_threshold_everywhere() {
    assert_criterion(acceptance::criterion_9());
}

#[test]
fn rescaled_greedy_respects_the_effective_bound() {
    assert_criterion(acceptance::criterion_10());
}

#[test]
fn optimum_solvers_agree_and_bounds_are_sound() {
    assert_criterion(acceptance::criterion_11());
}
