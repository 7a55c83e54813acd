//! Acceptance checks 1–8. Each test prints one PASS/FAIL line (run with
//! `--nocapture` to see them) and fails on a wrong answer or a blown budget.

use std::time::{Duration, Instant};

use pgg_core::experiments::{
    classifier_totality, double_equivalence, shift_equivalence, solver_cross_validation, theorem1_end_to_end,
    ExperimentReport,
};
use pgg_core::gadgets::suite::{run_contract_suite, SuiteGroup};
use pgg_core::solve::{build_cycle_pne, build_path_pne, four_triangle_chain, ExhaustiveSearch};
use pgg_core::Pattern;

const SEED: u64 = 0x5eed_2024;

fn report(criterion: u32, name: &str, ok: bool, elapsed: Duration, budget: Duration, detail: &str) {
    let within = elapsed <= budget;
    println!(
        "criterion {criterion} {}: {name} ({:.2?} of {:.0?}) {detail}",
        if ok && within { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    assert!(ok, "criterion {criterion} ({name}) failed: {detail}");
    assert!(within, "criterion {criterion} ({name}) took {elapsed:?}, budget {budget:?}");
}

fn run_suite(criterion: u32, group: SuiteGroup, budget: Duration) {
    let start = Instant::now();
    let reports = run_contract_suite(Some(group), pgg_core::solve::DEFAULT_EXHAUSTIVE_CAP).unwrap();
    let elapsed = start.elapsed();
    for r in &reports {
        println!("{r}");
        // each sweep checks at most 2^22 complete assignments
        for q in &r.requirements {
            assert!(q.completions <= 1 << 22, "{} / {}: {} completions", r.contract, q.name, q.completions);
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.contract.as_str()).collect();
    let requirements: usize = reports.iter().map(|r| r.requirements.len()).sum();
    report(
        criterion,
        &format!("{group:?} gadget suite"),
        failed.is_empty(),
        elapsed,
        budget,
        &format!("{} contracts, {requirements} requirements, failed: {failed:?}", reports.len()),
    );
}

fn run_experiment(criterion: u32, budget: Duration, f: impl FnOnce() -> pgg_core::Result<ExperimentReport>) -> ExperimentReport {
    let start = Instant::now();
    let r = f().unwrap();
    let elapsed = start.elapsed();
    println!("{r}");
    report(criterion, &r.name, r.passed(), elapsed, budget, &format!("{}/{}", r.agreements, r.trials));
    r
}

#[test]
fn criterion1_zero_or_two_gadgets() {
    run_suite(1, SuiteGroup::ZeroOrTwo, Duration::from_secs(60));
}

#[test]
fn criterion2_isolated_odd_gadgets() {
    run_suite(2, SuiteGroup::IsolatedOdd, Duration::from_secs(30));
}

#[test]
fn criterion3_one_in_three_reduction() {
    let r = run_experiment(3, Duration::from_secs(300), || theorem1_end_to_end(SEED, 200));
    assert_eq!(r.trials, 200);
}

#[test]
fn criterion4_double_pattern_equivalence() {
    let r = run_experiment(4, Duration::from_secs(600), || double_equivalence(SEED, 500));
    assert_eq!(r.trials, 500);
}

#[test]
fn criterion5_shift_family_equivalence() {
    let r = run_experiment(5, Duration::from_secs(600), || shift_equivalence(SEED, 50));
    assert_eq!(r.trials, 50);
}

#[test]
fn criterion6_structured_constructions() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 2..=10_000 {
        let (inst, s) = build_path_pne(n).unwrap();
        if !inst.is_ntpne(&s).unwrap() {
            bad.push(format!("path {n}"));
        }
    }
    for n in 3..=10_000 {
        let (inst, s) = build_cycle_pne(n).unwrap();
        if !inst.is_ntpne(&s).unwrap() {
            bad.push(format!("cycle {n}"));
        }
    }
    let g = four_triangle_chain();
    assert_eq!(g.n(), 9);
    let pnes = ExhaustiveSearch::new(&g, &Pattern::zero_or_two()).nontrivial(false).count();
    if pnes != 0 {
        bad.push(format!("four-triangle chain has {pnes} PNEs"));
    }
    report(
        6,
        "structured constructions",
        bad.is_empty(),
        start.elapsed(),
        Duration::from_secs(10),
        &format!("problems: {bad:?}"),
    );
}

#[test]
fn criterion7_classifier() {
    let r = run_experiment(7, Duration::from_secs(300), || classifier_totality(SEED, 10, 20));
    assert_eq!(r.trials, 1024);
    let verdicts: usize = r.tallies.iter().map(|(_, c)| c).sum();
    assert_eq!(verdicts, 1024, "exactly one verdict per pattern");
}

#[test]
fn criterion8_solver_cross_validation() {
    let r = run_experiment(8, Duration::from_secs(600), || solver_cross_validation(SEED, 300));
    assert_eq!(r.trials, 3000);
}
