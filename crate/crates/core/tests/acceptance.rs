//! One test per acceptance criterion. Each prints a single PASS/FAIL line,
//! written to the stdout handle so it shows without `--nocapture`.

use cusp_einstein::suite::{self, CriterionOutcome, ProfileSet, SuiteConfig};
use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

fn config() -> SuiteConfig {
    SuiteConfig::default()
}

fn profiles() -> &'static ProfileSet {
    static SET: OnceLock<ProfileSet> = OnceLock::new();
    SET.get_or_init(|| {
        let start = Instant::now();
        let set = ProfileSet::build(&config()).expect("profile search runs");
        report(format!("profile search for j = 2..10 took {:.2?}", start.elapsed()));
        set
    })
}

fn report(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn check(budget: Option<Duration>, run: impl FnOnce() -> CriterionOutcome) {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let budget_text = budget.map_or(String::new(), |b| format!(", budget {b:.0?}"));
    report(format!("{} [{:.2?}{budget_text}{}]", outcome.line(), elapsed, if in_time { "" } else { ", OVER BUDGET" }));
    assert!(outcome.passed, "{}", serde_json::to_string_pretty(&outcome.details).unwrap());
    assert!(in_time, "criterion {} took {elapsed:.2?}", outcome.id);
}

#[test]
fn criterion_01_cusp_exactness() {
    let set = profiles();
    check(Some(Duration::from_secs(1)), || suite::cusp_exactness(set));
}

#[test]
fn criterion_02_oracle_agreement() {
    let set = profiles();
    check(Some(Duration::from_secs(10)), || suite::oracle_agreement_check(set, config().oracle_points_per_region));
}

#[test]
fn criterion_03_constraint_suite() {
    let set = profiles();
    check(Some(Duration::from_secs(30)), || suite::constraint_suite(set));
}

#[test]
fn criterion_04_poincare() {
    let set = profiles();
    let c = config();
    check(None, || suite::poincare_check(set, c.seed, c.poincare_cases));
}

#[test]
fn criterion_05_one_form() {
    let set = profiles();
    let c = config();
    check(None, || suite::one_form_check(set, c.seed, c.one_form_cases, c.verify_grid));
}

#[test]
fn criterion_06_budgets() {
    check(None, suite::budget_check);
}

#[test]
fn criterion_07_baykur_hamada() {
    check(Some(Duration::from_secs(1)), suite::baykur_hamada_check);
}

#[test]
fn criterion_08_enumerator() {
    check(Some(Duration::from_secs(5)), suite::enumerator_check);
}

#[test]
fn criterion_09_pin2() {
    check(None, || suite::pin2_check(config().seed));
}

#[test]
fn criterion_10_determinism() {
    let c = config();
    let start = Instant::now();
    let first = suite::run_all(&c).expect("suite runs").to_json();
    let second = suite::run_all(&c).expect("suite runs").to_json();
    let same = first == second;
    let outcome = CriterionOutcome {
        id: 10,
        name: suite::CRITERIA[9].into(),
        passed: same,
        summary: format!(
            "two suite reports with seed {}: {} and {} bytes, identical: {same}",
            c.seed,
            first.len(),
            second.len()
        ),
        details: serde_json::Value::Null,
    };
    report(format!("{} [{:.2?}]", outcome.line(), start.elapsed()));
    assert!(same);
}
