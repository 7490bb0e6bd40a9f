//! The acceptance checks as library functions, each returning a
//! [`CriterionOutcome`], and `run_all` which bundles them into one
//! deterministic report.

use crate::geometry::{
    curvature_report, cusp_volume, einstein_residual, fd_curvature_oracle_adaptive, oracle_agreement, ricci, scalar,
    second_form, ExactCusp, FlatCrossSection, RegionKind, WarpedMetric,
};
use crate::profile::{search, BuilderOptions, SearchOutcome, WarpProfile};
use crate::quadrature::QuadratureOptions;
use crate::spectral::{one_form_suite, poincare_function_test, poincare_suite, sw_budgets, SuiteReport, TestFunction};
use crate::topology::{
    baykur_hamada, enumerate_examples, pin2_dimension, pin2_gluing, standard_piece, ClosedFourManifold, PinTwoData,
    StandardKind, TopologyError,
};
use crate::FORMAT_VERSION;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const CRITERIA: [&str; 10] = [
    "hyperbolic cusp exactness",
    "finite-difference oracle agreement",
    "constraint suite",
    "weighted Poincare inequality",
    "one-form constant",
    "scalar-curvature budgets",
    "Baykur-Hamada pipeline",
    "geography enumerator",
    "Pin(2) bookkeeping",
    "determinism",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
}

impl CriterionOutcome {
    fn new(id: usize, passed: bool, summary: String, details: Value) -> Self {
        Self { id, name: CRITERIA[id - 1].into(), passed, summary, details }
    }

    /// One line: `criterion N (name): PASS|FAIL: summary`.
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {}: {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.summary
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub depths: Vec<f64>,
    pub verify_grid: usize,
    pub builder: BuilderOptions,
    pub poincare_cases: usize,
    pub one_form_cases: usize,
    pub oracle_points_per_region: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 20240601,
            depths: (2..=10).map(f64::from).collect(),
            verify_grid: 10_000,
            builder: BuilderOptions::default(),
            poincare_cases: 200,
            one_form_cases: 100,
            oracle_points_per_region: 100,
        }
    }
}

/// Search outcomes for every depth of the configuration, in order.
#[derive(Debug, Clone)]
pub struct ProfileSet {
    pub outcomes: Vec<(f64, SearchOutcome)>,
}

impl ProfileSet {
    pub fn build(config: &SuiteConfig) -> Result<Self, String> {
        let opts = BuilderOptions { verify_grid: config.verify_grid, ..config.builder };
        let outcomes = config
            .depths
            .iter()
            .map(|&j| search(j, &opts).map(|o| (j, o)).map_err(|e| format!("j = {j}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { outcomes })
    }

    pub fn profile(&self, j: f64) -> Option<&WarpProfile> {
        self.outcomes.iter().find(|(d, _)| *d == j).map(|(_, o)| &o.profile)
    }

    fn select(&self, depths: &[f64]) -> Vec<(f64, &WarpProfile)> {
        depths.iter().filter_map(|&j| self.profile(j).map(|p| (j, p))).collect()
    }
}

fn tag(j: f64) -> String {
    format!("j={j}")
}

/// Ricci `(-3, -3, -3)`, scalar `-12`, `h = 3/2` and zero Einstein residual on
/// every cusp region, to `1e-12`.
pub fn cusp_exactness(set: &ProfileSet) -> CriterionOutcome {
    let mut worst = 0.0f64;
    let mut points = 0;
    let mut failures = Vec::new();
    for (j, o) in &set.outcomes {
        let p = &o.profile;
        for r in p.regions().iter().filter(|r| r.kind == RegionKind::Cusp) {
            for i in 0..=1000 {
                let t = r.t0 + (r.t1 - r.t0) * i as f64 / 1000.0;
                let jet = p.jet(t);
                let dev = (|| -> Result<f64, crate::geometry::GeometryError> {
                    let ric = ricci(&jet)?;
                    let s = scalar(&jet)?;
                    let h = second_form(&jet)?.mean_h;
                    let res = einstein_residual(&jet, -3.0)?;
                    Ok([ric.t + 3.0, ric.theta + 3.0, ric.torus + 3.0, s + 12.0, h - 1.5, res]
                        .iter()
                        .fold(0.0f64, |m, x| m.max(x.abs())))
                })()
                .unwrap_or(f64::INFINITY);
                points += 1;
                worst = worst.max(dev);
                if dev > 1e-12 && failures.len() < 5 {
                    failures.push(json!({ "j": j, "t": t, "deviation": dev }));
                }
            }
        }
    }
    let passed = worst <= 1e-12 && points > 0;
    CriterionOutcome::new(
        1,
        passed,
        format!("{points} cusp points over {} profiles, worst deviation {worst:.3e} (limit 1e-12)", set.outcomes.len()),
        json!({ "points": points, "worst_deviation": worst, "failures": failures }),
    )
}

/// Points strictly inside each region, kept clear of the pinch.
fn region_points(p: &WarpProfile, kind: RegionKind, n: usize) -> Vec<f64> {
    p.regions()
        .iter()
        .filter(|r| r.kind == kind)
        .flat_map(|r| {
            let span = if kind == RegionKind::Cap { 0.9 * (r.t1 - r.t0) } else { r.t1 - r.t0 };
            (0..n).map(move |i| r.t0 + span * (i as f64 + 0.5) / n as f64)
        })
        .collect()
}

/// Closed-form curvature against the finite-difference oracle on 100 points
/// per region of the profiles `j = 2, 4, 6`.
pub fn oracle_agreement_check(set: &ProfileSet, points_per_region: usize) -> CriterionOutcome {
    let mut rows = Vec::new();
    let mut total = 0;
    let mut bad = 0;
    let mut worst = (0.0f64, String::new());
    for (j, p) in set.select(&[2.0, 4.0, 6.0]) {
        for kind in [RegionKind::Cusp, RegionKind::Transition, RegionKind::Cap] {
            let ts = region_points(p, kind, points_per_region);
            let results: Vec<Result<(f64, &'static str, bool), String>> = ts
                .par_iter()
                .map(|&t| {
                    let closed = curvature_report(&p.jet(t)).map_err(|e| e.to_string())?;
                    let (fd, _) = fd_curvature_oracle_adaptive(p, t).map_err(|e| e.to_string())?;
                    let a = oracle_agreement(&closed, &fd, 1e-6, 1e-8);
                    Ok((a.worst_relative, a.worst_field, a.ok))
                })
                .collect();
            let mut region_worst = 0.0f64;
            let mut region_bad = 0;
            let mut faults = Vec::new();
            for (t, r) in ts.iter().zip(&results) {
                total += 1;
                match r {
                    Ok((w, field, ok)) => {
                        region_worst = region_worst.max(*w);
                        if *w > worst.0 {
                            worst = (*w, format!("{} {} at t = {t}", tag(j), field));
                        }
                        if !ok {
                            region_bad += 1;
                        }
                    }
                    Err(e) => {
                        region_bad += 1;
                        if faults.len() < 3 {
                            faults.push(format!("t = {t}: {e}"));
                        }
                    }
                }
            }
            bad += region_bad;
            rows.push(json!({ "j": j, "region": kind.as_str(), "points": ts.len(), "failures": region_bad, "worst_relative": region_worst, "faults": faults }));
        }
    }
    let passed = bad == 0 && total >= 300;
    CriterionOutcome::new(
        2,
        passed,
        format!("{total} points, {bad} disagreements, worst relative error {:.3e} ({})", worst.0, worst.1),
        json!({ "points": total, "failures": bad, "regions": rows }),
    )
}

/// Hard constraints and closure of every profile on the verifier grid.
pub fn constraint_suite(set: &ProfileSet) -> CriterionOutcome {
    let mut rows = Vec::new();
    let mut failing = Vec::new();
    for (j, o) in &set.outcomes {
        let p = &o.profile;
        let end = p.jet(p.t_end);
        let closure = end.phi == 0.0 && end.dphi == -1.0;
        let r = &o.report;
        let ok = r.pass && closure;
        if !ok {
            failing.push(format!(
                "{}: {} = {:.3e} at t = {:.6}",
                tag(*j),
                r.worst.constraint,
                r.worst.slack,
                r.worst.t
            ));
        }
        let vol = cusp_volume(p, 0.0, p.t_end, &QuadratureOptions::default()).map(|v| v.value).ok();
        rows.push(json!({
            "j": j,
            "pass": ok,
            "closure_exact": closure,
            "epsilon": p.epsilon,
            "c_level": p.c_level,
            "t_end": p.t_end,
            "min_slack_a1": r.min_slack_a1.value,
            "min_slack_a2": r.min_slack_a2.value,
            "min_b_t": r.min_b_t.value,
            "min_b_theta": r.min_b_theta.value,
            "min_b_torus": r.min_b_torus.value,
            "min_mean_h": r.min_mean_h.value,
            "inf_scalar": r.inf_scalar.value,
            "volume": vol,
            "worst": r.worst,
            "points": r.points,
        }));
    }
    let passed = failing.is_empty() && !set.outcomes.is_empty();
    let summary = if passed {
        format!("{} profiles pass every hard constraint", set.outcomes.len())
    } else {
        format!(
            "{} of {} profiles violate the hard constraints; first: {}",
            failing.len(),
            set.outcomes.len(),
            failing[0]
        )
    };
    CriterionOutcome::new(3, passed, summary, json!({ "profiles": rows }))
}

fn seed_for(base: u64, salt: u64) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt)
}

/// Seeded random test functions on the exact cusp and on `j = 2, 4, 6, 8`,
/// plus the equality case and the constant-function closed form.
pub fn poincare_check(set: &ProfileSet, seed: u64, cases: usize) -> CriterionOutcome {
    let opts = QuadratureOptions::default();
    let mut suites: Vec<Result<SuiteReport, String>> = Vec::new();
    let cusp = ExactCusp::infinite(FlatCrossSection::unit());
    suites.push(poincare_suite(&cusp, "exact-cusp", seed_for(seed, 400), cases, 5.0, &opts).map_err(|e| e.to_string()));
    for (j, p) in set.select(&[2.0, 4.0, 6.0, 8.0]) {
        let t = p.j + p.epsilon + 0.5 * p.cap_length();
        suites.push(
            poincare_suite(p, &tag(j), seed_for(seed, 400 + j as u64), cases, t, &opts).map_err(|e| e.to_string()),
        );
    }
    let mut violations = 0;
    let mut rows = Vec::new();
    for s in &suites {
        match s {
            Ok(r) => {
                violations += r.summary.violations;
                rows.push(json!({ "profile": r.profile_ref, "seed": r.seed, "cases": r.summary.cases, "violations": r.summary.violations, "min_margin": r.summary.min_margin, "h0": r.parameters["h0"] }));
            }
            Err(e) => {
                violations += cases;
                rows.push(json!({ "error": e }));
            }
        }
    }

    let mut sharp_worst = 0.0f64;
    let mut closed_worst = 0.0f64;
    for t in [1.0, 2.5, 5.0, 8.0] {
        match poincare_function_test(&cusp, &TestFunction::exponential(1.0, 1.5, (0.0, t)), t, &opts) {
            Ok(r) => sharp_worst = sharp_worst.max((r.lhs - r.rhs).abs() / r.lhs.max(1.0)),
            Err(_) => sharp_worst = f64::INFINITY,
        }
        match poincare_function_test(&cusp, &TestFunction::constant(1.0, (0.0, t)), t, &opts) {
            Ok(r) => {
                let e = (-3.0 * t).exp();
                closed_worst = closed_worst.max((r.rhs - (1.5 * (1.0 - e) / 3.0 + e - 1.0)).abs()).max(r.lhs.abs());
            }
            Err(_) => closed_worst = f64::INFINITY,
        }
    }
    let passed = violations == 0 && sharp_worst <= 1e-8 && closed_worst <= 1e-8;
    CriterionOutcome::new(
        4,
        passed,
        format!(
            "{} random functions on {} metrics, {violations} violations; equality case gap {sharp_worst:.3e}, constant-function error {closed_worst:.3e} (limits 1e-8)",
            cases * suites.len(),
            suites.len()
        ),
        json!({ "suites": rows, "sharp_relative_gap": sharp_worst, "constant_abs_error": closed_worst }),
    )
}

/// Seeded invariant forms in the uniform window of `j = 2, 4, 6, 8`.
pub fn one_form_check(set: &ProfileSet, seed: u64, cases: usize, grid_n: usize) -> CriterionOutcome {
    let opts = QuadratureOptions::default();
    let mut violations = 0;
    let mut total = 0;
    let mut min_ratio = f64::INFINITY;
    let mut rows = Vec::new();
    for (j, p) in set.select(&[2.0, 4.0, 6.0, 8.0]) {
        match one_form_suite(p, &tag(j), seed_for(seed, 500 + j as u64), cases, grid_n, &opts) {
            Ok(r) => {
                total += r.summary.cases;
                violations += r.summary.violations;
                let ratios: Vec<f64> = r.cases.iter().filter_map(|c| c.inputs["ratio"].as_f64()).collect();
                let m = ratios.iter().copied().fold(f64::INFINITY, f64::min);
                min_ratio = min_ratio.min(m);
                let errors: Vec<&str> = r.cases.iter().filter_map(|c| c.error.as_deref()).take(3).collect();
                rows.push(json!({ "profile": r.profile_ref, "seed": r.seed, "window": r.parameters["chosen_window"], "cases": r.summary.cases, "violations": r.summary.violations, "min_ratio": m, "errors": errors }));
            }
            Err(e) => {
                violations += cases;
                total += cases;
                rows.push(json!({ "profile": tag(j), "error": e.to_string() }));
            }
        }
    }
    let passed = violations == 0 && total > 0;
    CriterionOutcome::new(
        5,
        passed,
        format!("{total} forms, {violations} violations or adjointness faults, smallest energy/mass {min_ratio:.4} (limit 1/4 - 1e-6)"),
        json!({ "profiles": rows, "min_ratio": min_ratio }),
    )
}

/// Budgets of the exact cusp and the exact budget identities.
pub fn budget_check() -> CriterionOutcome {
    let cusp = ExactCusp::infinite(FlatCrossSection::unit());
    match sw_budgets(&cusp, f64::INFINITY, &QuadratureOptions::default()) {
        Ok(b) => {
            let l4_err = (b.l4_budget - 48.0).abs();
            let vol_err = (b.volume - 1.0 / 3.0).abs();
            let identities = b.fplus_budget * 8.0 == b.l4_budget && b.lebrun_lhs == 3.0 * b.daiwei_rhs;
            let passed = l4_err <= 1e-8 && vol_err <= 1e-8 && identities;
            CriterionOutcome::new(
                6,
                passed,
                format!(
                    "l4 = {:.12}, volume = {:.12}, errors {l4_err:.2e} / {vol_err:.2e}, identities exact: {identities}",
                    b.l4_budget, b.volume
                ),
                json!({ "budget": b, "l4_error": l4_err, "volume_error": vol_err, "identities_exact": identities }),
            )
        }
        Err(e) => CriterionOutcome::new(6, false, format!("quadrature failed: {e}"), Value::Null),
    }
}

/// Minimal accepted genus three ways for `n = 5..=50`, and the `(5, 5)` certificate.
pub fn baykur_hamada_check() -> CriterionOutcome {
    let mut mismatches = Vec::new();
    for n in 5..=50i64 {
        let scan = (0..=n + 10).find(|&g| baykur_hamada(n, g).map(|c| c.valid).unwrap_or(false));
        let linear = (0..=n + 10).find(|&g| 12 * g - 6 >= 8 * n + 8);
        let ceiling = Some((4 * n + 7 + 5).div_euclid(6));
        if scan != linear || linear != ceiling {
            mismatches.push(json!({ "n": n, "scan": scan, "linear": linear, "ceiling": ceiling }));
        }
    }
    let cert = baykur_hamada(5, 5);
    let cert_ok = match &cert {
        Ok(c) => {
            c.valid
                && (c.ambient.chi, c.ambient.sigma) == (6, 0)
                && c.x1_class.c1_sq == 48
                && c.checks.verdict.margin == 12
                && c.checks.verdict.threshold == "16"
                && c.checks.verdict.obstructed
                && c.checks.verdict.dai_wei_strict
        }
        Err(_) => false,
    };
    let passed = mismatches.is_empty() && cert_ok;
    CriterionOutcome::new(
        7,
        passed,
        format!("{} genus mismatches for n in [5, 50]; (5, 5) certificate as expected: {cert_ok}", mismatches.len()),
        json!({ "mismatches": mismatches, "certificate": cert.ok() }),
    )
}

/// Every target in `|chi| <= 20`, `|sigma| <= 10`.
pub fn enumerator_check() -> CriterionOutcome {
    let mut even = 0;
    let mut bad_even = Vec::new();
    let mut bad_odd = Vec::new();
    for chi in -20..=20i64 {
        for sigma in -10..=10i64 {
            if (chi + sigma) % 2 == 0 {
                even += 1;
                let ok = match enumerate_examples(chi, sigma) {
                    Ok(c) => {
                        c.recompute_ambient() == Ok((chi, sigma)) && c.checks.gluing.holds && c.checks.window.holds
                    }
                    Err(_) => false,
                };
                if !ok {
                    bad_even.push((chi, sigma));
                }
            } else if !matches!(enumerate_examples(chi, sigma), Err(TopologyError::ParityError { .. })) {
                bad_odd.push((chi, sigma));
            }
        }
    }
    let passed = bad_even.is_empty() && bad_odd.is_empty();
    let first: Vec<String> = bad_even.iter().take(4).map(|(c, s)| format!("({c}, {s})")).collect();
    CriterionOutcome::new(
        8,
        passed,
        format!(
            "{} of {even} even targets lack a certificate with both checks true (e.g. {}); {} odd targets without ParityError",
            bad_even.len(),
            first.join(", "),
            bad_odd.len()
        ),
        json!({ "even_targets": even, "failing_even": bad_even, "failing_odd": bad_odd }),
    )
}

/// Dimension formula on seeded inputs against an independent evaluation,
/// and the gluing rules.
pub fn pin2_check(seed: u64) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(seed, 900));
    let mut mismatches = Vec::new();
    for i in 0..20 {
        let sigma = rng.random_range(-20i64..=20);
        let data = PinTwoData {
            b0_l: rng.random_range(0..=3),
            b1_l: rng.random_range(0..=10),
            bplus_l: rng.random_range(0..=10),
            c1_sq_e: sigma + rng.random_range(-40i64..=40),
        };
        // Independent: clear the quarter first, then test divisibility of the whole numerator.
        let whole = data.c1_sq_e - sigma - 4 * (data.b0_l - data.b1_l + data.bplus_l);
        let expected = if whole.rem_euclid(4) == 0 { Some(whole / 4) } else { None };
        let got = pin2_dimension(&data, sigma).ok();
        if got != expected {
            mismatches.push(json!({ "case": i, "data": data, "sigma": sigma, "got": got, "expected": expected }));
        }
    }
    let x1 = ClosedFourManifold::named("K3", 24, -16, 3, 0, true).expect("valid");
    let pieces: Vec<ClosedFourManifold> =
        [standard_piece(StandardKind::S1CrossY, 1), standard_piece(StandardKind::S2CrossSigma, 3)]
            .into_iter()
            .collect::<Result<_, _>>()
            .expect("valid pieces");
    let mut preserved = true;
    for c in [-7i64, 0, 2, 48, 1_000_001] {
        match pin2_gluing(&x1, c, true, &pieces) {
            Ok(g) => preserved &= g.c1_sq == c && g.double_cover_c1_sq == 2 * c,
            Err(_) => preserved = false,
        }
    }
    let small = ClosedFourManifold::named("CP^2", 3, 1, 1, 0, true).expect("valid");
    let rejects = matches!(pin2_gluing(&small, 9, true, &pieces), Err(TopologyError::GluingHypothesisFailed(_)));
    let passed = mismatches.is_empty() && preserved && rejects;
    CriterionOutcome::new(
        9,
        passed,
        format!(
            "{} dimension mismatches on 20 inputs; c1^2 preserved: {preserved}; b+ < 2 rejected: {rejects}",
            mismatches.len()
        ),
        json!({ "mismatches": mismatches, "c1_sq_preserved": preserved, "rejects_small_b_plus": rejects }),
    )
}

/// Criteria 1 to 9 in order.
pub fn run_criteria(config: &SuiteConfig) -> Result<Vec<CriterionOutcome>, String> {
    let set = ProfileSet::build(config)?;
    Ok(vec![
        cusp_exactness(&set),
        oracle_agreement_check(&set, config.oracle_points_per_region),
        constraint_suite(&set),
        poincare_check(&set, config.seed, config.poincare_cases),
        one_form_check(&set, config.seed, config.one_form_cases, config.verify_grid),
        budget_check(),
        baykur_hamada_check(),
        enumerator_check(),
        pin2_check(config.seed),
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteAllReport {
    pub format_version: u32,
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionOutcome>,
}

impl SuiteAllReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn serialize(outcomes: &[CriterionOutcome]) -> String {
    serde_json::to_string(outcomes).expect("outcomes serialize")
}

/// Runs criteria 1 to 9 twice; criterion 10 compares the two serializations byte for byte.
pub fn run_all(config: &SuiteConfig) -> Result<SuiteAllReport, String> {
    let mut first = run_criteria(config)?;
    let second = run_criteria(config)?;
    let (a, b) = (serialize(&first), serialize(&second));
    let same = a == b;
    first.push(CriterionOutcome::new(
        10,
        same,
        format!("two runs with seed {} serialize to {} and {} bytes, identical: {same}", config.seed, a.len(), b.len()),
        json!({ "bytes": a.len(), "identical": same }),
    ));
    let passed = first.iter().all(|c| c.passed);
    Ok(SuiteAllReport { format_version: FORMAT_VERSION, seed: config.seed, passed, criteria: first })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_criteria() {
        assert!(baykur_hamada_check().passed);
        assert!(pin2_check(1).passed);
        assert!(budget_check().passed);
        let e = enumerator_check();
        assert!(e.details["failing_odd"].as_array().unwrap().is_empty());
    }

    #[test]
    fn lines_name_the_criterion() {
        let c = budget_check();
        assert!(c.line().starts_with("criterion 6 (scalar-curvature budgets): PASS: "));
    }
}
