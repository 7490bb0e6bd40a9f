use super::verify::{verify_with_tolerance, ConstraintReport, Slacks, HARD_TOLERANCE};
use super::{ProfileError, WarpProfile};
use crate::geometry::{FlatCrossSection, WarpedMetric};
use rayon::prelude::*;
use serde::Serialize;

/// Search budget and tolerances for [`build`] and [`search`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuilderOptions {
    /// First transition width; halved once per iteration.
    pub epsilon0: f64,
    pub max_iterations: usize,
    /// Bridge samples per candidate during the search.
    pub search_points: usize,
    /// Grid size of the final verification.
    pub verify_grid: usize,
    pub tolerance: f64,
    pub cross: FlatCrossSection,
}

impl Default for BuilderOptions {
    fn default() -> Self {
        Self {
            epsilon0: 0.1,
            max_iterations: 40,
            search_points: 400,
            verify_grid: 10_000,
            tolerance: HARD_TOLERANCE,
            cross: FlatCrossSection::unit(),
        }
    }
}

/// The least-violating candidate found by the search, with its full report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    #[serde(skip)]
    pub profile: WarpProfile,
    pub report: ConstraintReport,
    pub iterations: usize,
    pub candidates: usize,
    /// Coarse-grid score of the chosen candidate (smallest slack on the bridge and cap).
    pub score: f64,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    epsilon: f64,
    c_frac: f64,
    phi_frac: f64,
    score: f64,
}

/// Smallest constraint slack of a candidate on the bridge and on the cap.
///
/// The exact-cusp part needs no evaluation: there every slack is 0, the
/// Bochner floor is met with equality, and `h = 3/2`.
fn score(p: &WarpProfile, points: usize) -> f64 {
    let a = p.j;
    let b = p.j + p.epsilon;
    let mut worst = 0.0f64;
    for i in 1..points {
        let t = a + (b - a) * i as f64 / points as f64;
        let jet = p.jet(t);
        if !(jet.phi > 0.0 && jet.psi > 0.0 && jet.dphi < 0.0 && jet.dpsi <= 0.0) {
            return f64::NEG_INFINITY;
        }
        match Slacks::from_jet(&jet) {
            Some(s) => worst = worst.min(s.worst().1),
            None => return f64::NEG_INFINITY,
        }
    }
    // On the cap every slack is smallest at its start, r = cap length:
    // a1 = 1/r - 3, h - 3/2 = 1/(2r) - 3/2, the rest are non-negative.
    let r = p.cap_length();
    worst = worst.min(1.0 / r - 3.0).min(0.5 / r - 1.5);
    if worst.is_nan() {
        f64::NEG_INFINITY
    } else {
        worst
    }
}

fn evaluate(j: f64, epsilon: f64, c_frac: f64, phi_frac: f64, opts: &BuilderOptions) -> Candidate {
    let e = (-j).exp();
    let s = match WarpProfile::from_parameters(j, epsilon, phi_frac * e, c_frac * e, opts.cross) {
        Ok(p) => score(&p, opts.search_points),
        Err(_) => f64::NEG_INFINITY,
    };
    Candidate { epsilon, c_frac, phi_frac, score: s }
}

fn best_of(cands: &[Candidate]) -> Candidate {
    cands.iter().copied().fold(cands[0], |b, c| if c.score > b.score { c } else { b })
}

/// One iteration at fixed `epsilon`: a coarse sweep of the cap level and the
/// cap length, then local refinement around the best pair.
fn sweep(j: f64, epsilon: f64, opts: &BuilderOptions) -> (Candidate, usize) {
    let mut grid: Vec<(f64, f64)> = Vec::new();
    let mut c_fracs: Vec<f64> = (0..=10).map(|i| 0.5 + 0.05 * i as f64).collect();
    c_fracs.push(1.0 - epsilon);
    for &c in &c_fracs {
        for k in 1..=20 {
            grid.push((c, 0.05 * k as f64));
        }
    }
    let cands: Vec<Candidate> = grid.par_iter().map(|&(c, p)| evaluate(j, epsilon, c, p, opts)).collect();
    let mut count = cands.len();
    let mut best = best_of(&cands);
    let (mut dc, mut dp) = (0.025, 0.025);
    for _ in 0..4 {
        let local: Vec<(f64, f64)> = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| (a, b)))
            .map(|(a, b)| ((best.c_frac + dc * a as f64).min(1.0), best.phi_frac + dp * b as f64))
            .filter(|&(c, p)| c > 0.0 && p > 0.0 && p <= 1.0)
            .collect();
        let cands: Vec<Candidate> = local.par_iter().map(|&(c, p)| evaluate(j, epsilon, c, p, opts)).collect();
        count += cands.len();
        let b = best_of(&cands);
        if b.score > best.score {
            best = b;
        }
        dc *= 0.5;
        dp *= 0.5;
    }
    (best, count)
}

/// Runs the feasibility search and returns the least-violating candidate.
///
/// Each iteration halves `epsilon` (starting from `epsilon0`) and sweeps the
/// cap level `c_level` up to `e^{-j}(1 - epsilon)` and `e^{-j}` and the cap
/// length up to `e^{-j}`. The search stops early once a candidate passes the
/// full verification.
pub fn search(j: f64, opts: &BuilderOptions) -> Result<SearchOutcome, ProfileError> {
    check_depth(j)?;
    if opts.verify_grid < 2 || opts.search_points < 2 || opts.max_iterations == 0 {
        return Err(ProfileError::UsageError("builder grids need at least 2 points and 1 iteration".into()));
    }
    let mut best: Option<Candidate> = None;
    let mut candidates = 0;
    let mut iterations = 0;
    let mut epsilon = opts.epsilon0;
    for _ in 0..opts.max_iterations {
        iterations += 1;
        let (cand, n) = sweep(j, epsilon, opts);
        candidates += n;
        if best.is_none_or(|b| cand.score > b.score) {
            best = Some(cand);
        }
        if cand.score >= -opts.tolerance {
            let outcome = finish(j, cand, opts, iterations, candidates)?;
            if outcome.report.pass {
                return Ok(outcome);
            }
        }
        epsilon *= 0.5;
    }
    let best = best.filter(|b| b.score.is_finite()).ok_or_else(|| ProfileError::Infeasible {
        j,
        constraint: "positivity".into(),
        t: j,
        slack: f64::NEG_INFINITY,
        best: None,
    })?;
    finish(j, best, opts, iterations, candidates)
}

fn finish(
    j: f64,
    c: Candidate,
    opts: &BuilderOptions,
    iterations: usize,
    candidates: usize,
) -> Result<SearchOutcome, ProfileError> {
    let e = (-j).exp();
    let profile = WarpProfile::from_parameters(j, c.epsilon, c.phi_frac * e, c.c_frac * e, opts.cross)?;
    let report = verify_with_tolerance(&profile, opts.verify_grid, opts.tolerance)?;
    Ok(SearchOutcome { profile, report, iterations, candidates, score: c.score })
}

fn check_depth(j: f64) -> Result<(), ProfileError> {
    if !j.is_finite() || j < 0.0 {
        return Err(ProfileError::BadDepth { j });
    }
    if j < 2.0 {
        let r = (-j).exp();
        if r > 1.0 / 3.0 {
            // A cap of length about e^{-j} starts where t_end - t = e^{-j} > 1/3,
            // and there phi'/phi + 2 psi'/psi = -1/(t_end - t) > -3.
            return Err(ProfileError::Infeasible {
                j,
                constraint: "slack_a1".into(),
                t: j,
                slack: 1.0 / r - 3.0,
                best: None,
            });
        }
        return Err(ProfileError::BadDepth { j });
    }
    Ok(())
}

/// Builds a profile at depth `j` whose verification passes.
///
/// Returns [`ProfileError::Infeasible`] with the most violated constraint of
/// the best candidate when the search budget is exhausted.
pub fn build(j: f64, opts: &BuilderOptions) -> Result<WarpProfile, ProfileError> {
    let outcome = search(j, opts)?;
    if outcome.report.pass {
        return Ok(outcome.profile);
    }
    let w = outcome.report.worst.clone();
    Err(ProfileError::Infeasible { j, constraint: w.constraint, t: w.t, slack: w.slack, best: Some(Box::new(outcome)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> BuilderOptions {
        BuilderOptions { max_iterations: 6, search_points: 100, verify_grid: 2000, ..Default::default() }
    }

    #[test]
    fn shallow_depths() {
        match build(0.5, &quick()) {
            Err(ProfileError::Infeasible { constraint, slack, .. }) => {
                assert_eq!(constraint, "slack_a1");
                assert!((slack - (0.5f64.exp() - 3.0)).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(build(1.5, &quick()), Err(ProfileError::BadDepth { .. })));
        assert!(matches!(build(f64::NAN, &quick()), Err(ProfileError::BadDepth { .. })));
    }

    #[test]
    fn search_is_deterministic() {
        let a = search(2.0, &quick()).unwrap();
        let b = search(2.0, &quick()).unwrap();
        assert_eq!(a.profile, b.profile);
        assert_eq!(a.report, b.report);
    }

    #[test]
    fn search_respects_structure() {
        for j in [2.0, 6.0] {
            let out = search(j, &quick()).unwrap();
            let p = &out.profile;
            let e = (-j).exp();
            assert!(p.cap_length() <= e && p.c_level > 0.0 && p.c_level <= e);
            assert_eq!(p.jet(p.t_end).phi, 0.0);
            assert_eq!(p.jet(p.t_end).dphi, -1.0);
            assert!(out.report.phi_decreasing && out.report.psi_nonincreasing);
        }
    }

    #[test]
    fn coarse_score_agrees_with_verifier() {
        let out = search(2.0, &quick()).unwrap();
        let worst = out.report.worst.slack;
        assert!((out.score - worst).abs() <= 0.05 * worst.abs().max(1.0), "{} vs {}", out.score, worst);
    }
}
