use super::{mean_curvature_infimum, one_form_test, poincare_with_h0, InvariantOneForm, SpectralError, TestFunction};
use crate::geometry::WarpedMetric;
use crate::profile::uniform_window;
use crate::quadrature::QuadratureOptions;
use crate::FORMAT_VERSION;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

/// Largest number of Fourier modes in random test families.
pub const MAX_MODES: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub index: usize,
    pub inputs: Value,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub cases: usize,
    pub violations: usize,
    /// Smallest `lhs - rhs` over all cases that evaluated.
    pub min_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub format_version: u32,
    pub suite: String,
    pub profile_ref: String,
    pub seed: u64,
    pub parameters: Value,
    pub cases: Vec<CaseRecord>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    fn new(suite: &str, profile_ref: &str, seed: u64, parameters: Value, cases: Vec<CaseRecord>) -> Self {
        let violations = cases.iter().filter(|c| !c.holds).count();
        let min_margin = cases
            .iter()
            .filter(|c| c.error.is_none())
            .map(|c| c.lhs - c.rhs)
            .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))));
        let summary = SuiteSummary { cases: cases.len(), violations, min_margin };
        Self {
            format_version: FORMAT_VERSION,
            suite: suite.into(),
            profile_ref: profile_ref.into(),
            seed,
            parameters,
            cases,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite reports serialize")
    }
}

fn failed(index: usize, inputs: Value, e: SpectralError) -> CaseRecord {
    CaseRecord { index, inputs, lhs: f64::NAN, rhs: f64::NAN, holds: false, error: Some(e.to_string()) }
}

/// `cases` seeded test functions on `[t_start, T]`: bare Fourier sums,
/// bumped Fourier sums and polynomials in turn.
pub fn poincare_suite<M: WarpedMetric + ?Sized>(
    metric: &M,
    profile_ref: &str,
    seed: u64,
    cases: usize,
    truncation: f64,
    opts: &QuadratureOptions,
) -> Result<SuiteReport, SpectralError> {
    let (lo, _) = metric.domain();
    let (h0, h0_t) = mean_curvature_infimum(metric, lo, truncation)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support = (lo, truncation);
    let fs: Vec<TestFunction> = (0..cases)
        .map(|i| match i % 3 {
            0 => TestFunction::random_fourier(&mut rng, support, MAX_MODES, false),
            1 => TestFunction::random_fourier(&mut rng, support, MAX_MODES, true),
            _ => TestFunction::random_polynomial(&mut rng, support, 6, false),
        })
        .collect();
    let records: Vec<CaseRecord> = fs
        .par_iter()
        .enumerate()
        .map(|(i, f)| {
            let inputs = json!({ "f": f });
            match poincare_with_h0(metric, f, truncation, h0, opts) {
                Ok(r) => CaseRecord { index: i, inputs, lhs: r.lhs, rhs: r.rhs, holds: r.holds, error: None },
                Err(e) => failed(i, inputs, e),
            }
        })
        .collect();
    let parameters = json!({ "truncation": truncation, "h0": h0, "h0_at": h0_t });
    Ok(SuiteReport::new("poincare", profile_ref, seed, parameters, records))
}

/// `cases` seeded invariant forms, each supported in a random subinterval of
/// the longest uniform window; `lhs = energy`, `rhs = mass / 4`.
pub fn one_form_suite<M: WarpedMetric + ?Sized>(
    metric: &M,
    profile_ref: &str,
    seed: u64,
    cases: usize,
    grid_n: usize,
    opts: &QuadratureOptions,
) -> Result<SuiteReport, SpectralError> {
    let windows = uniform_window(metric, grid_n, 1e-9).map_err(|e| SpectralError::UsageError(e.to_string()))?;
    let &(w0, w1) = windows
        .iter()
        .max_by(|a, b| (a.1 - a.0).total_cmp(&(b.1 - b.0)))
        .ok_or_else(|| SpectralError::SupportError { t1: f64::NAN, t2: f64::NAN, windows: vec![] })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms: Vec<InvariantOneForm> = (0..cases)
        .map(|_| {
            let len = (w1 - w0) * rng.random_range(0.05..1.0);
            let a = w0 + (w1 - w0 - len) * rng.random_range(0.0..1.0);
            let s = (a, a + len);
            InvariantOneForm {
                support: s,
                f: TestFunction::random_fourier(&mut rng, s, MAX_MODES, true),
                f1: TestFunction::random_fourier(&mut rng, s, MAX_MODES, true),
                f2: TestFunction::random_fourier(&mut rng, s, MAX_MODES, true),
            }
        })
        .collect();
    let records: Vec<CaseRecord> = forms
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let inputs = json!({ "alpha": a });
            match one_form_test(metric, a, &windows, opts) {
                Ok(r) => CaseRecord {
                    index: i,
                    inputs: json!({
                        "alpha": a,
                        "ratio": r.ratio,
                        "adjoint_gap_functions": r.functions.relative_gap,
                        "adjoint_gap_two_forms": r.two_forms.relative_gap,
                    }),
                    lhs: r.energy,
                    rhs: 0.25 * r.mass,
                    holds: r.holds,
                    error: None,
                },
                Err(e) => failed(i, inputs, e),
            }
        })
        .collect();
    let parameters = json!({ "grid_n": grid_n, "windows": windows, "chosen_window": [w0, w1] });
    Ok(SuiteReport::new("one_form", profile_ref, seed, parameters, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ExactCusp, FlatCrossSection};

    #[test]
    fn suites_are_deterministic_and_pass_on_the_cusp() {
        let m = ExactCusp::new(FlatCrossSection::unit(), 8.0);
        let opts = QuadratureOptions::default();
        let a = poincare_suite(&m, "cusp", 9, 12, 4.0, &opts).unwrap();
        let b = poincare_suite(&m, "cusp", 9, 12, 4.0, &opts).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed() && a.summary.cases == 12);
        let c = one_form_suite(&m, "cusp", 9, 6, 500, &opts).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        assert_eq!(c.to_json(), one_form_suite(&m, "cusp", 9, 6, 500, &opts).unwrap().to_json());
        assert_ne!(a.to_json(), poincare_suite(&m, "cusp", 10, 12, 4.0, &opts).unwrap().to_json());
    }
}
