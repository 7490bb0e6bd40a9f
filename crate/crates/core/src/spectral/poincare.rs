use super::{SpectralError, TestFunction};
use crate::geometry::{volume_density, MetricJet, WarpedMetric};
use crate::quadrature::{integrate, Integral, QuadratureOptions};
use serde::Serialize;

const INFIMUM_GRID: usize = 4000;

fn mean_h(jet: &MetricJet) -> f64 {
    -0.5 * (jet.p() + 2.0 * jet.q())
}

/// Infimum of the mean curvature on `[t0, t1]`: grid minimum refined by a
/// golden-section search on the bracketing cells.
pub fn mean_curvature_infimum<M: WarpedMetric + ?Sized>(
    metric: &M,
    t0: f64,
    t1: f64,
) -> Result<(f64, f64), SpectralError> {
    let (lo, hi) = metric.domain();
    if !(t0 >= lo && t1 > t0 && t1 <= hi) || (metric.pinched() && t1 >= hi) {
        return Err(SpectralError::UsageError(format!("[{t0}, {t1}] is not an interior range of [{lo}, {hi}]")));
    }
    let mut ts: Vec<f64> = (0..=INFIMUM_GRID).map(|i| t0 + (t1 - t0) * i as f64 / INFIMUM_GRID as f64).collect();
    ts.extend(metric.breakpoints().into_iter().filter(|&b| b > t0 && b < t1));
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let h = |t: f64| mean_h(&metric.jet(t));
    let values: Vec<f64> = ts.iter().map(|&t| h(t)).collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(SpectralError::UsageError(format!("mean curvature is not finite at t = {}", ts[i])));
    }
    let k = (0..values.len()).fold(0, |b, i| if values[i] < values[b] { i } else { b });
    let (mut best_t, mut best) = (ts[k], values[k]);
    for (a, b) in [(k.saturating_sub(1), k), (k, (k + 1).min(ts.len() - 1))] {
        if a == b {
            continue;
        }
        let (t, v) = golden_min(&h, ts[a], ts[b]);
        if v < best {
            best = v;
            best_t = t;
        }
    }
    Ok((best, best_t))
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let mut best = if fc < fd { (c, fc) } else { (d, fd) };
    for t in [a, b] {
        let v = f(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    best
}

/// Both sides of the weighted Poincaré inequality for one test function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoincareResult {
    pub h0: f64,
    pub truncation: f64,
    /// `(1/h0) int_0^T |f'|^2 dvol`.
    pub lhs: f64,
    /// `h0 int_0^T |f|^2 dvol + int_{t=T} |f|^2 - int_{t=0} |f|^2`.
    pub rhs: f64,
    pub boundary_start: f64,
    pub boundary_end: f64,
    pub error: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl PoincareResult {
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// Checks the weighted Poincaré inequality on `[0, T]` with `h0` the infimum
/// of the mean curvature there. Each boundary term uses its own slice volume.
pub fn poincare_function_test<M: WarpedMetric + ?Sized>(
    metric: &M,
    f: &TestFunction,
    truncation: f64,
    opts: &QuadratureOptions,
) -> Result<PoincareResult, SpectralError> {
    let (lo, _) = metric.domain();
    let (h0, _) = mean_curvature_infimum(metric, lo, truncation)?;
    poincare_with_h0(metric, f, truncation, h0, opts)
}

/// As [`poincare_function_test`] with a caller-supplied constant `h0`.
pub fn poincare_with_h0<M: WarpedMetric + ?Sized>(
    metric: &M,
    f: &TestFunction,
    truncation: f64,
    h0: f64,
    opts: &QuadratureOptions,
) -> Result<PoincareResult, SpectralError> {
    if !(h0 > 0.0) {
        return Err(SpectralError::NonPositiveMeanCurvature { h0 });
    }
    let (lo, hi) = metric.domain();
    if !(truncation > lo && truncation <= hi) || (metric.pinched() && truncation >= hi) {
        return Err(SpectralError::UsageError(format!("truncation {truncation} must lie in ({lo}, {hi})")));
    }
    let cross = metric.cross();
    let breaks = metric.breakpoints();
    let rho = |t: f64| volume_density(&metric.jet(t), &cross);
    let grad: Integral = integrate(
        |t| {
            let d = f.eval(t).1;
            d * d * rho(t)
        },
        lo,
        truncation,
        &breaks,
        opts,
    )?;
    let mass: Integral = integrate(
        |t| {
            let v = f.eval(t).0;
            v * v * rho(t)
        },
        lo,
        truncation,
        &breaks,
        opts,
    )?;
    let boundary = |t: f64| {
        let v = f.eval(t).0;
        v * v * rho(t)
    };
    let boundary_start = boundary(lo);
    let boundary_end = boundary(truncation);
    let lhs = grad.value / h0;
    let rhs = h0 * mass.value + boundary_end - boundary_start;
    let error = grad.error / h0 + h0 * mass.error;
    let tolerance = 1e-9 * lhs.abs().max(rhs.abs()).max(1.0) + error;
    Ok(PoincareResult {
        h0,
        truncation,
        lhs,
        rhs,
        boundary_start,
        boundary_end,
        error,
        tolerance,
        holds: lhs >= rhs - tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ExactCusp, FlatCrossSection};
    use crate::profile::{search, BuilderOptions};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cusp() -> ExactCusp {
        ExactCusp::infinite(FlatCrossSection::unit())
    }

    #[test]
    fn constant_function_closed_form() {
        let opts = QuadratureOptions::default();
        for t in [0.5, 1.0, 3.0, 7.0] {
            let r = poincare_function_test(&cusp(), &TestFunction::constant(1.0, (0.0, t)), t, &opts).unwrap();
            let e = (-3.0 * t).exp();
            let expected = 1.5 * (1.0 - e) / 3.0 + e - 1.0;
            assert_eq!(r.lhs, 0.0);
            assert!((r.rhs - expected).abs() <= 1e-8, "{} vs {expected}", r.rhs);
            assert!(r.holds && r.rhs < 0.0);
        }
    }

    #[test]
    fn constant_function_rhs_is_monotone_in_truncation() {
        let opts = QuadratureOptions::default();
        let mut prev = f64::INFINITY;
        for k in 1..=20 {
            let t = 0.25 * k as f64;
            let r = poincare_function_test(&cusp(), &TestFunction::constant(1.0, (0.0, t)), t, &opts).unwrap();
            assert!(r.rhs <= prev);
            prev = r.rhs;
        }
    }

    #[test]
    fn exponential_is_the_equality_case() {
        let opts = QuadratureOptions::default();
        for t in [1.0, 2.5, 6.0] {
            let r = poincare_function_test(&cusp(), &TestFunction::exponential(1.0, 1.5, (0.0, t)), t, &opts).unwrap();
            assert_eq!(r.h0, 1.5);
            assert!((r.lhs - 1.5 * t).abs() <= 1e-8 * r.lhs.max(1.0));
            assert!((r.lhs - r.rhs).abs() <= 1e-8 * r.lhs.max(1.0), "{} vs {}", r.lhs, r.rhs);
            assert!(r.holds);
        }
    }

    #[test]
    fn zero_function_holds_trivially() {
        let r = poincare_function_test(&cusp(), &TestFunction::zero((0.0, 2.0)), 2.0, &QuadratureOptions::default())
            .unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (0.0, 0.0, true));
    }

    /// lhs - rhs = int [(f'/sqrt(h0) - sqrt(h0) f)^2 + 2 (h - h0) f^2] dvol,
    /// integrated independently on a plain trapezoid grid.
    fn margin_oracle<M: WarpedMetric>(m: &M, f: &TestFunction, t1: f64, h0: f64) -> f64 {
        let n = 200_000;
        let cross = m.cross();
        let g = |t: f64| {
            let jet = m.jet(t);
            let (v, d) = f.eval(t);
            let s = d / h0.sqrt() - h0.sqrt() * v;
            (s * s + 2.0 * (mean_h(&jet) - h0) * v * v) * volume_density(&jet, &cross)
        };
        let dt = t1 / n as f64;
        (0..=n).map(|i| g(i as f64 * dt) * if i == 0 || i == n { 0.5 } else { 1.0 }).sum::<f64>() * dt
    }

    #[test]
    fn margin_matches_the_completed_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let opts = QuadratureOptions::default();
        let p = search(
            2.0,
            &BuilderOptions { max_iterations: 4, search_points: 100, verify_grid: 2000, ..Default::default() },
        )
        .unwrap()
        .profile;
        let t1 = p.j + p.epsilon;
        for _ in 0..5 {
            let f = TestFunction::random_fourier(&mut rng, (0.0, t1), 8, false);
            let r = poincare_function_test(&p, &f, t1, &opts).unwrap();
            let oracle = margin_oracle(&p, &f, t1, r.h0);
            assert!((r.margin() - oracle).abs() <= 1e-6 * oracle.abs().max(1e-3), "{} vs {oracle}", r.margin());
            assert!(r.holds && oracle >= 0.0);
        }
    }

    #[test]
    fn infimum_finds_the_dip() {
        let p = search(
            2.0,
            &BuilderOptions { max_iterations: 4, search_points: 100, verify_grid: 2000, ..Default::default() },
        )
        .unwrap()
        .profile;
        let (h0, t) = mean_curvature_infimum(&p, 0.0, p.j + p.epsilon).unwrap();
        assert!(h0 < 1.5 && t > p.j);
        for i in 0..=1000 {
            let s = p.j + p.epsilon * i as f64 / 1000.0;
            assert!(mean_h(&p.jet(s)) >= h0 - 1e-12);
        }
    }

    #[test]
    fn bad_inputs() {
        let opts = QuadratureOptions::default();
        let f = TestFunction::constant(1.0, (0.0, 1.0));
        assert!(matches!(
            poincare_with_h0(&cusp(), &f, 1.0, 0.0, &opts),
            Err(SpectralError::NonPositiveMeanCurvature { .. })
        ));
        assert!(matches!(poincare_function_test(&cusp(), &f, -1.0, &opts), Err(SpectralError::UsageError(_))));
    }
}
