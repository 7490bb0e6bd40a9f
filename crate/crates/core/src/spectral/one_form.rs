use super::{SpectralError, TestFunction};
use crate::geometry::{volume_density, MetricJet, WarpedMetric};
use crate::quadrature::{integrate, QuadratureOptions};
use serde::{Deserialize, Serialize};

/// Required agreement of the integration-by-parts self-tests.
pub const ADJOINT_TOLERANCE: f64 = 1e-6;
/// Allowed shortfall of `energy / mass` below `1/4`.
pub const ONE_FORM_TOLERANCE: f64 = 1e-6;

/// A `T^3`-invariant 1-form `f dt + f1 dtheta + f2 dx` supported in `support`.
///
/// Components are evaluated as given; callers pass bumped test functions so
/// that they vanish at the ends of the support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantOneForm {
    pub support: (f64, f64),
    pub f: TestFunction,
    pub f1: TestFunction,
    pub f2: TestFunction,
}

/// An invariant 2-form `b1 dt^dtheta + b2 dt^dx`, used only to test `d*`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantTwoForm {
    pub b1: TestFunction,
    pub b2: TestFunction,
}

impl InvariantOneForm {
    pub fn zero(support: (f64, f64)) -> Self {
        let z = TestFunction::zero(support);
        Self { support, f: z.clone(), f1: z.clone(), f2: z }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.f1.is_zero() && self.f2.is_zero()
    }
}

/// Pointwise reduced quantities of an invariant form.
struct Local {
    norm_sq: f64,
    d_norm_sq: f64,
    codiff: f64,
}

fn local(jet: &MetricJet, a: &InvariantOneForm, t: f64) -> Local {
    let (f, df) = a.f.eval(t);
    let (f1, df1) = a.f1.eval(t);
    let (f2, df2) = a.f2.eval(t);
    let (p2, s2) = (jet.phi * jet.phi, jet.psi * jet.psi);
    let two_h = -(jet.p() + 2.0 * jet.q());
    Local {
        norm_sq: f * f + f1 * f1 / p2 + f2 * f2 / s2,
        d_norm_sq: df1 * df1 / p2 + df2 * df2 / s2,
        codiff: -df + two_h * f,
    }
}

/// `d* alpha = -f' + 2 h f` for the form `f dt`.
pub fn codifferential(jet: &MetricJet, a: &InvariantOneForm) -> f64 {
    local(jet, a, jet.t).codiff
}

/// Components `(theta, x)` of `d* beta`; the `dt` component vanishes.
pub fn codifferential_two(jet: &MetricJet, b: &InvariantTwoForm) -> (f64, f64) {
    let (b1, db1) = b.b1.eval(jet.t);
    let (b2, db2) = b.b2.eval(jet.t);
    let (p, q) = (jet.p(), jet.q());
    (-(db1 + b1 * (2.0 * q - p)), -(db2 + b2 * p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdjointCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs|` over the Cauchy-Schwarz bound of either pairing.
    pub relative_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneFormResult {
    /// `int |d alpha|^2 + |d* alpha|^2 dvol`.
    pub energy: f64,
    /// `int |alpha|^2 dvol`.
    pub mass: f64,
    /// `energy / mass`; `None` for the zero form.
    pub ratio: Option<f64>,
    pub functions: AdjointCheck,
    pub two_forms: AdjointCheck,
    pub holds: bool,
}

fn window_contains(windows: &[(f64, f64)], support: (f64, f64)) -> bool {
    windows.iter().any(|&(a, b)| a <= support.0 && support.1 <= b)
}

fn check_support<M: WarpedMetric + ?Sized>(
    metric: &M,
    support: (f64, f64),
    windows: &[(f64, f64)],
) -> Result<(), SpectralError> {
    let (lo, hi) = metric.domain();
    let (a, b) = support;
    if !(a < b && a >= lo && b <= hi) || !window_contains(windows, support) {
        return Err(SpectralError::SupportError { t1: a, t2: b, windows: windows.to_vec() });
    }
    Ok(())
}

fn integrate_support<M, G>(
    metric: &M,
    support: (f64, f64),
    g: G,
    opts: &QuadratureOptions,
) -> Result<f64, SpectralError>
where
    M: WarpedMetric + ?Sized,
    G: Fn(&MetricJet) -> f64,
{
    let cross = metric.cross();
    let h = |t: f64| {
        let jet = metric.jet(t);
        g(&jet) * volume_density(&jet, &cross)
    };
    // Deep in the cusp the weight is tiny; tolerances follow the integrand's size.
    let (a, b) = support;
    let scale = (0..=64).map(|i| h(a + (b - a) * i as f64 / 64.0).abs()).fold(0.0, f64::max) * (b - a);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let local = QuadratureOptions { abs_tol: opts.abs_tol.min(1e-12 * scale), ..*opts };
    Ok(integrate(h, a, b, &metric.breakpoints(), &local)?.value)
}

/// `<du, alpha>` against `<u, d* alpha>` on the support of `alpha`.
pub fn function_adjointness<M: WarpedMetric + ?Sized>(
    metric: &M,
    u: &TestFunction,
    a: &InvariantOneForm,
    opts: &QuadratureOptions,
) -> Result<AdjointCheck, SpectralError> {
    let s = a.support;
    let lhs = integrate_support(metric, s, |j| u.eval(j.t).1 * a.f.eval(j.t).0, opts)?;
    let rhs = integrate_support(metric, s, |j| u.eval(j.t).0 * codifferential(j, a), opts)?;
    let du = integrate_support(metric, s, |j| u.eval(j.t).1.powi(2), opts)?;
    let uu = integrate_support(metric, s, |j| u.eval(j.t).0.powi(2), opts)?;
    let ff = integrate_support(metric, s, |j| a.f.eval(j.t).0.powi(2), opts)?;
    let cc = integrate_support(metric, s, |j| codifferential(j, a).powi(2), opts)?;
    let bound = (du * ff).sqrt().max((uu * cc).sqrt());
    Ok(gap(lhs, rhs, bound))
}

/// `<d alpha, beta>` against `<alpha, d* beta>` on the support of `alpha`.
pub fn two_form_adjointness<M: WarpedMetric + ?Sized>(
    metric: &M,
    a: &InvariantOneForm,
    b: &InvariantTwoForm,
    opts: &QuadratureOptions,
) -> Result<AdjointCheck, SpectralError> {
    let s = a.support;
    let pair = |j: &MetricJet, x: (f64, f64), y: (f64, f64)| x.0 * y.0 / (j.phi * j.phi) + x.1 * y.1 / (j.psi * j.psi);
    let da = |j: &MetricJet| (a.f1.eval(j.t).1, a.f2.eval(j.t).1);
    let al = |j: &MetricJet| (a.f1.eval(j.t).0, a.f2.eval(j.t).0);
    let be = |j: &MetricJet| (b.b1.eval(j.t).0, b.b2.eval(j.t).0);
    let lhs = integrate_support(metric, s, |j| pair(j, da(j), be(j)), opts)?;
    let rhs = integrate_support(metric, s, |j| pair(j, al(j), codifferential_two(j, b)), opts)?;
    let n_da = integrate_support(metric, s, |j| pair(j, da(j), da(j)), opts)?;
    let n_be = integrate_support(metric, s, |j| pair(j, be(j), be(j)), opts)?;
    let n_al = integrate_support(metric, s, |j| pair(j, al(j), al(j)), opts)?;
    let n_db = integrate_support(
        metric,
        s,
        |j| {
            let d = codifferential_two(j, b);
            pair(j, d, d)
        },
        opts,
    )?;
    let bound = (n_da * n_be).sqrt().max((n_al * n_db).sqrt());
    Ok(gap(lhs, rhs, bound))
}

fn gap(lhs: f64, rhs: f64, bound: f64) -> AdjointCheck {
    let diff = (lhs - rhs).abs();
    let relative_gap = if bound > 0.0 {
        diff / bound
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    AdjointCheck { lhs, rhs, relative_gap }
}

/// Companion test fields for the self-test: bumps on the support of `alpha`
/// with a little structure so the pairings are not degenerate.
fn probes(support: (f64, f64)) -> (TestFunction, InvariantTwoForm) {
    use super::testfn::TestKind;
    let fourier = |c: f64, a: f64, b: f64| TestFunction {
        kind: TestKind::Fourier { constant: c, cos: vec![a], sin: vec![b] },
        support,
        bump: true,
    };
    (fourier(1.0, 0.5, -0.25), InvariantTwoForm { b1: fourier(0.5, -1.0, 0.75), b2: fourier(-0.75, 0.25, 1.0) })
}

/// Energy, mass and the `1/4` estimate for an invariant form supported in one
/// of the uniform windows. Both adjointness self-tests run first.
pub fn one_form_test<M: WarpedMetric + ?Sized>(
    metric: &M,
    a: &InvariantOneForm,
    windows: &[(f64, f64)],
    opts: &QuadratureOptions,
) -> Result<OneFormResult, SpectralError> {
    check_support(metric, a.support, windows)?;
    let (u, b) = probes(a.support);
    let functions = function_adjointness(metric, &u, a, opts)?;
    let two_forms = two_form_adjointness(metric, a, &b, opts)?;
    for (name, c) in [("functions", functions), ("two-forms", two_forms)] {
        if !(c.relative_gap <= ADJOINT_TOLERANCE) {
            return Err(SpectralError::AdjointnessFault {
                pairing: name.into(),
                lhs: c.lhs,
                rhs: c.rhs,
                relative_gap: c.relative_gap,
            });
        }
    }
    let t = |j: &MetricJet| local(j, a, j.t);
    let energy = integrate_support(
        metric,
        a.support,
        |j| {
            let l = t(j);
            l.d_norm_sq + l.codiff * l.codiff
        },
        opts,
    )?;
    let mass = integrate_support(metric, a.support, |j| t(j).norm_sq, opts)?;
    let ratio = (mass > 0.0).then(|| energy / mass);
    let holds = match ratio {
        Some(r) => r >= 0.25 - ONE_FORM_TOLERANCE,
        None => true,
    };
    Ok(OneFormResult { energy, mass, ratio, functions, two_forms, holds })
}
