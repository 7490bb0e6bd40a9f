//! Finite-difference curvature of the coordinate metric, independent of the
//! closed-form routines: it only reads metric component values.

use super::{CurvatureReport, GeometryError, WarpedMetric};
use nalgebra::Matrix4;

type Christoffel = [[[f64; 4]; 4]; 4];

/// Raw oracle output with the scale of the cancelling terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOracleOutput {
    pub report: CurvatureReport,
    /// Largest sum of absolute term sizes in any Ricci component, or `II^2`.
    pub term_scale: f64,
    /// Largest `|R(h) - R(h/2)|` over all fields.
    pub richardson_delta: f64,
    /// Largest gap between the `(h, h/2)` and `(h/2, h/4)` extrapolants.
    pub extrapolation_delta: f64,
}

fn metric_matrix<M: WarpedMetric + ?Sized>(metric: &M, t: f64) -> Matrix4<f64> {
    let (phi, psi) = metric.warps(t);
    Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, phi * phi, psi * psi, psi * psi))
}

fn dmetric<M: WarpedMetric + ?Sized>(metric: &M, t: f64, h: f64) -> Matrix4<f64> {
    (metric_matrix(metric, t + h) - metric_matrix(metric, t - h)) / (2.0 * h)
}

/// `Gamma^a_{bc}` for a metric depending on coordinate 0 only.
fn christoffel(ginv: &Matrix4<f64>, dg: &Matrix4<f64>) -> Christoffel {
    let mut gamma = [[[0.0; 4]; 4]; 4];
    let d = |b: usize| if b == 0 { 1.0 } else { 0.0 };
    for (a, ga) in gamma.iter_mut().enumerate() {
        for (b, gab) in ga.iter_mut().enumerate() {
            for (c, gabc) in gab.iter_mut().enumerate() {
                let mut s = 0.0;
                for e in 0..4 {
                    s += ginv[(a, e)] * (d(b) * dg[(e, c)] + d(c) * dg[(e, b)] - d(e) * dg[(b, c)]);
                }
                *gabc = 0.5 * s;
            }
        }
    }
    gamma
}

fn gamma_at<M: WarpedMetric + ?Sized>(metric: &M, t: f64, h: f64) -> Result<Christoffel, GeometryError> {
    let g = metric_matrix(metric, t);
    let ginv = g.try_inverse().ok_or(GeometryError::PinchPoint { t })?;
    Ok(christoffel(&ginv, &dmetric(metric, t, h)))
}

/// One finite-difference evaluation at step `h`; returns the field values and term scale.
fn raw<M: WarpedMetric + ?Sized>(metric: &M, t: f64, h: f64) -> Result<([f64; 10], f64), GeometryError> {
    let g = metric_matrix(metric, t);
    let ginv = g.try_inverse().ok_or(GeometryError::PinchPoint { t })?;
    let dg = dmetric(metric, t, h);
    let gam = christoffel(&ginv, &dg);
    let gp = gamma_at(metric, t + h, h)?;
    let gm = gamma_at(metric, t - h, h)?;
    let mut dgam = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                dgam[a][b][c] = (gp[a][b][c] - gm[a][b][c]) / (2.0 * h);
            }
        }
    }
    // Ric_{bd} = R^a_{bad}, with R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}.
    let mut ric = Matrix4::<f64>::zeros();
    let mut ric_terms = Matrix4::<f64>::zeros();
    let d = |c: usize| if c == 0 { 1.0 } else { 0.0 };
    for b in 0..4 {
        for dd in 0..4 {
            let (mut s, mut abs) = (0.0, 0.0);
            for a in 0..4 {
                let t1 = d(a) * dgam[a][dd][b];
                let t2 = -d(dd) * dgam[a][a][b];
                s += t1 + t2;
                abs += t1.abs() + t2.abs();
                for e in 0..4 {
                    let t3 = gam[a][a][e] * gam[e][dd][b];
                    let t4 = -gam[a][dd][e] * gam[e][a][b];
                    s += t3 + t4;
                    abs += t3.abs() + t4.abs();
                }
            }
            ric[(b, dd)] = s;
            ric_terms[(b, dd)] = abs;
        }
    }
    let mixed = ginv * ric;
    let mixed_terms = ginv.abs() * ric_terms;
    let shape = -0.5 * ginv * dg;
    let (ric_t, ric_theta, ric_torus) = (mixed[(0, 0)], mixed[(1, 1)], mixed[(2, 2)]);
    let scalar = mixed.trace();
    let (ii_theta, ii_torus) = (shape[(1, 1)], shape[(2, 2)]);
    let mean_h = 0.5 * (shape[(1, 1)] + shape[(2, 2)] + shape[(3, 3)]);
    let ii_sq = shape[(1, 1)].powi(2) + shape[(2, 2)].powi(2) + shape[(3, 3)].powi(2);
    let values = [
        ric_t,
        ric_theta,
        ric_torus,
        scalar,
        ii_theta,
        ii_torus,
        mean_h,
        ric_t + ii_sq,
        ric_theta + ii_theta * ii_theta,
        ric_torus + ii_torus * ii_torus,
    ];
    let term_scale = (0..4).map(|i| mixed_terms[(i, i)]).fold(ii_sq, f64::max);
    Ok((values, term_scale))
}

fn report_from(v: [f64; 10]) -> CurvatureReport {
    CurvatureReport {
        ric_t: v[0],
        ric_theta: v[1],
        ric_torus: v[2],
        scalar: v[3],
        ii_theta: v[4],
        ii_torus: v[5],
        mean_h: v[6],
        b_t: v[7],
        b_theta: v[8],
        b_torus: v[9],
    }
}

/// Finite-difference curvature with Richardson extrapolation over `h, h/2`.
///
/// The stencil spans `[t - 2h, t + 2h]`. A third evaluation at `h/4` guards
/// the extrapolation: the `h/4` value should sit within its expected `O(h^2)`
/// error `|R(h) - R(h/2)| / 12` of the extrapolant; more than 10x that is
/// reported as [`GeometryError::OracleFault`].
pub fn fd_curvature_oracle_detailed<M: WarpedMetric + ?Sized>(
    metric: &M,
    t: f64,
    h: f64,
) -> Result<FdOracleOutput, GeometryError> {
    let (lo, hi) = metric.domain();
    if metric.pinched() && t >= hi {
        return Err(GeometryError::PinchPoint { t });
    }
    if !(h > 0.0 && h.is_finite()) || t - 2.0 * h < lo || t + 2.0 * h > hi || (metric.pinched() && t + 2.0 * h >= hi) {
        return Err(GeometryError::StepTooLarge { h, lo: t - 2.0 * h, hi: t + 2.0 * h });
    }
    let (r1, scale) = raw(metric, t, h)?;
    let (r2, _) = raw(metric, t, h / 2.0)?;
    let (r4, _) = raw(metric, t, h / 4.0)?;
    let roundoff = 64.0 * f64::EPSILON / (h / 4.0).powi(2) + 1e-9 * scale;
    let mut out = [0.0; 10];
    let mut delta = 0.0f64;
    let mut ext_delta = 0.0f64;
    for i in 0..10 {
        let d1 = (r1[i] - r2[i]).abs();
        let d2 = (r2[i] - r4[i]).abs();
        if !(r1[i].is_finite() && r2[i].is_finite() && r4[i].is_finite()) {
            return Err(GeometryError::OracleFault { t, detail: format!("{} not finite", CurvatureReport::NAMES[i]) });
        }
        out[i] = (4.0 * r2[i] - r1[i]) / 3.0;
        let gap = (r4[i] - out[i]).abs();
        if gap > 10.0 * d1 / 12.0 + roundoff {
            return Err(GeometryError::OracleFault {
                t,
                detail: format!(
                    "{}: h/4 value is {gap:e} from the extrapolant, expected about {:e} (h/2 -> h/4 step {d2:e})",
                    CurvatureReport::NAMES[i],
                    d1 / 12.0
                ),
            });
        }
        delta = delta.max(d1);
        ext_delta = ext_delta.max((out[i] - (4.0 * r4[i] - r2[i]) / 3.0).abs());
    }
    Ok(FdOracleOutput {
        report: report_from(out),
        term_scale: scale,
        richardson_delta: delta,
        extrapolation_delta: ext_delta,
    })
}

pub fn fd_curvature_oracle<M: WarpedMetric + ?Sized>(
    metric: &M,
    t: f64,
    h: f64,
) -> Result<CurvatureReport, GeometryError> {
    fd_curvature_oracle_detailed(metric, t, h).map(|o| o.report)
}

/// [`fd_curvature_oracle_detailed`] at the suggested step and eight successive
/// halvings; keeps the run whose two extrapolants agree best relative to the
/// term scale. Returns the first error when every step fails.
pub fn fd_curvature_oracle_adaptive<M: WarpedMetric + ?Sized>(
    metric: &M,
    t: f64,
) -> Result<(FdOracleOutput, f64), GeometryError> {
    let h0 = suggested_step(metric, t);
    let mut best: Option<(FdOracleOutput, f64, f64)> = None;
    let mut first_err = None;
    for k in 0..=8 {
        let h = h0 * 0.5f64.powi(k);
        match fd_curvature_oracle_detailed(metric, t, h) {
            Ok(out) => {
                let score = out.extrapolation_delta / out.term_scale.max(f64::MIN_POSITIVE);
                if best.as_ref().is_none_or(|b| score < b.2) {
                    best = Some((out, h, score));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match (best, first_err) {
        (Some((out, h, _)), _) => Ok((out, h)),
        (None, Some(e)) => Err(e),
        (None, None) => unreachable!("at least one step is tried"),
    }
}

/// A step balancing the `(h/L)^4` Richardson truncation against rounding of
/// the stencil abscissae, `eps |t| L / h^2`, at the local feature length `L`:
/// `h = L (40 eps max(|t|, 1) / L)^(1/6)`, capped at `0.4` of the distance to
/// the nearest breakpoint or domain end so the stencil stays in one smooth piece.
///
/// `L` is the smallest of 1, the length of the region holding `t`, and the
/// reciprocal rates `|phi'/phi|`, `|psi'/psi|`, `sqrt|phi''/phi|`, `sqrt|psi''/psi|`.
pub fn suggested_step<M: WarpedMetric + ?Sized>(metric: &M, t: f64) -> f64 {
    let (lo, hi) = metric.domain();
    let mut dist = f64::INFINITY;
    for b in metric.breakpoints().into_iter().chain([lo, hi]) {
        if b.is_finite() {
            dist = dist.min((t - b).abs());
        }
    }
    let mut len = 1.0f64;
    if let Some(r) = metric.regions().into_iter().find(|r| r.t0 <= t && t <= r.t1) {
        len = len.min(r.t1 - r.t0);
    }
    let j = metric.jet(t);
    for rate in [j.p().abs(), j.q().abs(), (j.d2phi / j.phi).abs().sqrt(), (j.d2psi / j.psi).abs().sqrt()] {
        if rate > 0.0 && rate.is_finite() {
            len = len.min(1.0 / rate);
        }
    }
    let s = (40.0 * f64::EPSILON * t.abs().max(1.0) / len).powf(1.0 / 6.0);
    (s * len).min(0.4 * dist)
}

/// Field-by-field comparison of a closed-form report with the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct Agreement {
    pub ok: bool,
    /// Worst `|closed - fd| / max(|closed|, |fd|, term_scale)`.
    pub worst_relative: f64,
    pub worst_field: &'static str,
}

/// Passes when every field satisfies `|c - f| <= max(abs, rel * max(|c|, |f|, term_scale))`.
pub fn oracle_agreement(closed: &CurvatureReport, fd: &FdOracleOutput, rel: f64, abs: f64) -> Agreement {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut worst_field = CurvatureReport::NAMES[0];
    for ((c, f), name) in closed.values().iter().zip(fd.report.values()).zip(CurvatureReport::NAMES) {
        let scale = c.abs().max(f.abs()).max(fd.term_scale);
        let err = (c - f).abs();
        if err > abs.max(rel * scale) {
            ok = false;
        }
        let r = if scale > 0.0 { err / scale } else { err };
        if r > worst {
            worst = r;
            worst_field = name;
        }
    }
    Agreement { ok, worst_relative: worst, worst_field }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{curvature_report, ExactCusp, FlatCap, FlatCrossSection, MetricJet};

    #[test]
    fn hyperbolic_scalar_at_spec_step() {
        let cusp = ExactCusp::new(FlatCrossSection::unit(), 10.0);
        let r = fd_curvature_oracle(&cusp, 1.0, 1e-4).unwrap();
        assert!((r.scalar + 12.0).abs() < 1e-6, "{}", r.scalar);
    }

    #[test]
    fn hyperbolic_all_fields_match_closed_form() {
        let cusp = ExactCusp::new(FlatCrossSection::unit(), 10.0);
        for &t in &[0.5, 2.0, 7.0] {
            let fd = fd_curvature_oracle_detailed(&cusp, t, suggested_step(&cusp, t)).unwrap();
            let closed = curvature_report(&MetricJet::hyperbolic(t)).unwrap();
            let a = oracle_agreement(&closed, &fd, 1e-6, 1e-8);
            assert!(a.ok, "{a:?}");
        }
    }

    #[test]
    fn adaptive_step_never_exceeds_the_suggestion() {
        let cusp = ExactCusp::new(FlatCrossSection::unit(), 10.0);
        for &t in &[0.3, 4.0, 9.5] {
            let (fd, h) = fd_curvature_oracle_adaptive(&cusp, t).unwrap();
            assert!(h <= suggested_step(&cusp, t));
            let closed = curvature_report(&MetricJet::hyperbolic(t)).unwrap();
            let a = oracle_agreement(&closed, &fd, 1e-8, 1e-10);
            assert!(a.ok, "t = {t}: {a:?}");
        }
        let cap = FlatCap { t_start: 0.0, t_end: 1.0, c_level: 0.3, cross: FlatCrossSection::unit() };
        assert!(fd_curvature_oracle_adaptive(&cap, 1.0).is_err());
    }

    #[test]
    fn flat_cap_is_flat() {
        let cap = FlatCap { t_start: 0.0, t_end: 1.0, c_level: 0.3, cross: FlatCrossSection::unit() };
        for &t in &[0.2, 0.5, 0.8] {
            let r = fd_curvature_oracle(&cap, t, suggested_step(&cap, t)).unwrap();
            for v in [r.ric_t, r.ric_theta, r.ric_torus, r.scalar] {
                assert!(v.abs() < 1e-8, "{v}");
            }
        }
    }

    #[test]
    fn stencil_leaving_domain() {
        let cap = FlatCap { t_start: 0.0, t_end: 1.0, c_level: 0.3, cross: FlatCrossSection::unit() };
        assert!(matches!(fd_curvature_oracle(&cap, 0.99, 0.01), Err(GeometryError::StepTooLarge { .. })));
        assert!(matches!(fd_curvature_oracle(&cap, 1.0, 1e-4), Err(GeometryError::PinchPoint { .. })));
        assert!(matches!(fd_curvature_oracle(&cap, 0.5, 0.0), Err(GeometryError::StepTooLarge { .. })));
    }

    struct Kinked;

    impl WarpedMetric for Kinked {
        fn domain(&self) -> (f64, f64) {
            (0.0, 2.0)
        }
        fn pinched(&self) -> bool {
            false
        }
        fn jet(&self, t: f64) -> MetricJet {
            let s = if t < 1.0 { -0.2 } else { 0.2 };
            MetricJet { t, phi: 1.0 + 0.2 * (t - 1.0).abs(), dphi: s, d2phi: 0.0, psi: 1.0, dpsi: 0.0, d2psi: 0.0 }
        }
        fn cross(&self) -> FlatCrossSection {
            FlatCrossSection::unit()
        }
        fn regions(&self) -> Vec<crate::geometry::Region> {
            vec![]
        }
        fn label(&self) -> String {
            "kinked".into()
        }
    }

    #[test]
    fn non_smooth_metric_is_an_oracle_fault() {
        let r = fd_curvature_oracle(&Kinked, 1.0, 1e-3);
        assert!(matches!(r, Err(GeometryError::OracleFault { .. })), "{r:?}");
        assert!(fd_curvature_oracle(&Kinked, 0.5, 1e-3).is_ok());
    }
}
