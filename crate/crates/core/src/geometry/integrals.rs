use super::{scalar, FlatCrossSection, GeometryError, MetricJet, WarpedMetric};
use crate::quadrature::{integrate, integrate_to_infinity, Integral, QuadratureOptions};

/// Volume density `v3 * phi * psi^2` of the metric with respect to `dt`.
pub fn volume_density(jet: &MetricJet, cross: &FlatCrossSection) -> f64 {
    cross.v3 * jet.phi * jet.psi * jet.psi
}

fn check_range<M: WarpedMetric + ?Sized>(metric: &M, t0: f64, t1: f64) -> Result<(), GeometryError> {
    let (lo, hi) = metric.domain();
    for t in [t0, t1] {
        if !(t >= lo && t <= hi) {
            return Err(GeometryError::OutOfDomain { t, lo, hi });
        }
    }
    if t1 < t0 {
        return Err(GeometryError::OutOfDomain { t: t1, lo: t0, hi });
    }
    Ok(())
}

/// Integrates `g(jet) dt` over `[t0, t1]`, splitting at the metric's breakpoints.
pub(crate) fn integrate_jet<M, G>(
    metric: &M,
    t0: f64,
    t1: f64,
    g: G,
    opts: &QuadratureOptions,
) -> Result<Integral, GeometryError>
where
    M: WarpedMetric + ?Sized,
    G: Fn(&MetricJet) -> f64,
{
    check_range(metric, t0, t1)?;
    let breaks = metric.breakpoints();
    let f = |t: f64| g(&metric.jet(t));
    if t1.is_infinite() {
        Ok(integrate_to_infinity(f, t0, &breaks, opts)?)
    } else {
        Ok(integrate(f, t0, t1, &breaks, opts)?)
    }
}

/// `v3 * int_{t0}^{t1} phi psi^2 dt`; `t1` may be infinite on a cusp.
pub fn cusp_volume<M: WarpedMetric + ?Sized>(
    metric: &M,
    t0: f64,
    t1: f64,
    opts: &QuadratureOptions,
) -> Result<Integral, GeometryError> {
    let cross = metric.cross();
    integrate_jet(metric, t0, t1, |j| volume_density(j, &cross), opts)
}

/// `v3 * int_{t0}^{t1} s^2 phi psi^2 dt`.
pub fn scalar_budget<M: WarpedMetric + ?Sized>(
    metric: &M,
    t0: f64,
    t1: f64,
    opts: &QuadratureOptions,
) -> Result<Integral, GeometryError> {
    let cross = metric.cross();
    integrate_jet(
        metric,
        t0,
        t1,
        |j| match scalar(j) {
            Ok(s) => s * s * volume_density(j, &cross),
            Err(_) => f64::NAN,
        },
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ExactCusp, FlatCap};

    #[test]
    fn exact_cusp_volume_and_budget() {
        let cusp = ExactCusp::infinite(FlatCrossSection::unit());
        let opts = QuadratureOptions::default();
        let v = cusp_volume(&cusp, 0.0, f64::INFINITY, &opts).unwrap();
        assert!((v.value - 1.0 / 3.0).abs() <= 1e-10 + v.error, "{v:?}");
        let b = scalar_budget(&cusp, 0.0, f64::INFINITY, &opts).unwrap();
        assert!((b.value - 48.0).abs() <= 1e-8, "{b:?}");
    }

    #[test]
    fn flat_cap_volume_is_triangular() {
        let (len, c) = (0.4, 0.2);
        let cap = FlatCap { t_start: 1.0, t_end: 1.0 + len, c_level: c, cross: FlatCrossSection::unit() };
        let opts = QuadratureOptions::default();
        let v = cusp_volume(&cap, 1.0, 1.0 + len, &opts).unwrap();
        assert!((v.value - c * c * len * len / 2.0).abs() < 1e-14);
        let b = scalar_budget(&cap, 1.0, 1.0 + len, &opts).unwrap();
        assert_eq!(b.value, 0.0);
    }

    #[test]
    fn range_outside_domain_is_rejected() {
        let cusp = ExactCusp::new(FlatCrossSection::unit(), 5.0);
        let r = cusp_volume(&cusp, 0.0, 6.0, &QuadratureOptions::default());
        assert!(matches!(r, Err(GeometryError::OutOfDomain { .. })));
    }
}
