use super::SpectralError;
use crate::geometry::{cusp_volume, scalar, scalar_budget, RegionKind, WarpedMetric};
use crate::quadrature::QuadratureOptions;
use serde::Serialize;
use std::f64::consts::PI;

/// Budget contribution of one region of the profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionBudget {
    pub kind: RegionKind,
    pub t0: f64,
    pub t1: f64,
    pub l4: f64,
    pub volume: f64,
}

/// Scalar-curvature budgets on `[t_start, T]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetReport {
    pub truncation: f64,
    /// `sup s_-`, the pointwise bound on `|phi|^2`.
    pub sup_phi_sq: f64,
    /// `int s^2 dvol`.
    pub l4_budget: f64,
    /// `l4_budget / 8`.
    pub fplus_budget: f64,
    /// `3 * daiwei_rhs`, i.e. `(1/32 pi^2) int s^2 dvol`.
    pub lebrun_lhs: f64,
    /// `(1/96 pi^2) int s^2 dvol`.
    pub daiwei_rhs: f64,
    pub volume: f64,
    pub error: f64,
    pub regions: Vec<RegionBudget>,
}

impl BudgetReport {
    fn from_l4(truncation: f64, sup_phi_sq: f64, l4: f64, volume: f64, error: f64, regions: Vec<RegionBudget>) -> Self {
        let daiwei_rhs = l4 / (96.0 * PI * PI);
        Self {
            truncation,
            sup_phi_sq,
            l4_budget: l4,
            fplus_budget: l4 / 8.0,
            lebrun_lhs: 3.0 * daiwei_rhs,
            daiwei_rhs,
            volume,
            error,
            regions,
        }
    }
}

const SUP_GRID: usize = 4000;

/// Budgets of the metric on `[t_start, T]`. `T` may be infinite on an
/// unbounded cusp and may equal the pinch on a capped profile.
pub fn sw_budgets<M: WarpedMetric + ?Sized>(
    metric: &M,
    truncation: f64,
    opts: &QuadratureOptions,
) -> Result<BudgetReport, SpectralError> {
    let (lo, hi) = metric.domain();
    if !(truncation > lo && truncation <= hi) {
        return Err(SpectralError::UsageError(format!("truncation {truncation} must lie in ({lo}, {hi}]")));
    }
    let mut regions = Vec::new();
    let (mut l4, mut volume, mut error) = (0.0, 0.0, 0.0);
    let mut sup = 0.0f64;
    for r in metric.regions() {
        if r.t0 >= truncation {
            break;
        }
        let t1 = r.t1.min(truncation);
        let b = scalar_budget(metric, r.t0, t1, opts)?;
        let v = cusp_volume(metric, r.t0, t1, opts)?;
        l4 += b.value;
        volume += v.value;
        error += b.error;
        regions.push(RegionBudget { kind: r.kind, t0: r.t0, t1, l4: b.value, volume: v.value });
        let end = if t1.is_finite() { t1 } else { r.t0 + 1.0 };
        for i in 0..=SUP_GRID {
            let t = r.t0 + (end - r.t0) * i as f64 / SUP_GRID as f64;
            if t < truncation {
                sup = sup.max(-scalar(&metric.jet(t))?);
            }
        }
    }
    Ok(BudgetReport::from_l4(truncation, sup, l4, volume, error, regions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ExactCusp, FlatCap, FlatCrossSection};
    use crate::profile::{search, BuilderOptions};

    #[test]
    fn exact_cusp_budgets() {
        let r =
            sw_budgets(&ExactCusp::infinite(FlatCrossSection::unit()), f64::INFINITY, &QuadratureOptions::default())
                .unwrap();
        assert!((r.l4_budget - 48.0).abs() <= 1e-8 + r.error);
        assert!((r.volume - 1.0 / 3.0).abs() <= 1e-8);
        assert!((r.sup_phi_sq - 12.0).abs() <= 1e-12);
        assert_eq!(r.fplus_budget * 8.0, r.l4_budget);
        assert_eq!(r.lebrun_lhs, 3.0 * r.daiwei_rhs);
        assert!((r.lebrun_lhs - 48.0 / (32.0 * PI * PI)).abs() < 1e-9);
    }

    #[test]
    fn flat_cap_budgets_vanish() {
        let cap = FlatCap { t_start: 0.0, t_end: 0.3, c_level: 0.5, cross: FlatCrossSection::unit() };
        let r = sw_budgets(&cap, 0.29, &QuadratureOptions::default()).unwrap();
        assert!(r.l4_budget.abs() < 1e-20 && r.sup_phi_sq == 0.0 && r.fplus_budget.abs() < 1e-20);
        assert!(r.volume > 0.0);
        // Up to the pinch: v3 * c^2 * int_0^T (T - t) dt = 0.25 * 0.045.
        let r = sw_budgets(&cap, 0.3, &QuadratureOptions::default()).unwrap();
        assert!((r.volume - 0.25 * 0.045).abs() < 1e-14, "{}", r.volume);
        assert!(sw_budgets(&cap, 0.31, &QuadratureOptions::default()).is_err());
    }

    #[test]
    fn built_profile_budget_splits_by_region() {
        let p = search(
            2.0,
            &BuilderOptions { max_iterations: 4, search_points: 100, verify_grid: 2000, ..Default::default() },
        )
        .unwrap()
        .profile;
        let t = p.j + p.epsilon + 0.5 * p.cap_length();
        let r = sw_budgets(&p, t, &QuadratureOptions::default()).unwrap();
        let cusp = &r.regions[0];
        assert_eq!(cusp.kind, RegionKind::Cusp);
        let exact = 48.0 * (1.0 - (-3.0 * p.j).exp());
        assert!((cusp.l4 - exact).abs() <= 0.05 * exact);
        assert!(r.l4_budget.is_finite() && r.regions.len() == 3);
        let total: f64 = r.regions.iter().map(|x| x.l4).sum();
        assert_eq!(total, r.l4_budget);
        assert!(r.sup_phi_sq > 12.0);
    }
}
