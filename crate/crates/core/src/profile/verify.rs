use super::ProfileError;
use crate::geometry::{curvature_report, sample_grid, uniform_grid, MetricJet, RegionKind, WarpedMetric};
use serde::{Deserialize, Serialize};

/// Default tolerance on every hard constraint.
pub const HARD_TOLERANCE: f64 = 1e-9;

/// Pointwise slack of every constraint: non-negative means satisfied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slacks {
    /// `-3 - (phi'/phi + 2 psi'/psi)`.
    pub a1: f64,
    /// `psi'/psi + 2 / (1 - phi'/phi)`.
    pub a2: f64,
    /// Bochner coefficients plus 2.
    pub b_t: f64,
    pub b_theta: f64,
    pub b_torus: f64,
    /// Mean curvature minus 3/2.
    pub mean_h: f64,
}

impl Slacks {
    pub const NAMES: [&'static str; 6] = ["slack_a1", "slack_a2", "b_t", "b_theta", "b_torus", "mean_h"];

    pub fn from_jet(jet: &MetricJet) -> Option<Self> {
        let c = curvature_report(jet).ok()?;
        let (p, q) = (jet.p(), jet.q());
        Some(Self {
            a1: -3.0 - (p + 2.0 * q),
            a2: q + 2.0 / (1.0 - p),
            b_t: c.b_t + 2.0,
            b_theta: c.b_theta + 2.0,
            b_torus: c.b_torus + 2.0,
            mean_h: c.mean_h - 1.5,
        })
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.a1, self.a2, self.b_t, self.b_theta, self.b_torus, self.mean_h]
    }

    /// Smallest slack and the index of its constraint.
    pub fn worst(&self) -> (usize, f64) {
        self.as_array()
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) })
    }
}

/// A grid extremum and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: f64,
    pub t: f64,
}

impl Extremum {
    fn new() -> Self {
        Self { value: f64::INFINITY, t: f64::NAN }
    }

    /// Keeps the smaller value; a NaN counts as an unbounded violation.
    fn update(&mut self, value: f64, t: f64) {
        let value = if value.is_nan() { f64::NEG_INFINITY } else { value };
        if value < self.value || self.t.is_nan() {
            self.value = value;
            self.t = t;
        }
    }
}

/// Where `|psi''| > |psi'|`; reported, never failing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SoftPsiReport {
    pub points: usize,
    pub first_t: Option<f64>,
    pub worst_ratio: f64,
}

/// The most violated hard constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: String,
    pub t: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub grid_n: usize,
    /// Points actually evaluated, including bridge refinement and breakpoints.
    pub points: usize,
    pub pinch_exclusion: f64,
    pub tolerance: f64,
    pub min_slack_a1: Extremum,
    pub min_slack_a2: Extremum,
    pub min_b_t: Extremum,
    pub min_b_theta: Extremum,
    pub min_b_torus: Extremum,
    pub min_mean_h: Extremum,
    pub inf_scalar: Extremum,
    pub soft_psi_flag: SoftPsiReport,
    pub phi_decreasing: bool,
    pub psi_nonincreasing: bool,
    pub orbifold_cap: bool,
    pub worst: Violation,
    pub pass: bool,
}

impl ConstraintReport {
    /// Hard-constraint minima as slacks, in [`Slacks::NAMES`] order.
    pub fn slack_minima(&self) -> [Extremum; 6] {
        let shift = |e: Extremum, s: f64| Extremum { value: e.value + s, t: e.t };
        [
            self.min_slack_a1,
            self.min_slack_a2,
            shift(self.min_b_t, 2.0),
            shift(self.min_b_theta, 2.0),
            shift(self.min_b_torus, 2.0),
            shift(self.min_mean_h, -1.5),
        ]
    }
}

/// Sample points: `grid_n` uniform points on `[t0, t_end - delta]`, `grid_n`
/// more on every region other than the exact cusp, plus every breakpoint.
///
/// On a pinched metric `delta = max(1e-6, step)` where `step` is the refined
/// grid step on the last region, so a short cap is never excluded wholesale.
pub fn verification_points<M: WarpedMetric + ?Sized>(
    metric: &M,
    grid_n: usize,
) -> Result<(Vec<f64>, f64), ProfileError> {
    if grid_n < 2 {
        return Err(ProfileError::UsageError(format!("grid_n must be at least 2, got {grid_n}")));
    }
    let (lo, hi) = metric.domain();
    if !hi.is_finite() {
        return Err(ProfileError::UsageError("verification needs a finite domain".into()));
    }
    let regions = metric.regions();
    let last = regions.last().map_or(hi - lo, |r| r.t1 - r.t0);
    let delta = if metric.pinched() { (last / (grid_n - 1) as f64).max(1e-6) } else { 0.0 };
    let end = hi - delta;
    if end <= lo {
        return Err(ProfileError::UsageError(format!(
            "domain [{lo}, {hi}] is shorter than the pinch exclusion {delta}"
        )));
    }
    let mut ts = uniform_grid(lo, end, grid_n);
    for r in &regions {
        if r.kind != RegionKind::Cusp && r.t0 < end {
            ts.extend(uniform_grid(r.t0, r.t1.min(end), grid_n));
        }
    }
    ts.extend(metric.breakpoints().into_iter().filter(|&b| b <= end));
    ts.retain(|&t| t >= lo && t <= end);
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    Ok((ts, delta))
}

/// Evaluates every constraint of the approximating family on a dense grid.
pub fn verify<M: WarpedMetric + ?Sized>(metric: &M, grid_n: usize) -> Result<ConstraintReport, ProfileError> {
    verify_with_tolerance(metric, grid_n, HARD_TOLERANCE)
}

pub fn verify_with_tolerance<M: WarpedMetric + ?Sized>(
    metric: &M,
    grid_n: usize,
    tolerance: f64,
) -> Result<ConstraintReport, ProfileError> {
    if !(tolerance > 0.0) {
        return Err(ProfileError::UsageError("tolerance must be positive".into()));
    }
    let (ts, delta) = verification_points(metric, grid_n)?;
    let rows = sample_grid(metric, &ts)?;

    let mut mins = [Extremum::new(); 6];
    let mut inf_scalar = Extremum::new();
    let mut soft = SoftPsiReport { points: 0, first_t: None, worst_ratio: 0.0 };
    let mut phi_decreasing = true;
    let mut psi_nonincreasing = true;
    for row in &rows {
        let t = row.jet.t;
        let slacks = Slacks::from_jet(&row.jet).expect("rows are interior");
        for (m, v) in mins.iter_mut().zip(slacks.as_array()) {
            m.update(v, t);
        }
        inf_scalar.update(row.curvature.scalar, t);
        let (d, dd) = (row.jet.dpsi.abs(), row.jet.d2psi.abs());
        if dd > d {
            soft.points += 1;
            soft.first_t.get_or_insert(t);
            soft.worst_ratio = soft.worst_ratio.max(if d > 0.0 { dd / d } else { f64::INFINITY });
        }
        phi_decreasing &= row.jet.dphi < 0.0;
        psi_nonincreasing &= row.jet.dpsi <= 0.0;
    }

    let (wi, worst) =
        mins.iter().enumerate().fold((0, mins[0]), |(bi, b), (i, m)| if m.value < b.value { (i, *m) } else { (bi, b) });
    let pass = worst.value >= -tolerance && phi_decreasing && psi_nonincreasing;
    let unshift = |e: Extremum, s: f64| Extremum { value: e.value + s, t: e.t };
    Ok(ConstraintReport {
        grid_n,
        points: rows.len(),
        pinch_exclusion: delta,
        tolerance,
        min_slack_a1: mins[0],
        min_slack_a2: mins[1],
        min_b_t: unshift(mins[2], -2.0),
        min_b_theta: unshift(mins[3], -2.0),
        min_b_torus: unshift(mins[4], -2.0),
        min_mean_h: unshift(mins[5], 1.5),
        inf_scalar,
        soft_psi_flag: soft,
        phi_decreasing,
        psi_nonincreasing,
        orbifold_cap: metric.pinched() && metric.cross().is_orbifold_cap(),
        worst: Violation { constraint: Slacks::NAMES[wi].to_string(), t: worst.t, slack: worst.value },
        pass,
    })
}

/// Maximal grid intervals on which the uniform bounds used by the one-form
/// estimate hold: all Bochner coefficients `>= -2 - tol` and `h >= 3/2 - tol`.
pub fn uniform_window<M: WarpedMetric + ?Sized>(
    metric: &M,
    grid_n: usize,
    tolerance: f64,
) -> Result<Vec<(f64, f64)>, ProfileError> {
    let (ts, _) = verification_points(metric, grid_n)?;
    let rows = sample_grid(metric, &ts)?;
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut open: Option<(f64, f64)> = None;
    for row in &rows {
        let c = &row.curvature;
        let good = c.b_t >= -2.0 - tolerance
            && c.b_theta >= -2.0 - tolerance
            && c.b_torus >= -2.0 - tolerance
            && c.mean_h >= 1.5 - tolerance;
        let t = row.jet.t;
        open = match (open, good) {
            (Some((a, _)), true) => Some((a, t)),
            (None, true) => Some((t, t)),
            (Some(iv), false) => {
                out.push(iv);
                None
            }
            (None, false) => None,
        };
    }
    out.extend(open);
    out.retain(|(a, b)| b > a);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ExactCusp, FlatCap, FlatCrossSection};

    #[test]
    fn exact_cusp_constraints_are_equalities() {
        let cusp = ExactCusp::new(FlatCrossSection::unit(), 5.0);
        let r = verify(&cusp, 100).unwrap();
        assert_eq!(r.min_slack_a1.value, 0.0);
        assert_eq!(r.min_slack_a2.value, 0.0);
        assert!((r.min_mean_h.value - 1.5).abs() < 1e-15);
        assert!((r.min_b_torus.value + 2.0).abs() < 1e-14);
        assert!((r.inf_scalar.value + 12.0).abs() < 1e-13);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.soft_psi_flag.points, 0);
    }

    #[test]
    fn short_flat_cap_passes_long_one_fails() {
        let cross = FlatCrossSection::unit();
        let short = FlatCap { t_start: 0.0, t_end: 0.3, c_level: 0.1, cross };
        assert!(verify(&short, 200).unwrap().pass);
        let long = FlatCap { t_start: 0.0, t_end: 0.6, c_level: 0.1, cross };
        let r = verify(&long, 200).unwrap();
        assert!(!r.pass);
        assert!(r.worst.constraint == "slack_a1" || r.worst.constraint == "mean_h");
        assert!((r.min_slack_a1.value - (-3.0 + 1.0 / 0.6)).abs() < 1e-12);
        assert_eq!(r.min_slack_a1.t, 0.0);
    }

    #[test]
    fn grid_of_one_is_a_usage_error() {
        let cusp = ExactCusp::new(FlatCrossSection::unit(), 5.0);
        assert!(matches!(verify(&cusp, 1), Err(ProfileError::UsageError(_))));
    }

    #[test]
    fn pinch_is_excluded() {
        let cap = FlatCap { t_start: 0.0, t_end: 0.3, c_level: 0.1, cross: FlatCrossSection::unit() };
        let (ts, delta) = verification_points(&cap, 11).unwrap();
        assert!(delta >= 1e-6);
        assert!(ts.iter().all(|&t| t <= 0.3 - delta));
    }

    #[test]
    fn short_cap_is_sampled_on_a_long_domain() {
        use crate::profile::WarpProfile;
        let j: f64 = 9.0;
        let e = (-j).exp();
        let p = WarpProfile::from_parameters(j, 2e-4, 0.4 * e, 0.999 * e, FlatCrossSection::unit()).unwrap();
        let (ts, delta) = verification_points(&p, 10_000).unwrap();
        assert_eq!(delta, 1e-6);
        let in_bridge = ts.iter().filter(|&&t| t > j && t < j + 2e-4).count();
        let in_cap = ts.iter().filter(|&&t| t > j + 2e-4).count();
        assert!(in_bridge >= 9_000 && in_cap >= 9_000, "{in_bridge} {in_cap}");
        assert!(!verify(&p, 10_000).unwrap().pass);
    }

    #[test]
    fn uniform_window_of_exact_cusp_is_everything() {
        let cusp = ExactCusp::new(FlatCrossSection::unit(), 5.0);
        assert_eq!(uniform_window(&cusp, 50, 1e-9).unwrap(), vec![(0.0, 5.0)]);
    }
}
