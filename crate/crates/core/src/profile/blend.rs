use super::verify::{verify, ConstraintReport, Slacks};
use super::warp::{Background, Perturbation};
use super::{ProfileError, WarpProfile};

/// Bounds for [`blend`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlendOptions {
    /// Sup-norm bounds on each relative perturbation and its first two derivatives.
    pub norm_bounds: [f64; 3],
    /// How far any constraint minimum may fall below the unblended profile's.
    pub slack_allowance: f64,
    pub verify_grid: usize,
}

impl Default for BlendOptions {
    fn default() -> Self {
        Self { norm_bounds: [0.5, 5.0, 50.0], slack_allowance: 1e-4, verify_grid: 10_000 }
    }
}

/// A blended profile and both verification reports.
#[derive(Debug, Clone, PartialEq)]
pub struct BlendOutcome {
    pub profile: WarpProfile,
    pub base_report: ConstraintReport,
    pub report: ConstraintReport,
    /// Largest drop of any constraint minimum relative to the base profile.
    pub max_slack_drop: f64,
}

/// Blends the background `e^{-t}(1 + dphi)`, `e^{-t}(1 + dpsi)` into the profile
/// with the cutoff `chi(t - cutoff_center)`, acting on the squared warping
/// functions, and re-verifies the result.
///
/// The cutoff window `[cutoff_center, cutoff_center + 1]` must lie inside the
/// exact-cusp region `[0, j]`.
pub fn blend(
    profile: &WarpProfile,
    dphi: Perturbation,
    dpsi: Perturbation,
    cutoff_center: f64,
    opts: &BlendOptions,
) -> Result<BlendOutcome, ProfileError> {
    if profile.background.is_some() {
        return Err(ProfileError::UsageError("profile is already blended".into()));
    }
    for (name, p) in [("dphi", &dphi), ("dpsi", &dpsi)] {
        let norms = p.sup_norms();
        for (k, (n, bound)) in norms.iter().zip(opts.norm_bounds).enumerate() {
            if *n > bound {
                return Err(ProfileError::PerturbationTooLarge {
                    constraint: format!("C{k} norm of {name}"),
                    t: f64::NAN,
                    drop: n - bound,
                });
            }
        }
    }
    let mut blended = profile.clone();
    blended.background = Some(Background { cutoff_center, dphi, dpsi });
    blended.validate()?;

    let base_report = verify(profile, opts.verify_grid)?;
    let report = verify(&blended, opts.verify_grid)?;
    let mut max_drop = f64::NEG_INFINITY;
    let mut worst = (0, f64::NAN);
    for (i, (b, n)) in base_report.slack_minima().iter().zip(report.slack_minima()).enumerate() {
        let drop = b.value - n.value;
        if drop > max_drop || drop.is_nan() {
            max_drop = if drop.is_nan() { f64::INFINITY } else { drop };
            worst = (i, n.t);
        }
    }
    if max_drop > opts.slack_allowance || !report.phi_decreasing || !report.psi_nonincreasing {
        return Err(ProfileError::PerturbationTooLarge {
            constraint: Slacks::NAMES[worst.0].to_string(),
            t: worst.1,
            drop: max_drop,
        });
    }
    Ok(BlendOutcome { profile: blended, base_report, report, max_slack_drop: max_drop.max(0.0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::WarpedMetric;
    use crate::profile::{search, BuilderOptions};

    fn base() -> WarpProfile {
        search(6.0, &BuilderOptions { max_iterations: 6, search_points: 100, verify_grid: 2000, ..Default::default() })
            .unwrap()
            .profile
    }

    fn quick() -> BlendOptions {
        BlendOptions { verify_grid: 4000, ..Default::default() }
    }

    #[test]
    fn zero_perturbation_is_the_identity() {
        let p = base();
        let out = blend(&p, Perturbation::zero(), Perturbation::zero(), 4.0, &quick()).unwrap();
        for i in 0..=600 {
            let t = p.t_end * i as f64 / 601.0;
            let (a, b) = (p.jet(t), out.profile.jet(t));
            for (x, y) in [
                (a.phi, b.phi),
                (a.dphi, b.dphi),
                (a.d2phi, b.d2phi),
                (a.psi, b.psi),
                (a.dpsi, b.dpsi),
                (a.d2psi, b.d2psi),
            ] {
                assert!((x - y).abs() <= 1e-14 * x.abs().max(1e-300), "t = {t}: {x} vs {y}");
            }
        }
        assert_eq!(out.max_slack_drop, 0.0);
    }

    #[test]
    fn tiny_psi_bump_keeps_the_margins() {
        let out = blend(&base(), Perturbation::zero(), Perturbation::bump(1.0, 2.0, 1e-6), 4.0, &quick()).unwrap();
        assert!(out.max_slack_drop <= 1e-4);
        assert!(out.profile.regions()[0].kind == crate::geometry::RegionKind::Blend);
    }

    #[test]
    fn large_phi_perturbation_is_rejected() {
        // (1 - x^2)^3 on [1, 2] has second derivative 24 A at the centre.
        let dphi = Perturbation::bump(1.0, 2.0, 10.0 / 24.0);
        let norms = dphi.sup_norms();
        assert!((norms[2] - 10.0).abs() < 1e-9);
        let r = blend(&base(), dphi, Perturbation::zero(), 4.0, &quick());
        assert!(matches!(r, Err(ProfileError::PerturbationTooLarge { .. })), "{r:?}");
    }

    #[test]
    fn window_must_sit_in_the_cusp() {
        let r = blend(&base(), Perturbation::zero(), Perturbation::zero(), 5.5, &quick());
        assert!(r.is_err());
        let over = BlendOptions { norm_bounds: [0.5, 5.0, 5.0], ..quick() };
        let r = blend(&base(), Perturbation::bump(1.0, 2.0, 10.0 / 24.0), Perturbation::zero(), 4.0, &over);
        assert!(matches!(r, Err(ProfileError::PerturbationTooLarge { .. })));
    }
}
