use super::{decimal, hitchin_thorpe_margin, ClosedFourManifold, TopologyError};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonopoleKind {
    SeibergWitten,
    PinMinus2,
}

/// A monopole class `alpha` with `alpha^2 = c1_sq`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonopoleClassData {
    #[serde(with = "decimal")]
    pub c1_sq: i64,
    /// `<c1, [T_i]> = 0` for every listed torus; `None` when not known.
    pub adjunction_trivial: Option<bool>,
    pub kind: MonopoleKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionVerdict {
    #[serde(with = "decimal")]
    pub chi: i64,
    #[serde(with = "decimal")]
    pub sigma: i64,
    #[serde(with = "decimal")]
    pub c1_sq: i64,
    pub kind: MonopoleKind,
    /// `2 chi - 3 |sigma|`.
    #[serde(with = "decimal")]
    pub margin: i64,
    /// `c1_sq / 3`, exact.
    pub threshold: String,
    /// `margin <= threshold`: no asymptotically hyperbolic Einstein metric on the complement.
    pub obstructed: bool,
    pub dai_wei_strict: bool,
    pub rule: String,
}

/// Applies `2 chi - 3 |sigma| <= alpha^2 / 3` to the ambient manifold.
pub fn obstruction_verdict(
    ambient: &ClosedFourManifold,
    alpha: &MonopoleClassData,
) -> Result<ObstructionVerdict, TopologyError> {
    match alpha.adjunction_trivial {
        None => return Err(TopologyError::AdjunctionUnknown),
        Some(false) => return Err(TopologyError::AdjunctionViolated),
        Some(true) => {}
    }
    let margin = hitchin_thorpe_margin(ambient)?;
    let threshold = Ratio::new(alpha.c1_sq as i128, 3);
    let rule = match alpha.kind {
        MonopoleKind::SeibergWitten => "2chi - 3|sigma| <= alpha^2/3 for a Seiberg-Witten monopole class",
        MonopoleKind::PinMinus2 => "2chi - 3|sigma| <= omega^2/3 for a Pin-(2) monopole basic class",
    };
    Ok(ObstructionVerdict {
        chi: ambient.chi,
        sigma: ambient.sigma,
        c1_sq: alpha.c1_sq,
        kind: alpha.kind,
        margin,
        threshold: threshold.to_string(),
        obstructed: Ratio::from_integer(margin as i128) <= threshold,
        dai_wei_strict: margin > 0,
        rule: rule.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ambient(chi: i64, sigma: i64) -> ClosedFourManifold {
        ClosedFourManifold::named("X", chi, sigma, 0, 0, false).unwrap()
    }

    fn sw(c1_sq: i64) -> MonopoleClassData {
        MonopoleClassData { c1_sq, adjunction_trivial: Some(true), kind: MonopoleKind::SeibergWitten }
    }

    #[test]
    fn examples() {
        let v = obstruction_verdict(&ambient(6, 0), &sw(48)).unwrap();
        assert_eq!((v.margin, v.threshold.as_str(), v.obstructed, v.dai_wei_strict), (12, "16", true, true));
        let v = obstruction_verdict(&ambient(2, 0), &sw(6)).unwrap();
        assert!(!v.obstructed);
        let v = obstruction_verdict(&ambient(0, 0), &sw(0)).unwrap();
        assert!(v.obstructed && !v.dai_wei_strict);
        let unknown = MonopoleClassData { adjunction_trivial: None, ..sw(1) };
        assert!(matches!(obstruction_verdict(&ambient(0, 0), &unknown), Err(TopologyError::AdjunctionUnknown)));
        let bad = MonopoleClassData { adjunction_trivial: Some(false), ..sw(1) };
        assert!(matches!(obstruction_verdict(&ambient(0, 0), &bad), Err(TopologyError::AdjunctionViolated)));
    }

    proptest! {
        #[test]
        fn depends_only_on_chi_abs_sigma_and_c1(chi in -200i64..200, sigma in -100i64..100, c in -300i64..300, bp in 0i64..9, b1 in 0i64..9) {
            let a = ClosedFourManifold::named("A", chi, sigma, bp, b1, false).unwrap();
            let b = ClosedFourManifold::named("B", chi, -sigma, 0, 0, false).unwrap();
            let pin = MonopoleClassData { kind: MonopoleKind::PinMinus2, ..sw(c) };
            let va = obstruction_verdict(&a, &sw(c)).unwrap();
            let vb = obstruction_verdict(&b, &pin).unwrap();
            prop_assert_eq!((va.margin, va.obstructed, va.dai_wei_strict), (vb.margin, vb.obstructed, vb.dai_wei_strict));
            prop_assert_eq!(va.obstructed, 3 * (2 * chi - 3 * sigma.abs()) <= c);
        }
    }
}
