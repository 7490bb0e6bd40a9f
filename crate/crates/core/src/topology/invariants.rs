use super::{decimal, narrow, ClosedFourManifold, TopologyError};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// `2 chi - 3 |sigma|`.
pub fn hitchin_thorpe_margin(m: &ClosedFourManifold) -> Result<i64, TopologyError> {
    narrow(2 * m.chi as i128 - 3 * (m.sigma as i128).abs())
}

/// Whether the margin is strictly positive.
pub fn dai_wei_strict(m: &ClosedFourManifold) -> Result<bool, TopologyError> {
    Ok(hitchin_thorpe_margin(m)? > 0)
}

/// `chi_h = (chi + sigma) / 4`, required to be an integer.
pub fn holomorphic_euler(m: &ClosedFourManifold) -> Result<i64, TopologyError> {
    let s = m.chi as i128 + m.sigma as i128;
    if s % 4 != 0 {
        return Err(TopologyError::NonIntegralChiH { chi: m.chi, sigma: m.sigma });
    }
    narrow(s / 4)
}

/// `c1^2 = 2 chi + 3 sigma` of a symplectic manifold.
pub fn symplectic_c1_squared(m: &ClosedFourManifold) -> Result<i64, TopologyError> {
    if !m.symplectic {
        return Err(TopologyError::NotSymplectic { name: m.name.clone() });
    }
    holomorphic_euler(m)?;
    narrow(2 * m.chi as i128 + 3 * m.sigma as i128)
}

/// The geography conditions for `(chi_h, c1^2) = (x, c)`; realization is
/// only claimed for all but finitely many pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParkReport {
    #[serde(with = "decimal")]
    pub x: i64,
    #[serde(with = "decimal")]
    pub c: i64,
    pub positive: bool,
    /// `c = x mod 8`, as the condition is usually quoted for this construction.
    pub congruent_mod_8: bool,
    /// `c < 9x`.
    pub below_9x: bool,
    pub feasible: bool,
    pub caveat: String,
}

pub const FINITELY_MANY_CAVEAT: &str = "realized for all but finitely many pairs; no claim for a specific pair";

pub fn park_feasible(x: i64, c: i64) -> ParkReport {
    let positive = x > 0 && c > 0;
    let congruent_mod_8 = (c as i128 - x as i128).rem_euclid(8) == 0;
    let below_9x = (c as i128) < 9 * x as i128;
    ParkReport {
        x,
        c,
        positive,
        congruent_mod_8,
        below_9x,
        feasible: positive && congruent_mod_8 && below_9x,
        caveat: FINITELY_MANY_CAVEAT.into(),
    }
}

/// The same region in `(chi, sigma)`: `chi > 0`, `-2chi/3 <= sigma < chi/3`,
/// `chi + sigma = 0 mod 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParkRegion {
    pub chi_positive: bool,
    pub sigma_in_range: bool,
    pub parity: bool,
    pub inside: bool,
    pub caveat: String,
}

pub fn park_region(chi: i64, sigma: i64) -> ParkRegion {
    let (c, s) = (chi as i128, sigma as i128);
    let chi_positive = c > 0;
    let sigma_in_range = -2 * c <= 3 * s && 3 * s < c;
    let parity = (c + s).rem_euclid(4) == 0;
    ParkRegion {
        chi_positive,
        sigma_in_range,
        parity,
        inside: chi_positive && sigma_in_range && parity,
        caveat: FINITELY_MANY_CAVEAT.into(),
    }
}

/// An exact comparison `lhs (op) rhs` between rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

fn compare(lhs: Ratio<i128>, rhs: Ratio<i128>, strict: bool) -> Comparison {
    Comparison { lhs: lhs.to_string(), rhs: rhs.to_string(), holds: if strict { lhs > rhs } else { lhs >= rhs } }
}

fn check_pair(x1: &ClosedFourManifold, x2: &ClosedFourManifold) -> Result<(), TopologyError> {
    if !x1.symplectic {
        return Err(TopologyError::NotSymplectic { name: x1.name.clone() });
    }
    if x1.b_plus < 2 {
        return Err(TopologyError::BPlusTooSmall { b_plus: x1.b_plus });
    }
    if !x2.is_standard() {
        return Err(TopologyError::BadShape { name: x2.name.clone() });
    }
    Ok(())
}

/// `2 - chi(X2) >= (2 chi(X1) + 3 sigma(X1)) / 3`.
pub fn gluing_hypothesis(x1: &ClosedFourManifold, x2: &ClosedFourManifold) -> Result<Comparison, TopologyError> {
    check_pair(x1, x2)?;
    let lhs = Ratio::from_integer(2 - x2.chi as i128);
    let rhs = Ratio::new(2 * x1.chi as i128 + 3 * x1.sigma as i128, 3);
    Ok(compare(lhs, rhs, false))
}

/// `(2 chi(X1) + 3 sigma(X1)) / 2 > 2 - chi(X2)`.
pub fn obstruction_window(x1: &ClosedFourManifold, x2: &ClosedFourManifold) -> Result<Comparison, TopologyError> {
    check_pair(x1, x2)?;
    let lhs = Ratio::new(2 * x1.chi as i128 + 3 * x1.sigma as i128, 2);
    let rhs = Ratio::from_integer(2 - x2.chi as i128);
    Ok(compare(lhs, rhs, true))
}
