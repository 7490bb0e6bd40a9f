use super::{decimal, narrow, ClosedFourManifold, TopologyError};
use serde::{Deserialize, Serialize};

/// Betti numbers with local coefficients `l` and the class `c1(E)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinTwoData {
    #[serde(with = "decimal")]
    pub b0_l: i64,
    #[serde(with = "decimal")]
    pub b1_l: i64,
    #[serde(with = "decimal")]
    pub bplus_l: i64,
    #[serde(with = "decimal")]
    pub c1_sq_e: i64,
}

/// `d = (c1(E)^2 - sigma) / 4 - (b0(l) - b1(l) + b+(l))`.
pub fn pin2_dimension(data: &PinTwoData, sigma: i64) -> Result<i64, TopologyError> {
    let num = data.c1_sq_e as i128 - sigma as i128;
    if num % 4 != 0 {
        return Err(TopologyError::NonIntegralDimension { c1_sq_e: data.c1_sq_e, sigma });
    }
    narrow(num / 4 - (data.b0_l as i128 - data.b1_l as i128 + data.bplus_l as i128))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedRecord {
    pub ambient: ClosedFourManifold,
    /// `c1^2` of the glued structure, equal to that of `X1`.
    #[serde(with = "decimal")]
    pub c1_sq: i64,
    /// `c1^2` of the pulled-back structure on the double cover, `2 c1^2`.
    #[serde(with = "decimal")]
    pub double_cover_c1_sq: i64,
    #[serde(with = "decimal")]
    pub sw_mod2: i64,
}

/// Glues `X1` (with an odd mod-2 count) to summands that carry the trivial
/// local system. The count and `c1^2` pass to the sum unchanged.
pub fn pin2_gluing(
    x1: &ClosedFourManifold,
    s1_c1_sq: i64,
    sw_mod2_odd: bool,
    x2_pieces: &[ClosedFourManifold],
) -> Result<GluedRecord, TopologyError> {
    if x1.b_plus < 2 {
        return Err(TopologyError::GluingHypothesisFailed(format!("b+(X1) = {} < 2", x1.b_plus)));
    }
    if !sw_mod2_odd {
        return Err(TopologyError::GluingHypothesisFailed("mod-2 count of X1 is even".into()));
    }
    if let Some(bad) = x2_pieces.iter().find(|p| !p.is_standard()) {
        return Err(TopologyError::GluingHypothesisFailed(format!(
            "{} is not a cataloged local-system piece",
            bad.name
        )));
    }
    let mut parts = vec![x1.clone()];
    parts.extend(x2_pieces.iter().cloned());
    let ambient = super::connect_sum(&parts)?;
    Ok(GluedRecord { ambient, c1_sq: s1_c1_sq, double_cover_c1_sq: narrow(2 * s1_c1_sq as i128)?, sw_mod2: 1 })
}
