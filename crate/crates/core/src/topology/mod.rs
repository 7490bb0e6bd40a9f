//! Integer bookkeeping for closed 4-manifolds: connected sums, geography,
//! reduced `L^2` cohomology, Pin(2)-type monopole dimensions and the
//! obstruction verdicts that rule out asymptotically hyperbolic Einstein
//! metrics on link complements.
//!
//! Inputs and outputs are `i64`; intermediate arithmetic is `i128` and every
//! result is narrowed back with an overflow check. Thresholds with factors
//! `1/2` and `1/3` are exact rationals. Serialized integers are decimal strings.

mod certificate;
mod invariants;
mod l2;
mod manifold;
mod pin2;
mod verdict;

pub use certificate::{
    baykur_hamada, baykur_hamada_manifold, decompose_x2, enumerate_examples, CertificateChecks, ExampleCertificate,
    X2Pieces, SEARCH_WINDOW,
};
pub use invariants::{
    dai_wei_strict, gluing_hypothesis, hitchin_thorpe_margin, holomorphic_euler, obstruction_window, park_feasible,
    park_region, symplectic_c1_squared, Comparison, ParkRegion, ParkReport, FINITELY_MANY_CAVEAT,
};
pub use l2::{l2_cohomology_dims, rational_rank, L2Dimensions};
pub use manifold::{catalog, connect_sum, standard_piece, CatalogEntry, ClosedFourManifold, Piece, StandardKind};
pub use pin2::{pin2_dimension, pin2_gluing, GluedRecord, PinTwoData};
pub use verdict::{obstruction_verdict, MonopoleClassData, MonopoleKind, ObstructionVerdict};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("connected sum of an empty list")]
    EmptyList,
    #[error("genus {g} is negative")]
    BadGenus { g: i64 },
    #[error("{name} is not symplectic")]
    NotSymplectic { name: String },
    #[error("chi + sigma = {chi} + {sigma} is not divisible by 4")]
    NonIntegralChiH { chi: i64, sigma: i64 },
    #[error("{name} is not a sum of S^1 x Y and S^2 x Sigma_g pieces")]
    BadShape { name: String },
    #[error("b+ = {b_plus} is below 2")]
    BPlusTooSmall { b_plus: i64 },
    #[error("adjunction triviality of the monopole class is not known")]
    AdjunctionUnknown,
    #[error("the monopole class pairs nontrivially with a cusp torus")]
    AdjunctionViolated,
    #[error("n = {n} is below 5")]
    NTooSmall { n: i64 },
    #[error("chi + sigma = {chi} + {sigma} is odd")]
    ParityError { chi: i64, sigma: i64 },
    #[error("no X1 found for (chi, sigma) = ({chi}, {sigma}) within {window} steps")]
    SearchExhausted { chi: i64, sigma: i64, window: i64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("c1(E)^2 - sigma = {c1_sq_e} - {sigma} is not divisible by 4")]
    NonIntegralDimension { c1_sq_e: i64, sigma: i64 },
    #[error("gluing hypothesis failed: {0}")]
    GluingHypothesisFailed(String),
    #[error("invalid manifold: {0}")]
    InvalidManifold(String),
    #[error("integer overflow")]
    Overflow,
}

pub(crate) fn narrow(x: i128) -> Result<i64, TopologyError> {
    i64::try_from(x).map_err(|_| TopologyError::Overflow)
}

/// Serde adapter writing `i64` as a decimal string.
pub(crate) mod decimal {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &i64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i64, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

pub(crate) mod decimal_vec {
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[i64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i64>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|x| x.parse().map_err(D::Error::custom)).collect()
    }
}
