use super::{decimal, narrow, TopologyError};
use serde::{Deserialize, Serialize};

/// One summand of a connected sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    /// `S^1 x Y` for a closed 3-manifold `Y` with first Betti number `b1_y`.
    S1CrossY {
        #[serde(with = "decimal")]
        b1_y: i64,
    },
    /// `S^2 x Sigma_g`.
    S2CrossSigma {
        #[serde(with = "decimal")]
        genus: i64,
    },
    /// Any other named manifold.
    Named { name: String },
}

impl Piece {
    pub fn is_standard(&self) -> bool {
        !matches!(self, Piece::Named { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFourManifold {
    pub name: String,
    #[serde(with = "decimal")]
    pub chi: i64,
    #[serde(with = "decimal")]
    pub sigma: i64,
    #[serde(with = "decimal")]
    pub b_plus: i64,
    #[serde(with = "decimal")]
    pub b_one: i64,
    pub symplectic: bool,
    pub pieces: Vec<Piece>,
}

impl ClosedFourManifold {
    /// A prime summand described by its invariants.
    pub fn named(
        name: &str,
        chi: i64,
        sigma: i64,
        b_plus: i64,
        b_one: i64,
        symplectic: bool,
    ) -> Result<Self, TopologyError> {
        let m = Self {
            name: name.into(),
            chi,
            sigma,
            b_plus,
            b_one,
            symplectic,
            pieces: vec![Piece::Named { name: name.into() }],
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), TopologyError> {
        if self.b_plus < 0 || self.b_one < 0 {
            return Err(TopologyError::InvalidManifold(format!("{}: Betti numbers must be non-negative", self.name)));
        }
        if self.symplectic && (self.chi as i128 + self.sigma as i128) % 4 != 0 {
            return Err(TopologyError::NonIntegralChiH { chi: self.chi, sigma: self.sigma });
        }
        Ok(())
    }

    /// Whether every summand is `S^1 x Y` or `S^2 x Sigma_g`.
    pub fn is_standard(&self) -> bool {
        !self.pieces.is_empty() && self.pieces.iter().all(Piece::is_standard)
    }
}

/// `chi = sum chi_i - 2 (n - 1)`; `sigma`, `b+` and `b1` add.
pub fn connect_sum(pieces: &[ClosedFourManifold]) -> Result<ClosedFourManifold, TopologyError> {
    let Some(first) = pieces.first() else {
        return Err(TopologyError::EmptyList);
    };
    if pieces.len() == 1 {
        return Ok(first.clone());
    }
    let sum = |f: fn(&ClosedFourManifold) -> i64| pieces.iter().map(|m| f(m) as i128).sum::<i128>();
    let chi = sum(|m| m.chi) - 2 * (pieces.len() as i128 - 1);
    Ok(ClosedFourManifold {
        name: pieces.iter().map(|m| m.name.as_str()).collect::<Vec<_>>().join(" # "),
        chi: narrow(chi)?,
        sigma: narrow(sum(|m| m.sigma))?,
        b_plus: narrow(sum(|m| m.b_plus))?,
        b_one: narrow(sum(|m| m.b_one))?,
        symplectic: false,
        pieces: pieces.iter().flat_map(|m| m.pieces.iter().cloned()).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    /// Parameter: `b1(Y)`.
    S1CrossY,
    /// Parameter: the genus.
    S2CrossSigma,
}

pub fn standard_piece(kind: StandardKind, param: i64) -> Result<ClosedFourManifold, TopologyError> {
    match kind {
        StandardKind::S1CrossY => {
            if param < 0 {
                return Err(TopologyError::InvalidManifold(format!("b1(Y) = {param} is negative")));
            }
            let one = narrow(param as i128 + 1)?;
            Ok(ClosedFourManifold {
                name: "S^1 x Y".into(),
                chi: 0,
                sigma: 0,
                b_plus: param,
                b_one: one,
                symplectic: false,
                pieces: vec![Piece::S1CrossY { b1_y: param }],
            })
        }
        StandardKind::S2CrossSigma => {
            if param < 0 {
                return Err(TopologyError::BadGenus { g: param });
            }
            Ok(ClosedFourManifold {
                name: format!("S^2 x Sigma_{param}"),
                chi: narrow(4 - 4 * param as i128)?,
                sigma: 0,
                b_plus: 1,
                b_one: narrow(2 * param as i128)?,
                symplectic: true,
                pieces: vec![Piece::S2CrossSigma { genus: param }],
            })
        }
    }
}

/// A catalog record with a note on where its invariants come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub manifold: ClosedFourManifold,
    pub provenance: String,
}

/// Classical closed 4-manifolds with their standard invariants.
pub fn catalog() -> Vec<CatalogEntry> {
    let e = |name: &str, chi, sigma, b_plus, b_one, symp, why: &str| CatalogEntry {
        manifold: ClosedFourManifold::named(name, chi, sigma, b_plus, b_one, symp).expect("catalog entries are valid"),
        provenance: why.into(),
    };
    vec![
        e("S^4", 2, 0, 0, 0, false, "standard sphere"),
        e("CP^2", 3, 1, 1, 0, true, "complex projective plane, Fubini-Study Kahler form"),
        e("-CP^2", 3, -1, 0, 0, false, "orientation reversal of CP^2"),
        e("S^2 x S^2", 4, 0, 1, 0, true, "product of spheres, product Kahler form"),
        e("T^4", 0, 0, 3, 4, true, "flat torus, Kahler"),
        e("K3", 24, -16, 3, 0, true, "Kummer surface, Calabi-Yau"),
        e("Enriques", 12, -8, 1, 0, true, "quotient of K3 by a free involution"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s2s2() -> ClosedFourManifold {
        ClosedFourManifold::named("S^2 x S^2", 4, 0, 1, 0, true).unwrap()
    }

    #[test]
    fn sums_of_spheres() {
        assert_eq!(connect_sum(&[s2s2(), s2s2()]).unwrap().chi, 6);
        for m in 1..=15 {
            let sum = connect_sum(&vec![s2s2(); m]).unwrap();
            assert_eq!((sum.chi, sum.sigma, sum.b_plus), (2 * m as i64 + 2, 0, m as i64));
        }
        let x5 = ClosedFourManifold::named("X_5", 24, 0, 11, 0, true).unwrap();
        let sigma5 = standard_piece(StandardKind::S2CrossSigma, 5).unwrap();
        let amb = connect_sum(&[x5, sigma5]).unwrap();
        assert_eq!((amb.chi, amb.sigma), (6, 0));
        assert!(matches!(connect_sum(&[]), Err(TopologyError::EmptyList)));
    }

    #[test]
    fn standard_pieces() {
        assert_eq!(standard_piece(StandardKind::S1CrossY, 0).unwrap().chi, 0);
        assert_eq!(standard_piece(StandardKind::S2CrossSigma, 1).unwrap().chi, 0);
        assert_eq!(standard_piece(StandardKind::S2CrossSigma, 5).unwrap().chi, -16);
        assert!(matches!(standard_piece(StandardKind::S2CrossSigma, -1), Err(TopologyError::BadGenus { g: -1 })));
        assert!(standard_piece(StandardKind::S2CrossSigma, 3).unwrap().is_standard());
        assert!(!catalog()[0].manifold.is_standard());
    }

    #[test]
    fn serialization_uses_decimal_strings() {
        let m = standard_piece(StandardKind::S2CrossSigma, 5).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"chi\":\"-16\""), "{text}");
        assert_eq!(serde_json::from_str::<ClosedFourManifold>(&text).unwrap(), m);
        let cat = serde_json::to_string(&catalog()).unwrap();
        assert_eq!(serde_json::from_str::<Vec<CatalogEntry>>(&cat).unwrap(), catalog());
    }

    #[test]
    fn symplectic_parity_is_validated() {
        assert!(matches!(
            ClosedFourManifold::named("bad", 5, 0, 2, 0, true),
            Err(TopologyError::NonIntegralChiH { chi: 5, sigma: 0 })
        ));
    }

    fn arb_piece() -> impl Strategy<Value = ClosedFourManifold> {
        (-50i64..50, -20i64..20, 0i64..20, 0i64..10)
            .prop_map(|(chi, sigma, bp, b1)| ClosedFourManifold::named("M", chi, sigma, bp, b1, false).unwrap())
    }

    proptest! {
        #[test]
        fn connect_sum_is_associative_and_commutative(ps in prop::collection::vec(arb_piece(), 1..8), split in 0usize..8, seed in any::<u64>()) {
            let whole = connect_sum(&ps).unwrap();
            let k = split % ps.len() + 1;
            let left = connect_sum(&ps[..k]).unwrap();
            let nested = if k < ps.len() {
                let right = connect_sum(&ps[k..]).unwrap();
                connect_sum(&[left, right]).unwrap()
            } else {
                left
            };
            prop_assert_eq!((whole.chi, whole.sigma, whole.b_plus, whole.b_one), (nested.chi, nested.sigma, nested.b_plus, nested.b_one));
            let mut shuffled = ps.clone();
            let n = shuffled.len();
            shuffled.rotate_left((seed as usize) % n);
            shuffled.swap(0, (seed as usize / 7) % n);
            let other = connect_sum(&shuffled).unwrap();
            prop_assert_eq!((whole.chi, whole.sigma, whole.b_plus, whole.b_one), (other.chi, other.sigma, other.b_plus, other.b_one));
            // Independent formula.
            let chi: i64 = ps.iter().map(|m| m.chi).sum::<i64>() - 2 * (ps.len() as i64 - 1);
            prop_assert_eq!(whole.chi, chi);
        }
    }
}
