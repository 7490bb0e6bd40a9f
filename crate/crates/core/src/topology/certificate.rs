use super::{
    connect_sum, decimal, decimal_vec, gluing_hypothesis, hitchin_thorpe_margin, narrow, obstruction_verdict,
    obstruction_window, park_feasible, standard_piece, symplectic_c1_squared, ClosedFourManifold, Comparison,
    MonopoleClassData, MonopoleKind, ObstructionVerdict, ParkReport, StandardKind, TopologyError,
};
use serde::{Deserialize, Serialize};

/// How far past `3 chi + 9 |sigma|` the enumerator looks for `chi(X1)`.
pub const SEARCH_WINDOW: i64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct X2Pieces {
    /// Copies of `S^1 x Y`.
    #[serde(with = "decimal")]
    pub k: i64,
    #[serde(with = "decimal_vec")]
    pub genera: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    pub gluing: Comparison,
    pub window: Comparison,
    #[serde(with = "decimal")]
    pub daiwei_margin: i64,
    pub verdict: ObstructionVerdict,
}

impl CertificateChecks {
    pub fn all_hold(&self) -> bool {
        self.gluing.holds && self.window.holds && self.verdict.obstructed && self.verdict.dai_wei_strict
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleCertificate {
    pub format_version: u32,
    #[serde(with = "decimal")]
    pub target_chi: i64,
    #[serde(with = "decimal")]
    pub target_sigma: i64,
    pub x1: ClosedFourManifold,
    pub x1_class: MonopoleClassData,
    pub x2_pieces: X2Pieces,
    pub x2: ClosedFourManifold,
    pub ambient: ClosedFourManifold,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub park: Option<ParkReport>,
    pub checks: CertificateChecks,
    pub valid: bool,
    pub caveats: Vec<String>,
}

impl ExampleCertificate {
    /// Recomputes the ambient invariants from the recorded pieces.
    pub fn recompute_ambient(&self) -> Result<(i64, i64), TopologyError> {
        let mut parts = vec![self.x1.clone()];
        for _ in 0..self.x2_pieces.k {
            parts.push(standard_piece(StandardKind::S1CrossY, 0)?);
        }
        for &g in &self.x2_pieces.genera {
            parts.push(standard_piece(StandardKind::S2CrossSigma, g)?);
        }
        let m = connect_sum(&parts)?;
        Ok((m.chi, m.sigma))
    }
}

fn assemble_x2(k: i64, genera: &[i64]) -> Result<ClosedFourManifold, TopologyError> {
    let mut parts = Vec::new();
    for _ in 0..k {
        parts.push(standard_piece(StandardKind::S1CrossY, 0)?);
    }
    for &g in genera {
        parts.push(standard_piece(StandardKind::S2CrossSigma, g)?);
    }
    connect_sum(&parts)
}

fn certify(
    target: Option<(i64, i64)>,
    x1: ClosedFourManifold,
    k: i64,
    genera: Vec<i64>,
    park: Option<ParkReport>,
    mut caveats: Vec<String>,
) -> Result<ExampleCertificate, TopologyError> {
    let c1_sq = symplectic_c1_squared(&x1)?;
    // Symplectic X1 carries its canonical class; the tori sit in the X2 summand.
    let x1_class = MonopoleClassData { c1_sq, adjunction_trivial: Some(true), kind: MonopoleKind::SeibergWitten };
    let x2 = assemble_x2(k, &genera)?;
    let ambient = connect_sum(&[x1.clone(), x2.clone()])?;
    let gluing = gluing_hypothesis(&x1, &x2)?;
    let window = obstruction_window(&x1, &x2)?;
    let verdict = obstruction_verdict(&ambient, &x1_class)?;
    let checks = CertificateChecks { gluing, window, daiwei_margin: hitchin_thorpe_margin(&ambient)?, verdict };
    if !checks.window.holds {
        caveats.push("Dai-Wei margin of the ambient manifold is not positive; the obstruction is vacuous".into());
    }
    let (target_chi, target_sigma) = target.unwrap_or((ambient.chi, ambient.sigma));
    Ok(ExampleCertificate {
        format_version: crate::FORMAT_VERSION,
        target_chi,
        target_sigma,
        x1,
        x1_class,
        x2_pieces: X2Pieces { k, genera },
        x2,
        ambient,
        park,
        valid: false,
        checks,
        caveats,
    })
}

/// The minimal symplectic `X_n` homeomorphic to `#^{2n+1}(S^2 x S^2)`.
pub fn baykur_hamada_manifold(n: i64) -> Result<ClosedFourManifold, TopologyError> {
    if n < 5 {
        return Err(TopologyError::NTooSmall { n });
    }
    let chi = narrow(4 * n as i128 + 4)?;
    let b_plus = narrow(2 * n as i128 + 1)?;
    ClosedFourManifold::named(&format!("X_{n}"), chi, 0, b_plus, 0, true)
}

/// `X_n # (S^2 x Sigma_g)`; valid exactly when `g >= (4n + 7) / 6`.
pub fn baykur_hamada(n: i64, g: i64) -> Result<ExampleCertificate, TopologyError> {
    let x1 = baykur_hamada_manifold(n)?;
    if g < 0 {
        return Err(TopologyError::BadGenus { g });
    }
    let caveats = vec![
        "minimality and Seiberg-Witten non-vanishing of X_n are taken from the construction, not recomputed".into(),
    ];
    let mut cert = certify(None, x1, 0, vec![g], None, caveats)?;
    cert.valid = cert.checks.gluing.holds && cert.checks.verdict.obstructed;
    Ok(cert)
}

/// Solves `4 - 4g - 2k = chi2` with `g >= 1`, `k >= 0`, smallest `k` first.
pub fn decompose_x2(chi2: i64) -> Option<(i64, i64)> {
    let c = chi2 as i128;
    (0..=1i128).find_map(|k| {
        let r = 4 - 2 * k - c;
        (r % 4 == 0 && r / 4 >= 1).then_some((r as i64 / 4, k as i64))
    })
}

/// Builds `X1 # X2` with invariants `(chi, sigma)` following the geography recipe.
pub fn enumerate_examples(chi: i64, sigma: i64) -> Result<ExampleCertificate, TopologyError> {
    if (chi as i128 + sigma as i128).rem_euclid(2) != 0 {
        return Err(TopologyError::ParityError { chi, sigma });
    }
    let start = narrow(3 * chi as i128 + 9 * (sigma as i128).abs())?;
    for chi1 in start..=start.saturating_add(SEARCH_WINDOW) {
        let s = chi1 as i128 + sigma as i128;
        if s % 4 != 0 {
            continue;
        }
        let x = narrow(s / 4)?;
        let c = narrow(2 * chi1 as i128 + 3 * sigma as i128)?;
        let park = park_feasible(x, c);
        if !park.feasible {
            continue;
        }
        let chi2 = narrow(chi as i128 + 2 - chi1 as i128)?;
        let Some((g, k)) = decompose_x2(chi2) else { continue };
        let b_plus = narrow(2 * x as i128 - 1)?;
        if b_plus < 2 {
            continue;
        }
        let x1 = ClosedFourManifold::named(&format!("X1(chi_h={x}, c1^2={c})"), chi1, sigma, b_plus, 0, true)?;
        let caveats = vec![park.caveat.clone()];
        let mut cert = certify(Some((chi, sigma)), x1, k, vec![g], Some(park), caveats)?;
        cert.valid = cert.checks.all_hold() && (cert.ambient.chi, cert.ambient.sigma) == (chi, sigma);
        return Ok(cert);
    }
    Err(TopologyError::SearchExhausted { chi, sigma, window: SEARCH_WINDOW })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baykur_hamada_examples() {
        let c = baykur_hamada(5, 5).unwrap();
        assert!(c.valid);
        assert_eq!((c.ambient.chi, c.ambient.sigma, c.x1_class.c1_sq), (6, 0, 48));
        assert_eq!((c.checks.verdict.margin, c.checks.verdict.threshold.as_str()), (12, "16"));
        assert!(c.checks.verdict.obstructed && c.checks.verdict.dai_wei_strict);
        let c = baykur_hamada(5, 4).unwrap();
        assert!(!c.valid);
        assert_eq!((c.checks.gluing.lhs.as_str(), c.checks.gluing.rhs.as_str()), ("14", "16"));
        assert!(matches!(baykur_hamada(4, 10), Err(TopologyError::NTooSmall { n: 4 })));
    }

    #[test]
    fn minimal_genus_three_ways() {
        for n in 5..=50i64 {
            let scan = (0..).find(|&g| baykur_hamada(n, g).unwrap().valid).unwrap();
            let linear = (0..).find(|&g| 12 * g - 6 >= 8 * n + 8).unwrap();
            let ceil = (4 * n + 7 + 5) / 6;
            assert_eq!((scan, linear), (ceil, ceil), "n = {n}");
        }
    }

    #[test]
    fn enumerator_example() {
        let c = enumerate_examples(6, 0).unwrap();
        assert_eq!(c.x1.chi, 32);
        let park = c.park.as_ref().unwrap();
        assert_eq!((park.x, park.c), (8, 64));
        assert_eq!(c.x2.chi, -24);
        assert_eq!((c.x2_pieces.genera.clone(), c.x2_pieces.k), (vec![7], 0));
        assert_eq!((c.checks.gluing.lhs.as_str(), c.checks.gluing.rhs.as_str()), ("26", "64/3"));
        assert_eq!((c.checks.window.lhs.as_str(), c.checks.window.rhs.as_str()), ("32", "26"));
        assert!(c.valid);
        assert_eq!(c.recompute_ambient().unwrap(), (6, 0));
        assert!(matches!(enumerate_examples(1, 0), Err(TopologyError::ParityError { .. })));
    }

    #[test]
    fn zero_target_recomputes_but_misses_the_window() {
        let c = enumerate_examples(0, 0).unwrap();
        assert_eq!(c.recompute_ambient().unwrap(), (0, 0));
        assert!(c.checks.gluing.holds && !c.checks.window.holds && !c.valid);
    }

    #[test]
    fn decomposition_prefers_no_circle_pieces() {
        assert_eq!(decompose_x2(-24), Some((7, 0)));
        assert_eq!(decompose_x2(-2), Some((1, 1)));
        assert_eq!(decompose_x2(0), Some((1, 0)));
        assert_eq!(decompose_x2(2), None);
    }

    #[test]
    fn certificates_round_trip() {
        let c = enumerate_examples(6, 0).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ExampleCertificate>(&text).unwrap(), c);
    }
}
