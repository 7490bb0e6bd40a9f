use super::GeometryError;
use serde::{Deserialize, Serialize};

/// Pointwise 2-jet of the warping pair at coordinate `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricJet {
    pub t: f64,
    pub phi: f64,
    pub dphi: f64,
    pub d2phi: f64,
    pub psi: f64,
    pub dpsi: f64,
    pub d2psi: f64,
}

impl MetricJet {
    /// The exact cusp `phi = psi = e^{-t}`.
    pub fn hyperbolic(t: f64) -> Self {
        let e = (-t).exp();
        Self { t, phi: e, dphi: -e, d2phi: e, psi: e, dpsi: -e, d2psi: e }
    }

    /// The flat cap `phi = t_end - t`, `psi = c_level`.
    pub fn flat_cap(t: f64, t_end: f64, c_level: f64) -> Self {
        Self { t, phi: t_end - t, dphi: -1.0, d2phi: 0.0, psi: c_level, dpsi: 0.0, d2psi: 0.0 }
    }

    /// Checks finiteness and positivity; `phi = 0` is reported as a pinch point.
    pub fn check_interior(&self) -> Result<(), GeometryError> {
        let fields = [
            ("t", self.t),
            ("phi", self.phi),
            ("dphi", self.dphi),
            ("d2phi", self.d2phi),
            ("psi", self.psi),
            ("dpsi", self.dpsi),
            ("d2psi", self.d2psi),
        ];
        if let Some((field, _)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(GeometryError::NonFinite { field, t: self.t });
        }
        if self.psi <= 0.0 {
            return Err(GeometryError::NonPositiveWarp { field: "psi", t: self.t });
        }
        if self.phi == 0.0 {
            return Err(GeometryError::PinchPoint { t: self.t });
        }
        if self.phi < 0.0 {
            return Err(GeometryError::NonPositiveWarp { field: "phi", t: self.t });
        }
        Ok(())
    }

    /// `phi'/phi`.
    pub fn p(&self) -> f64 {
        self.dphi / self.phi
    }

    /// `psi'/psi`.
    pub fn q(&self) -> f64 {
        self.dpsi / self.psi
    }
}

/// Volume data of the flat `T^3 = S^1 x T^2` cross-section at unit scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatCrossSection {
    pub v3: f64,
    pub circle_len: f64,
    pub torus_area: f64,
}

impl FlatCrossSection {
    pub fn new(circle_len: f64, torus_area: f64) -> Result<Self, GeometryError> {
        Self::from_parts(circle_len * torus_area, circle_len, torus_area)
    }

    /// Unit volume with a circle of length `2 pi`, the smooth-closing convention.
    pub fn unit() -> Self {
        let circle_len = std::f64::consts::TAU;
        Self { v3: 1.0, circle_len, torus_area: 1.0 / circle_len }
    }

    pub fn from_parts(v3: f64, circle_len: f64, torus_area: f64) -> Result<Self, GeometryError> {
        let s = Self { v3, circle_len, torus_area };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let ok = [self.v3, self.circle_len, self.torus_area].iter().all(|x| x.is_finite() && *x > 0.0);
        if !ok {
            return Err(GeometryError::BadCrossSection("all volumes must be positive".into()));
        }
        if (self.v3 - self.circle_len * self.torus_area).abs() > 1e-12 * self.v3 {
            return Err(GeometryError::BadCrossSection(format!(
                "v3 = {} differs from circle_len * torus_area = {}",
                self.v3,
                self.circle_len * self.torus_area
            )));
        }
        Ok(())
    }

    /// A circle of length other than `2 pi` closes up with a cone angle.
    pub fn is_orbifold_cap(&self) -> bool {
        (self.circle_len - std::f64::consts::TAU).abs() > 1e-12
    }
}

impl Default for FlatCrossSection {
    fn default() -> Self {
        Self::unit()
    }
}
