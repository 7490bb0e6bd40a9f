use super::{GeometryError, MetricJet};
use serde::{Deserialize, Serialize};

/// Ricci eigenvalues in the orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ricci {
    pub t: f64,
    pub theta: f64,
    pub torus: f64,
}

impl Ricci {
    pub fn trace(&self) -> f64 {
        self.t + self.theta + 2.0 * self.torus
    }
}

/// Second fundamental form of the `t = const` slice and its mean curvature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondForm {
    pub ii_theta: f64,
    pub ii_torus: f64,
    pub mean_h: f64,
}

/// The three curvature-plus-`II^2` coefficients of the one-form Bochner formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bochner {
    pub t: f64,
    pub theta: f64,
    pub torus: f64,
}

impl Bochner {
    pub fn min(&self) -> f64 {
        self.t.min(self.theta).min(self.torus)
    }
}

/// All pointwise curvature quantities at one `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub ric_t: f64,
    pub ric_theta: f64,
    pub ric_torus: f64,
    pub scalar: f64,
    pub ii_theta: f64,
    pub ii_torus: f64,
    pub mean_h: f64,
    pub b_t: f64,
    pub b_theta: f64,
    pub b_torus: f64,
}

impl CurvatureReport {
    /// Values in a fixed order, matching [`CurvatureReport::NAMES`].
    pub fn values(&self) -> [f64; 10] {
        [
            self.ric_t,
            self.ric_theta,
            self.ric_torus,
            self.scalar,
            self.ii_theta,
            self.ii_torus,
            self.mean_h,
            self.b_t,
            self.b_theta,
            self.b_torus,
        ]
    }

    pub const NAMES: [&'static str; 10] =
        ["ric_t", "ric_theta", "ric_torus", "scalar", "ii_theta", "ii_torus", "mean_h", "b_t", "b_theta", "b_torus"];
}

pub fn ricci(jet: &MetricJet) -> Result<Ricci, GeometryError> {
    jet.check_interior()?;
    let a = jet.d2phi / jet.phi;
    let b = jet.d2psi / jet.psi;
    let (p, q) = (jet.p(), jet.q());
    Ok(Ricci { t: -a - 2.0 * b, theta: -a - 2.0 * p * q, torus: -b - q * q - p * q })
}

pub fn scalar(jet: &MetricJet) -> Result<f64, GeometryError> {
    jet.check_interior()?;
    let a = jet.d2phi / jet.phi;
    let b = jet.d2psi / jet.psi;
    let (p, q) = (jet.p(), jet.q());
    Ok(-2.0 * a - 4.0 * b - 4.0 * p * q - 2.0 * q * q)
}

/// `II = -(1/2) d_t g_t` on the slice, eigenvalues `(-phi'/phi, -psi'/psi)`,
/// and `h = -(1/2)(phi'/phi + 2 psi'/psi)`.
pub fn second_form(jet: &MetricJet) -> Result<SecondForm, GeometryError> {
    jet.check_interior()?;
    let (p, q) = (jet.p(), jet.q());
    Ok(SecondForm { ii_theta: -p, ii_torus: -q, mean_h: -0.5 * (p + 2.0 * q) })
}

pub fn bochner_coefficients(jet: &MetricJet) -> Result<Bochner, GeometryError> {
    jet.check_interior()?;
    let a = jet.d2phi / jet.phi;
    let b = jet.d2psi / jet.psi;
    let (p, q) = (jet.p(), jet.q());
    Ok(Bochner { t: -a - 2.0 * b + p * p + 2.0 * q * q, theta: -a - 2.0 * p * q + p * p, torus: -b - p * q })
}

/// `max |ric - lambda|` over the three frame eigenvalues.
pub fn einstein_residual(jet: &MetricJet, lambda: f64) -> Result<f64, GeometryError> {
    let r = ricci(jet)?;
    Ok((r.t - lambda).abs().max((r.theta - lambda).abs()).max((r.torus - lambda).abs()))
}

pub fn curvature_report(jet: &MetricJet) -> Result<CurvatureReport, GeometryError> {
    let r = ricci(jet)?;
    let s = scalar(jet)?;
    let ii = second_form(jet)?;
    let b = bochner_coefficients(jet)?;
    Ok(CurvatureReport {
        ric_t: r.t,
        ric_theta: r.theta,
        ric_torus: r.torus,
        scalar: s,
        ii_theta: ii.ii_theta,
        ii_torus: ii.ii_torus,
        mean_h: ii.mean_h,
        b_t: b.t,
        b_theta: b.theta,
        b_torus: b.torus,
    })
}
