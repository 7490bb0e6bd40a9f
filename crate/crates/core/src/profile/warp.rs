use super::hermite::{eval_quintic, eval_quintic_value, quintic_bridge, quintic_term_scale, Jet2};
use super::ProfileError;
use crate::geometry::{FlatCrossSection, MetricJet, Region, RegionKind, WarpedMetric};
use crate::FORMAT_VERSION;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// A C^2 bump `amplitude * (1 - x^2)^3` on `[lo, hi]`, with `x` mapped to `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub lo: f64,
    pub hi: f64,
    pub amplitude: f64,
}

impl Bump {
    pub fn jet(&self, t: f64) -> Jet2 {
        if t <= self.lo || t >= self.hi {
            return (0.0, 0.0, 0.0);
        }
        let w = 0.5 * (self.hi - self.lo);
        let x = (t - 0.5 * (self.lo + self.hi)) / w;
        let u = 1.0 - x * x;
        let a = self.amplitude;
        (a * u * u * u, -6.0 * a * x * u * u / w, -6.0 * a * u * (1.0 - 5.0 * x * x) / (w * w))
    }
}

/// A sum of bumps, used as a relative perturbation of a warping function.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub bumps: Vec<Bump>,
}

impl Perturbation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn bump(lo: f64, hi: f64, amplitude: f64) -> Self {
        Self { bumps: vec![Bump { lo, hi, amplitude }] }
    }

    pub fn is_zero(&self) -> bool {
        self.bumps.iter().all(|b| b.amplitude == 0.0)
    }

    pub fn jet(&self, t: f64) -> Jet2 {
        self.bumps.iter().fold((0.0, 0.0, 0.0), |acc, b| {
            let (v, d, dd) = b.jet(t);
            (acc.0 + v, acc.1 + d, acc.2 + dd)
        })
    }

    /// Sampled sup norms of the perturbation and its first two derivatives.
    pub fn sup_norms(&self) -> [f64; 3] {
        let mut n = [0.0f64; 3];
        for b in &self.bumps {
            for i in 0..=2000 {
                let t = b.lo + (b.hi - b.lo) * i as f64 / 2000.0;
                let (v, d, dd) = self.jet(t);
                n[0] = n[0].max(v.abs());
                n[1] = n[1].max(d.abs());
                n[2] = n[2].max(dd.abs());
            }
        }
        n
    }

    pub(crate) fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.bumps.iter().flat_map(|b| [b.lo, b.hi])
    }
}

/// Background metric data blended into the model near the thick part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Background {
    pub cutoff_center: f64,
    pub dphi: Perturbation,
    pub dpsi: Perturbation,
}

/// `chi(s)`: 1 for `s <= 0`, 0 for `s >= 1`, a degree-7 smoothstep between.
pub fn cutoff(s: f64) -> Jet2 {
    if s <= 0.0 {
        return (1.0, 0.0, 0.0);
    }
    if s >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    let x = s;
    let v = x.powi(4) * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)));
    let d = 140.0 * x.powi(3) * (1.0 - x).powi(3);
    let dd = 420.0 * x * x * (1.0 - x).powi(2) * (1.0 - 2.0 * x);
    (1.0 - v, -d, -dd)
}

/// Approximating metric: exact cusp on `[0, j]`, quintic bridges on
/// `[j, j + epsilon]`, and a flat cap `phi = t_end - t`, `psi = c_level` up to
/// the pinch at `t_end`.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpProfile {
    pub j: f64,
    pub epsilon: f64,
    pub t_end: f64,
    pub c_level: f64,
    pub phi_bridge: [f64; 6],
    pub psi_bridge: [f64; 6],
    pub cross: FlatCrossSection,
    pub background: Option<Background>,
}

#[derive(Serialize, Deserialize)]
struct ProfileFile {
    format_version: u32,
    j: f64,
    epsilon: f64,
    t_end: f64,
    c_level: f64,
    phi_bridge: [f64; 6],
    psi_bridge: [f64; 6],
    cross: FlatCrossSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    background: Option<Background>,
}

impl WarpProfile {
    /// Solves both bridges for depth `j`, width `epsilon`, bridge end value
    /// `phi_e = phi(j + epsilon)` and cap level `c_level`.
    pub fn from_parameters(
        j: f64,
        epsilon: f64,
        phi_e: f64,
        c_level: f64,
        cross: FlatCrossSection,
    ) -> Result<Self, ProfileError> {
        let e = (-j).exp();
        let start = (e, -e, e);
        let phi_bridge = quintic_bridge(epsilon, start, (phi_e, -1.0, 0.0));
        let psi_bridge = quintic_bridge(epsilon, start, (c_level, 0.0, 0.0));
        let p =
            Self { j, epsilon, t_end: j + epsilon + phi_e, c_level, phi_bridge, psi_bridge, cross, background: None };
        p.validate()?;
        Ok(p)
    }

    /// `phi(j + epsilon)`, the length of the cap.
    pub fn cap_length(&self) -> f64 {
        self.t_end - (self.j + self.epsilon)
    }

    /// Structural checks on parameters and joints.
    pub fn validate(&self) -> Result<(), ProfileError> {
        let bad = |m: String| Err(ProfileError::InvalidProfile(m));
        let nums = [self.j, self.epsilon, self.t_end, self.c_level];
        if !nums.iter().chain(&self.phi_bridge).chain(&self.psi_bridge).all(|x| x.is_finite()) {
            return bad("non-finite parameter".into());
        }
        if self.j < 0.0 || self.epsilon <= 0.0 {
            return bad(format!("need j >= 0 and epsilon > 0, got j = {}, epsilon = {}", self.j, self.epsilon));
        }
        let e = (-self.j).exp();
        if !(self.c_level > 0.0 && self.c_level <= e) {
            return bad(format!("c_level = {} outside (0, e^-j = {e}]", self.c_level));
        }
        if self.cap_length() <= 0.0 {
            return bad(format!("t_end = {} leaves no cap", self.t_end));
        }
        self.cross.validate().map_err(|e| ProfileError::InvalidProfile(e.to_string()))?;
        let mismatch = self.joint_mismatch();
        if mismatch > 1e-12 {
            return bad(format!("joint mismatch {mismatch:e} exceeds 1e-12"));
        }
        if let Some(bg) = &self.background {
            if !(bg.cutoff_center >= 0.0 && bg.cutoff_center + 1.0 <= self.j) {
                return bad(format!(
                    "blend window [{}, {}] not inside [0, j]",
                    bg.cutoff_center,
                    bg.cutoff_center + 1.0
                ));
            }
        }
        Ok(())
    }

    /// Largest 2-jet discrepancy across the two joints, each scaled by
    /// `max(1, |left|, |right|, bridge term size)`.
    pub fn joint_mismatch(&self) -> f64 {
        let e = (-self.j).exp();
        let cusp = (e, -e, e);
        let h = self.epsilon;
        let side = |c: &[f64; 6], s: f64| (eval_quintic(c, s), quintic_term_scale(c, s));
        let pairs = [
            (cusp, side(&self.phi_bridge, 0.0)),
            (cusp, side(&self.psi_bridge, 0.0)),
            ((self.cap_length(), -1.0, 0.0), side(&self.phi_bridge, h)),
            ((self.c_level, 0.0, 0.0), side(&self.psi_bridge, h)),
        ];
        let mut worst = 0.0f64;
        for (a, (b, scale)) in pairs {
            for (x, y, s) in [(a.0, b.0, scale.0), (a.1, b.1, scale.1), (a.2, b.2, scale.2)] {
                worst = worst.max((x - y).abs() / 1f64.max(x.abs()).max(y.abs()).max(s));
            }
        }
        worst
    }

    /// The unblended model jet.
    fn model_jet(&self, t: f64) -> MetricJet {
        if t <= self.j {
            MetricJet::hyperbolic(t)
        } else if t < self.j + self.epsilon {
            let s = t - self.j;
            let (phi, dphi, d2phi) = eval_quintic(&self.phi_bridge, s);
            let (psi, dpsi, d2psi) = eval_quintic(&self.psi_bridge, s);
            MetricJet { t, phi, dphi, d2phi, psi, dpsi, d2psi }
        } else {
            MetricJet::flat_cap(t, self.t_end, self.c_level)
        }
    }

    fn model_warps(&self, t: f64) -> (f64, f64) {
        if t <= self.j {
            let e = (-t).exp();
            (e, e)
        } else if t < self.j + self.epsilon {
            let s = t - self.j;
            (eval_quintic_value(&self.phi_bridge, s), eval_quintic_value(&self.psi_bridge, s))
        } else {
            (self.t_end - t, self.c_level)
        }
    }

    pub fn save_json(&self) -> String {
        let file = ProfileFile {
            format_version: FORMAT_VERSION,
            j: self.j,
            epsilon: self.epsilon,
            t_end: self.t_end,
            c_level: self.c_level,
            phi_bridge: self.phi_bridge,
            psi_bridge: self.psi_bridge,
            cross: self.cross,
            background: self.background.clone(),
        };
        serde_json::to_string_pretty(&file).expect("profile serializes")
    }

    pub fn load_json(text: &str) -> Result<Self, ProfileError> {
        let f: ProfileFile = serde_json::from_str(text).map_err(|e| ProfileError::Json(e.to_string()))?;
        if f.format_version != FORMAT_VERSION {
            return Err(ProfileError::InvalidProfile(format!("unsupported format_version {}", f.format_version)));
        }
        let p = Self {
            j: f.j,
            epsilon: f.epsilon,
            t_end: f.t_end,
            c_level: f.c_level,
            phi_bridge: f.phi_bridge,
            psi_bridge: f.psi_bridge,
            cross: f.cross,
            background: f.background,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn save(&self, path: &Path) -> Result<(), ProfileError> {
        std::fs::write(path, self.save_json() + "\n").map_err(|e| ProfileError::Io(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ProfileError> {
        let text = std::fs::read_to_string(path).map_err(|e| ProfileError::Io(format!("{}: {e}", path.display())))?;
        Self::load_json(&text)
    }
}

/// Blends the squared warping functions: `F = chi F_bg + (1 - chi) F_model`.
fn blend_component(chi: Jet2, bg: Jet2, model: Jet2) -> Jet2 {
    let sq = |(v, d, dd): Jet2| (v * v, 2.0 * v * d, 2.0 * (d * d + v * dd));
    let (a, a1, a2) = sq(bg);
    let (b, b1, b2) = sq(model);
    let (c, c1, c2) = chi;
    let f = b + c * (a - b);
    let f1 = b1 + c1 * (a - b) + c * (a1 - b1);
    let f2 = b2 + c2 * (a - b) + 2.0 * c1 * (a1 - b1) + c * (a2 - b2);
    let v = f.sqrt();
    let d = f1 / (2.0 * v);
    (v, d, (0.5 * f2 - d * d) / v)
}

/// `e^{-t} (1 + delta)` and its derivatives.
fn perturbed_cusp(t: f64, delta: Jet2) -> Jet2 {
    let e = (-t).exp();
    let (v, d, dd) = delta;
    (e * (1.0 + v), e * (d - 1.0 - v), e * (1.0 + v - 2.0 * d + dd))
}

impl WarpedMetric for WarpProfile {
    fn domain(&self) -> (f64, f64) {
        (0.0, self.t_end)
    }

    fn pinched(&self) -> bool {
        true
    }

    fn jet(&self, t: f64) -> MetricJet {
        let model = self.model_jet(t);
        let Some(bg) = &self.background else { return model };
        let chi = cutoff(t - bg.cutoff_center);
        if chi.0 == 0.0 && chi.1 == 0.0 && chi.2 == 0.0 {
            return model;
        }
        let phi_bg = perturbed_cusp(t, bg.dphi.jet(t));
        let psi_bg = perturbed_cusp(t, bg.dpsi.jet(t));
        let (phi, dphi, d2phi) = blend_component(chi, phi_bg, (model.phi, model.dphi, model.d2phi));
        let (psi, dpsi, d2psi) = blend_component(chi, psi_bg, (model.psi, model.dpsi, model.d2psi));
        MetricJet { t, phi, dphi, d2phi, psi, dpsi, d2psi }
    }

    fn warps(&self, t: f64) -> (f64, f64) {
        let (phi, psi) = self.model_warps(t);
        let Some(bg) = &self.background else { return (phi, psi) };
        let (chi, _, _) = cutoff(t - bg.cutoff_center);
        if chi == 0.0 {
            return (phi, psi);
        }
        let e = (-t).exp();
        let phi_bg = e * (1.0 + bg.dphi.jet(t).0);
        let psi_bg = e * (1.0 + bg.dpsi.jet(t).0);
        (
            (chi * phi_bg * phi_bg + (1.0 - chi) * phi * phi).sqrt(),
            (chi * psi_bg * psi_bg + (1.0 - chi) * psi * psi).sqrt(),
        )
    }

    fn cross(&self) -> FlatCrossSection {
        self.cross
    }

    fn regions(&self) -> Vec<Region> {
        let mut out = Vec::with_capacity(4);
        let mut cusp_start = 0.0;
        if let Some(bg) = &self.background {
            cusp_start = bg.cutoff_center + 1.0;
            out.push(Region { kind: RegionKind::Blend, t0: 0.0, t1: cusp_start });
        }
        let bridge_end = self.j + self.epsilon;
        out.push(Region { kind: RegionKind::Cusp, t0: cusp_start, t1: self.j });
        out.push(Region { kind: RegionKind::Transition, t0: self.j, t1: bridge_end });
        out.push(Region { kind: RegionKind::Cap, t0: bridge_end, t1: self.t_end });
        out
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut b = vec![self.j, self.j + self.epsilon];
        if let Some(bg) = &self.background {
            b.extend([bg.cutoff_center, bg.cutoff_center + 1.0]);
            b.extend(bg.dphi.breakpoints().chain(bg.dpsi.breakpoints()));
        }
        b.retain(|&x| x > 0.0 && x < self.t_end);
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    fn label(&self) -> String {
        let kind = if self.background.is_some() { "blended-profile" } else { "profile" };
        format!("{kind}(j={}, epsilon={}, c_level={})", self.j, self.epsilon, self.c_level)
    }
}
