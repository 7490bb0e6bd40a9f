use super::{FlatCrossSection, GeometryError, MetricJet};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionKind {
    Cusp,
    Blend,
    Transition,
    Cap,
}

impl RegionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionKind::Cusp => "cusp",
            RegionKind::Blend => "blend",
            RegionKind::Transition => "transition",
            RegionKind::Cap => "cap",
        }
    }
}

/// A maximal interval on which the warping pair has a single closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub kind: RegionKind,
    pub t0: f64,
    pub t1: f64,
}

/// A doubly-warped metric on an interval of the cylinder coordinate.
pub trait WarpedMetric: Sync {
    /// `[t_start, t_end]`; `t_end` may be infinite.
    fn domain(&self) -> (f64, f64);

    /// Whether `phi` vanishes at the end of the domain.
    fn pinched(&self) -> bool;

    /// 2-jet at `t`, which must lie in the domain.
    fn jet(&self, t: f64) -> MetricJet;

    /// Warping values `(phi, psi)` alone.
    fn warps(&self, t: f64) -> (f64, f64) {
        let j = self.jet(t);
        (j.phi, j.psi)
    }

    fn cross(&self) -> FlatCrossSection;

    /// Closed-form pieces in increasing order, covering the domain.
    fn regions(&self) -> Vec<Region>;

    /// Short human-readable identifier recorded in reports.
    fn label(&self) -> String;

    /// Interior points where the second derivatives may fail to be smooth.
    fn breakpoints(&self) -> Vec<f64> {
        let regions = self.regions();
        regions.iter().skip(1).map(|r| r.t0).collect()
    }

    fn jet_checked(&self, t: f64) -> Result<MetricJet, GeometryError> {
        let (lo, hi) = self.domain();
        if !(t >= lo && t <= hi) {
            return Err(GeometryError::OutOfDomain { t, lo, hi });
        }
        Ok(self.jet(t))
    }
}

/// The hyperbolic cusp `dt^2 + e^{-2t} g_{T^3}` on `[0, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCusp {
    pub cross: FlatCrossSection,
    pub t_max: f64,
}

impl ExactCusp {
    pub fn new(cross: FlatCrossSection, t_max: f64) -> Self {
        Self { cross, t_max }
    }

    pub fn infinite(cross: FlatCrossSection) -> Self {
        Self { cross, t_max: f64::INFINITY }
    }
}

impl WarpedMetric for ExactCusp {
    fn domain(&self) -> (f64, f64) {
        (0.0, self.t_max)
    }
    fn pinched(&self) -> bool {
        false
    }
    fn jet(&self, t: f64) -> MetricJet {
        MetricJet::hyperbolic(t)
    }
    fn warps(&self, t: f64) -> (f64, f64) {
        let e = (-t).exp();
        (e, e)
    }
    fn cross(&self) -> FlatCrossSection {
        self.cross
    }
    fn regions(&self) -> Vec<Region> {
        vec![Region { kind: RegionKind::Cusp, t0: 0.0, t1: self.t_max }]
    }
    fn label(&self) -> String {
        format!("exact-cusp(t_max={})", self.t_max)
    }
}

/// A flat solid-torus cap `dt^2 + c^2 g_{T^2} + (t_end - t)^2 g_{S^1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatCap {
    pub t_start: f64,
    pub t_end: f64,
    pub c_level: f64,
    pub cross: FlatCrossSection,
}

impl WarpedMetric for FlatCap {
    fn domain(&self) -> (f64, f64) {
        (self.t_start, self.t_end)
    }
    fn pinched(&self) -> bool {
        true
    }
    fn jet(&self, t: f64) -> MetricJet {
        MetricJet::flat_cap(t, self.t_end, self.c_level)
    }
    fn cross(&self) -> FlatCrossSection {
        self.cross
    }
    fn regions(&self) -> Vec<Region> {
        vec![Region { kind: RegionKind::Cap, t0: self.t_start, t1: self.t_end }]
    }
    fn label(&self) -> String {
        format!("flat-cap(t_end={}, c={})", self.t_end, self.c_level)
    }
}
