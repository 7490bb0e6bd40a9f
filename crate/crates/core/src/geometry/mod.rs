//! Doubly-warped cylinder metrics `dt^2 + psi^2 g_{T^2} + phi^2 g_{S^1}`.
//!
//! Every curvature quantity is a function of the 2-jet of `(phi, psi)` at a
//! single `t` ([`MetricJet`]). Tensors are reported as eigenvalues in the
//! orthonormal frame `{d_t, phi^-1 d_theta, psi^-1 d_x, psi^-1 d_y}`.

mod curvature;
mod grid;
mod integrals;
mod jet;
mod metric;
mod oracle;

pub use curvature::{
    bochner_coefficients, curvature_report, einstein_residual, ricci, scalar, second_form, Bochner, CurvatureReport,
    Ricci, SecondForm,
};
pub use grid::{sample_grid, uniform_grid, write_grid_csv, GridRow, CSV_HEADER};
pub use integrals::{cusp_volume, scalar_budget, volume_density};
pub use jet::{FlatCrossSection, MetricJet};
pub use metric::{ExactCusp, FlatCap, Region, RegionKind, WarpedMetric};
pub use oracle::{
    fd_curvature_oracle, fd_curvature_oracle_adaptive, fd_curvature_oracle_detailed, oracle_agreement, suggested_step,
    Agreement, FdOracleOutput,
};

use crate::quadrature::QuadratureError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("phi vanishes at t = {t}: frame curvature is undefined at the pinch point")]
    PinchPoint { t: f64 },
    #[error("jet field {field} is not finite at t = {t}")]
    NonFinite { field: &'static str, t: f64 },
    #[error("warping function {field} is not positive at t = {t}")]
    NonPositiveWarp { field: &'static str, t: f64 },
    #[error("t = {t} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },
    #[error("stencil [{lo}, {hi}] leaves the domain for step h = {h}")]
    StepTooLarge { h: f64, lo: f64, hi: f64 },
    #[error("finite-difference oracle fault at t = {t}: {detail}")]
    OracleFault { t: f64, detail: String },
    #[error("invalid cross-section: {0}")]
    BadCrossSection(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("csv output failed: {0}")]
    Csv(String),
}
