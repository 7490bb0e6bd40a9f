//! Weighted Poincaré inequality, the one-form estimate with constant `1/4`,
//! and scalar-curvature budgets of warped cusp metrics.
//!
//! Everything is reduced to one-dimensional weighted integrals in `t` against
//! the volume density `v3 phi psi^2`.

mod budgets;
mod chain;
mod one_form;
mod poincare;
mod report;
mod testfn;

pub use budgets::{sw_budgets, BudgetReport, RegionBudget};
pub use chain::{obstruction_chain, ChainReport};
pub use one_form::{
    codifferential, codifferential_two, function_adjointness, one_form_test, two_form_adjointness, AdjointCheck,
    InvariantOneForm, InvariantTwoForm, OneFormResult, ADJOINT_TOLERANCE, ONE_FORM_TOLERANCE,
};
pub use poincare::{mean_curvature_infimum, poincare_function_test, poincare_with_h0, PoincareResult};
pub use report::{one_form_suite, poincare_suite, CaseRecord, SuiteReport, SuiteSummary, MAX_MODES};
pub use testfn::{TestFunction, TestKind};

use crate::geometry::GeometryError;
use crate::quadrature::QuadratureError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("mean curvature infimum h0 = {h0} is not positive")]
    NonPositiveMeanCurvature { h0: f64 },
    #[error("adjointness self-test failed for {pairing}: {lhs} vs {rhs} (relative gap {relative_gap:e})")]
    AdjointnessFault { pairing: String, lhs: f64, rhs: f64, relative_gap: f64 },
    #[error("support [{t1}, {t2}] is not inside a uniform window {windows:?}")]
    SupportError { t1: f64, t2: f64, windows: Vec<(f64, f64)> },
    #[error("{0}")]
    UsageError(String),
}
