//! The approximating family: exact cusp, quintic transition, flat pinched cap.

mod blend;
mod builder;
pub mod hermite;
mod verify;
mod warp;

pub use blend::{blend, BlendOptions, BlendOutcome};
pub use builder::{build, search, BuilderOptions, SearchOutcome};
pub use verify::{
    uniform_window, verification_points, verify, verify_with_tolerance, ConstraintReport, Extremum, Slacks,
    SoftPsiReport, Violation, HARD_TOLERANCE,
};
pub use warp::{cutoff, Background, Bump, Perturbation, WarpProfile};

use crate::geometry::GeometryError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProfileError {
    #[error("depth j = {j} is below the minimum depth 2")]
    BadDepth { j: f64 },
    #[error("no feasible profile at depth j = {j}: {constraint} has slack {slack:e} at t = {t}")]
    Infeasible { j: f64, constraint: String, t: f64, slack: f64, best: Option<Box<SearchOutcome>> },
    #[error("background perturbation too large: {constraint} drops by {drop:e} at t = {t}")]
    PerturbationTooLarge { constraint: String, t: f64, drop: f64 },
    #[error("usage error: {0}")]
    UsageError(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("profile json: {0}")]
    Json(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
