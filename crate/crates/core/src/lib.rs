//! Curvature, inequality and obstruction checks for asymptotically hyperbolic
//! Einstein metrics on 4-manifolds with `T^3` cusps.
//!
//! The crate has four computational layers:
//!
//! * [`geometry`] evaluates doubly-warped cylinder metrics
//!   `dt^2 + psi^2 g_{T^2} + phi^2 g_{S^1}` and their curvature, with an
//!   independent finite-difference oracle.
//! * [`profile`] constructs and verifies the cusp / transition / flat-cap
//!   warping profiles that approximate a cusp by closed manifolds.
//! * [`spectral`] checks the weighted Poincaré inequality, the one-form
//!   estimate with constant `1/4`, and scalar-curvature budgets.
//! * [`topology`] does exact integer bookkeeping for 4-manifold invariants,
//!   geography, and obstruction verdicts.
//!
//! [`suite`] bundles the acceptance checks and [`cli`] exposes everything on
//! the command line.

pub mod cli;
pub mod geometry;
pub mod profile;
pub mod quadrature;
pub mod spectral;
pub mod suite;
pub mod topology;

/// Version stamped into every serialized artifact.
pub const FORMAT_VERSION: u32 = 1;
