//! The weighted Poincare inequality on the exact cusp: the equality case,
//! the constant function, and a seeded random suite on a searched profile.
//!
//! ```text
//! cargo run --release --example poincare_check
//! ```

use cusp_einstein::geometry::{ExactCusp, FlatCrossSection};
use cusp_einstein::profile::{search, BuilderOptions};
use cusp_einstein::quadrature::QuadratureOptions;
use cusp_einstein::spectral::{poincare_function_test, poincare_suite, TestFunction};

fn main() {
    let opts = QuadratureOptions::default();
    let cusp = ExactCusp::infinite(FlatCrossSection::unit());
    for (label, f) in [
        ("e^(3t/2)", TestFunction::exponential(1.0, 1.5, (0.0, 4.0))),
        ("1", TestFunction::constant(1.0, (0.0, 4.0))),
        ("e^t", TestFunction::exponential(1.0, 1.0, (0.0, 4.0))),
    ] {
        let r = poincare_function_test(&cusp, &f, 4.0, &opts).unwrap();
        println!(
            "f = {label:<9} h0 = {}  lhs = {:+.10}  rhs = {:+.10}  margin = {:+.3e}",
            r.h0,
            r.lhs,
            r.rhs,
            r.margin()
        );
    }
    let p = search(4.0, &BuilderOptions::default()).unwrap().profile;
    let t = p.j + p.epsilon + 0.5 * p.cap_length();
    let report = poincare_suite(&p, "j=4", 11, 200, t, &opts).unwrap();
    println!(
        "j = 4, T = {t:.6}: {} cases, {} violations, smallest margin {:.3e}",
        report.summary.cases,
        report.summary.violations,
        report.summary.min_margin.unwrap_or(f64::NAN)
    );
}
