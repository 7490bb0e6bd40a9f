//! Energy over mass of invariant one-forms. On the cusp the theta component
//! approaches the sharp constant 1/4 as the bump spreads out.
//!
//! ```text
//! cargo run --release --example one_form_estimate
//! ```

use cusp_einstein::geometry::{ExactCusp, FlatCrossSection};
use cusp_einstein::profile::{search, BuilderOptions};
use cusp_einstein::quadrature::QuadratureOptions;
use cusp_einstein::spectral::{one_form_suite, one_form_test, InvariantOneForm, TestFunction};

fn main() {
    let opts = QuadratureOptions::default();
    let cusp = ExactCusp::new(FlatCrossSection::unit(), 60.0);
    let windows = [(0.0, 60.0)];
    for len in [2.0, 5.0, 10.0, 20.0, 40.0] {
        let support = (1.0, 1.0 + len);
        let mut a = InvariantOneForm::zero(support);
        // Weight e^{-t/2} times a bump makes |f1|^2 dvol flat up to the bump.
        a.f1 = TestFunction::exponential(1.0, -0.5, support).bumped();
        let r = one_form_test(&cusp, &a, &windows, &opts).unwrap();
        println!("theta component, support length {len:>4}: energy/mass = {:.6}", r.ratio.unwrap());
    }
    let p = search(4.0, &BuilderOptions::default()).unwrap().profile;
    let report = one_form_suite(&p, "j=4", 5, 100, 10_000, &opts).unwrap();
    println!(
        "j = 4 uniform window {}: {} forms, {} violations",
        report.parameters["chosen_window"], report.summary.cases, report.summary.violations
    );
}
