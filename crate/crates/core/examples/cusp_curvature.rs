//! Closed-form curvature of the hyperbolic cusp next to the finite-difference
//! oracle, at a few depths.
//!
//! ```text
//! cargo run --release --example cusp_curvature
//! ```

use cusp_einstein::geometry::{
    curvature_report, einstein_residual, fd_curvature_oracle_adaptive, oracle_agreement, ExactCusp, FlatCrossSection,
    MetricJet,
};

fn main() {
    let cusp = ExactCusp::new(FlatCrossSection::unit(), 12.0);
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>8} {:>12} {:>12}",
        "t", "ric", "scalar", "mean_h", "b_t", "residual", "oracle err"
    );
    for t in [0.5, 1.0, 2.0, 4.0, 8.0, 11.0] {
        let jet = MetricJet::hyperbolic(t);
        let c = curvature_report(&jet).unwrap();
        let res = einstein_residual(&jet, -3.0).unwrap();
        let (fd, _) = fd_curvature_oracle_adaptive(&cusp, t).unwrap();
        let a = oracle_agreement(&c, &fd, 1e-6, 1e-8);
        println!(
            "{t:>5} {:>10} {:>10} {:>10} {:>8} {res:>12.1e} {:>12.2e}",
            c.ric_t, c.scalar, c.mean_h, c.b_t, a.worst_relative
        );
    }
}
