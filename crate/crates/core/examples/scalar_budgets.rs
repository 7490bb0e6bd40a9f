//! Scalar-curvature budgets of the cusp and of searched profiles, and the
//! obstruction chain for the (6, 0) ambient with c1^2 = 48.
//!
//! ```text
//! cargo run --release --example scalar_budgets
//! ```

use cusp_einstein::geometry::{ExactCusp, FlatCrossSection};
use cusp_einstein::profile::{search, BuilderOptions};
use cusp_einstein::quadrature::QuadratureOptions;
use cusp_einstein::spectral::{obstruction_chain, sw_budgets};

fn main() {
    let opts = QuadratureOptions::default();
    let cusp = ExactCusp::infinite(FlatCrossSection::unit());
    let b = sw_budgets(&cusp, f64::INFINITY, &opts).unwrap();
    println!("cusp: l4 = {:.10}  volume = {:.10}  sup|phi|^2 = {}", b.l4_budget, b.volume, b.sup_phi_sq);
    let chain = obstruction_chain(&b, 48, 6, 0);
    println!(
        "chain (chi, sigma) = (6, 0): margin {} vs threshold {}, fires: {}",
        chain.margin, chain.threshold, chain.obstruction_fires
    );
    for j in [2.0, 4.0, 6.0] {
        let p = search(j, &BuilderOptions::default()).unwrap().profile;
        let b = sw_budgets(&p, p.t_end, &opts).unwrap();
        let parts: Vec<String> = b.regions.iter().map(|r| format!("{} {:.6}", r.kind.as_str(), r.l4)).collect();
        println!("j = {j}: l4 = {:.6}  volume = {:.6}  [{}]", b.l4_budget, b.volume, parts.join(", "));
    }
}
