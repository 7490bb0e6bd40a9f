//! Pin(2)-monopole dimensions and gluing along S^1 x Y and S^2 x Sigma_g.
//!
//! ```text
//! cargo run --release --example pin2_bookkeeping
//! ```

use cusp_einstein::topology::{
    pin2_dimension, pin2_gluing, standard_piece, ClosedFourManifold, PinTwoData, StandardKind,
};

fn main() {
    for (b0, b1, bp, c, sigma) in [(0, 0, 0, -16, -16), (0, 0, 1, 4, 0), (1, 3, 2, 12, -4), (0, 2, 3, 5, 0)] {
        let data = PinTwoData { b0_l: b0, b1_l: b1, bplus_l: bp, c1_sq_e: c };
        match pin2_dimension(&data, sigma) {
            Ok(d) => println!("b(l) = ({b0}, {b1}, {bp}), c1(E)^2 = {c}, sigma = {sigma}: d = {d}"),
            Err(e) => println!("b(l) = ({b0}, {b1}, {bp}), c1(E)^2 = {c}, sigma = {sigma}: {e}"),
        }
    }
    let x1 = ClosedFourManifold::named("K3", 24, -16, 3, 0, true).unwrap();
    let pieces =
        [standard_piece(StandardKind::S1CrossY, 2).unwrap(), standard_piece(StandardKind::S2CrossSigma, 3).unwrap()];
    let g = pin2_gluing(&x1, 0, true, &pieces).unwrap();
    println!(
        "{}: chi = {}, sigma = {}, b+ = {}, c1^2 = {}, on the double cover {}",
        g.ambient.name, g.ambient.chi, g.ambient.sigma, g.ambient.b_plus, g.c1_sq, g.double_cover_c1_sq
    );
    let cp2 = ClosedFourManifold::named("CP^2", 3, 1, 1, 0, true).unwrap();
    println!("CP^2 as X1: {}", pin2_gluing(&cp2, 9, true, &pieces).unwrap_err());
}
