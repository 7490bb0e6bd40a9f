//! Minimal genus g with X_n # S^2 x Sigma_g obstructed, for a range of n.
//!
//! ```text
//! cargo run --release --example baykur_hamada -- 5 20
//! ```

use cusp_einstein::topology::baykur_hamada;

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (lo, hi) = match args.as_slice() {
        [a, b, ..] => (*a, *b),
        [a] => (*a, *a),
        [] => (5, 15),
    };
    for n in lo..=hi {
        let g = (0..=n + 10).find(|&g| baykur_hamada(n, g).map(|c| c.valid).unwrap_or(false));
        match g.map(|g| (g, baykur_hamada(n, g).unwrap())) {
            Some((g, c)) => println!(
                "n = {n:>3}: g = {g:>3}, ambient (chi, sigma) = ({}, {}), margin {} vs {}, caveats {}",
                c.ambient.chi,
                c.ambient.sigma,
                c.checks.verdict.margin,
                c.checks.verdict.threshold,
                c.caveats.len()
            ),
            None => println!("n = {n:>3}: no genus found"),
        }
    }
}
