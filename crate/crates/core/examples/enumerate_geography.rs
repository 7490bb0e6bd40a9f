//! Certificates for a box of geography targets, marking where either
//! hypothesis check fails.
//!
//! ```text
//! cargo run --release --example enumerate_geography
//! ```

use cusp_einstein::topology::enumerate_examples;

fn main() {
    println!("rows chi = 20..-20 step 4, columns sigma = -10..10 step 2; V valid, g gluing hypothesis only, x neither");
    for chi in (-20..=20i64).rev().step_by(4) {
        let row: String = (-10..=10i64)
            .step_by(2)
            .map(|sigma| match enumerate_examples(chi, sigma) {
                Ok(c) if c.valid => 'V',
                Ok(c) if c.checks.gluing.holds => 'g',
                Ok(_) => 'x',
                Err(_) => '?',
            })
            .collect();
        println!("{chi:>4} {row}");
    }
    let c = enumerate_examples(6, 0).unwrap();
    println!("{}", serde_json::to_string_pretty(&c).unwrap());
}
