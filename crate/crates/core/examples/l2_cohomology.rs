//! Reduced L^2 cohomology from Betti numbers and the torus pairing matrix.
//!
//! ```text
//! cargo run --release --example l2_cohomology
//! ```

use cusp_einstein::topology::l2_cohomology_dims;

fn main() {
    let cases: [(&str, [i64; 5], Vec<Vec<i64>>, [i64; 5]); 3] = [
        ("trivial pairing", [1, 0, 5, 0, 0], vec![vec![0; 5]; 2], [0, 0, 0, 1, 0]),
        ("rank one", [1, 0, 4, 0, 0], vec![vec![2, 4], vec![1, 2]], [0, 0, 0, 2, 0]),
        ("rank two", [1, 1, 6, 1, 0], vec![vec![1, 0, 3], vec![0, 1, -1], vec![1, 1, 2]], [0, 1, 2, 3, 0]),
    ];
    for (label, betti, pairing, relative) in cases {
        let d = l2_cohomology_dims(&betti, &pairing, &relative).unwrap();
        println!("{label:<16} rank {}  dims {:?}", d.pairing_rank, d.dims);
    }
}
