//! Writes the curvature grid of a searched profile as CSV to standard output.
//!
//! ```text
//! cargo run --release --example grid_dump -- 4 200 > grid.csv
//! ```

use cusp_einstein::geometry::{sample_grid, write_grid_csv};
use cusp_einstein::profile::{search, verification_points, BuilderOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let j: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(4.0);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let profile = search(j, &BuilderOptions::default()).expect("search runs").profile;
    let (ts, _) = verification_points(&profile, n).expect("grid");
    let rows = sample_grid(&profile, &ts).expect("curvature on grid");
    write_grid_csv(&rows, std::io::stdout().lock()).expect("stdout");
}
