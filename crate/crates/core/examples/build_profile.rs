//! Runs the feasibility search for a range of depths and prints the best
//! candidate's constraint minima.
//!
//! ```text
//! cargo run --release --example build_profile -- 2 10
//! ```

use cusp_einstein::profile::{build, search, BuilderOptions, ProfileError};
use std::time::Instant;

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (lo, hi) = match args.as_slice() {
        [a, b, ..] => (*a as i64, *b as i64),
        [a] => (*a as i64, *a as i64),
        [] => (2, 6),
    };
    let opts = BuilderOptions::default();
    for j in lo..=hi {
        let j = j as f64;
        let start = Instant::now();
        match search(j, &opts) {
            Ok(out) => {
                let p = &out.profile;
                let r = &out.report;
                println!(
                    "j={j:>4}  eps={:.3e}  cap={:.3e}  c/e^-j={:.4}  pass={}  a1={:+.3e}  a2={:+.3e}  b=({:+.3e}, {:+.3e}, {:+.3e})  h={:.4}  inf_s={:+.3e}  [{:.2?}]",
                    p.epsilon,
                    p.cap_length(),
                    p.c_level * j.exp(),
                    r.pass,
                    r.min_slack_a1.value,
                    r.min_slack_a2.value,
                    r.min_b_t.value,
                    r.min_b_theta.value,
                    r.min_b_torus.value,
                    r.min_mean_h.value,
                    r.inf_scalar.value,
                    start.elapsed()
                );
            }
            Err(e) => println!("j={j}: {e}"),
        }
    }
    match build(2.0, &opts) {
        Ok(_) => println!("build(2): feasible"),
        Err(ProfileError::Infeasible { constraint, t, slack, .. }) => {
            println!("build(2): infeasible, worst constraint {constraint} with slack {slack:.4e} at t = {t:.6}")
        }
        Err(e) => println!("build(2): {e}"),
    }
}
