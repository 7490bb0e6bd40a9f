//! Blends a small perturbation of the hyperbolic background into a searched
//! profile and reports how far each constraint minimum moves.
//!
//! ```text
//! cargo run --release --example blend_background
//! ```

use cusp_einstein::profile::{blend, search, BlendOptions, BuilderOptions, Perturbation, Slacks};

fn main() {
    let base = search(6.0, &BuilderOptions::default()).unwrap().profile;
    for amp in [1e-6, 1e-4, 1e-2, 0.3] {
        let dpsi = Perturbation::bump(1.0, 2.0, amp);
        match blend(&base, Perturbation::zero(), dpsi, 4.0, &BlendOptions::default()) {
            Ok(out) => {
                let drops: Vec<String> = out
                    .base_report
                    .slack_minima()
                    .iter()
                    .zip(out.report.slack_minima())
                    .zip(Slacks::NAMES)
                    .map(|((b, n), name)| format!("{name} {:+.1e}", b.value - n.value))
                    .collect();
                println!("amplitude {amp:.0e}: accepted, drops [{}]", drops.join(", "));
            }
            Err(e) => println!("amplitude {amp:.0e}: {e}"),
        }
    }
}
