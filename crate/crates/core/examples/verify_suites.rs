//! Runs every self-check suite, then shows a broken normalizer being caught.

use real_bundles::verify::{broken_normalizer, orbit_recovery, run_all, supported_groups, DEFAULT_NORMALIZER};

fn main() {
    for report in run_all(20, 0, 1e-8, DEFAULT_NORMALIZER) {
        println!("{report}");
    }
    let report = orbit_recovery(&supported_groups(3), 2, 0, 1e-8, 1e-6, broken_normalizer);
    println!("{}", report.to_string().lines().next().unwrap_or_default());
}
