//! Twisting the structure by Ad_k shifts the central class by σ(k)k and
//! matches classes one to one.

use real_bundles::linalg::{identity, standard_j};
use real_bundles::sequence::inner_twist;
use real_bundles::GroupSpec;

fn main() -> real_bundles::Result<()> {
    let group: GroupSpec = "gl2-conj".parse()?;
    for (what, k) in [("identity", identity(2)), ("J", standard_j(1))] {
        let report = inner_twist(&group, &k, 20, 3)?;
        println!(
            "{group} twisted by {what}: sigma(k)k = {}, bijective = {}",
            report.c, report.bijective
        );
        for pair in &report.pairs {
            println!(
                "  c={} {} -> c={} (back to {})",
                pair.c, pair.class, pair.twisted_c, pair.round_trip
            );
        }
    }
    Ok(())
}
