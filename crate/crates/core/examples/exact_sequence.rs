//! The sequence H¹(Z) → H¹_c(G) → H¹(G_ad) → H²(Z) for GL(n) in both
//! structures, with the compact-type displays for n odd and even.

use real_bundles::sequence::verify_exact_sequence;
use real_bundles::GroupSpec;

fn main() -> real_bundles::Result<()> {
    for name in ["gl3-compact", "gl2-conj"] {
        let group: GroupSpec = name.parse()?;
        println!("{}\n", verify_exact_sequence(&group)?);
    }
    for n in 2..=6 {
        let group: GroupSpec = format!("gl{n}-conj").parse()?;
        let report = verify_exact_sequence(&group)?;
        println!("{group:<9} {}", report.paper_display());
    }
    Ok(())
}
