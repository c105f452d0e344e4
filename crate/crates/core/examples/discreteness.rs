//! Checks that H¹ is discrete at canonical cocycles: the tangent map of the
//! coboundary action hits exactly the infinitesimal cocycles.

use real_bundles::cohomology::all_classes;
use real_bundles::stabilizer::stabilizer_fixed_dimension;
use real_bundles::{verify_discreteness, GroupSpec};

fn main() -> real_bundles::Result<()> {
    for name in ["gl3-conj", "sl4-compact", "so5-conj", "so4-conj-outer"] {
        let group: GroupSpec = name.parse()?;
        for class in all_classes(&group) {
            let report = verify_discreteness(&group, &class.canonical, 1e-8)?;
            let stab = stabilizer_fixed_dimension(&group, &class.canonical, 1e-8)?;
            println!(
                "{group:<15} c={:<7} {:<10} dim ker T = {:>2}  dim im T' = {:>2}  dim g = {:>2}  dim Stab = {:>2}  {}",
                class.c,
                class.label,
                report.dim_kernel_t,
                report.dim_image_tprime,
                report.complex_dim,
                stab,
                if report.passed() { "ok" } else { "FAILED" }
            );
        }
    }
    Ok(())
}
