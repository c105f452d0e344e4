//! Stabilizer real forms and their component groups, class by class.

use real_bundles::cohomology::all_classes;
use real_bundles::stabilizer::stabilizer_form;
use real_bundles::GroupSpec;

fn main() -> real_bundles::Result<()> {
    for name in [
        "gl3-compact",
        "gl3-conj",
        "gl4-conj",
        "sl6-compact",
        "so5-conj",
        "so6-conj",
    ] {
        let group: GroupSpec = name.parse()?;
        for class in all_classes(&group) {
            let form = stabilizer_form(&group, &class)?;
            println!(
                "{group:<12} c={:<3} {:<9} {:<10} pi0 = {{{}}}{}",
                class.c,
                class.label,
                form.to_string(),
                form.pi0_labels.join(", "),
                if form.tabulated { "" } else { "  (derived)" }
            );
        }
    }
    Ok(())
}
