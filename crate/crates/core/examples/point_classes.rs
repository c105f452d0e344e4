//! Lists the classes of H¹ over a point for a few groups, grouped by the
//! central class they are shifted by.

use real_bundles::{center_real_classes, enumerate_classes, GroupSpec};

fn main() -> real_bundles::Result<()> {
    for name in [
        "cstar-conj",
        "gl3-compact",
        "gl4-conj",
        "sl4-compact",
        "so5-conj",
        "so6-conj-outer",
        "pgl2-conj",
    ] {
        let group: GroupSpec = name.parse()?;
        println!("{group}");
        for c in center_real_classes(&group) {
            let labels: Vec<String> = enumerate_classes(&group, &c)?
                .iter()
                .map(|k| k.label.to_string())
                .collect();
            println!("  c = {c:<8} {{{}}}", labels.join(", "));
        }
    }
    Ok(())
}
