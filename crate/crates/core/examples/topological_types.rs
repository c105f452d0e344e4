//! Enumerates topological types of bundles over a real curve.

use real_bundles::curve::{make_curve, CurveKind};
use real_bundles::types::{enumerate_all_types, enumerate_types};
use real_bundles::{CentralClass, GroupSpec};

fn main() -> real_bundles::Result<()> {
    let curve = make_curve(2, CurveKind::TypeI, 1)?;
    let group: GroupSpec = "gl2-conj".parse()?;
    for t in enumerate_types(&group, &curve, &CentralClass::trivial(), (0, 1))? {
        println!("{t}");
    }

    let curve = make_curve(3, CurveKind::TypeI, 2)?;
    for t in enumerate_all_types(&group, &curve, (0, 0))? {
        println!("{t}");
    }

    let group: GroupSpec = "so5-conj".parse()?;
    let curve = make_curve(1, CurveKind::TypeII, 1)?;
    let types = enumerate_all_types(&group, &curve, (0, 0))?;
    println!("{group} over ({curve}): {} types", types.len());
    Ok(())
}
