//! Hides a canonical cocycle behind a random coboundary and recovers it.

use real_bundles::cohomology::class_by_label;
use real_bundles::{normalize, sample_orbit, CentralClass, ClassLabel, GroupSpec};

fn main() -> real_bundles::Result<()> {
    let group: GroupSpec = "gl4-compact".parse()?;
    let c = CentralClass::trivial();
    let class = class_by_label(&group, &c, ClassLabel::Signature { p: 3, q: 1 })?;

    let hidden = sample_orbit(&group, &c, &class, 7)?;
    println!("sampled h =\n{:.3}", hidden.h);

    let found = normalize(&group, &c, &hidden.h, 1e-8)?;
    println!("recovered {} with residual {:.1e}", found.class.label, found.residual);
    println!("witness b =\n{:.3}", found.witness);

    let quaternionic: GroupSpec = "gl4-conj".parse()?;
    let minus = CentralClass::minus_one();
    let j = class_by_label(&quaternionic, &minus, ClassLabel::QuaternionicJ)?;
    let hidden = sample_orbit(&quaternionic, &minus, &j, 11)?;
    let found = normalize(&quaternionic, &minus, &hidden.h, 1e-8)?;
    println!(
        "{} c=-1: recovered {} (residual {:.1e})",
        quaternionic, found.class.label, found.residual
    );
    Ok(())
}
