//! Lower bounds for the number of components of the real moduli space, by
//! closed form and by enumeration.

use real_bundles::census::{brute_force_census, count_components};
use real_bundles::curve::{make_curve, CurveKind};
use real_bundles::GroupSpec;

fn main() -> real_bundles::Result<()> {
    for (name, degree) in [("gl3-conj", 1), ("gl3-conj", 0), ("gl2-conj", 1), ("gl2-conj", 0)] {
        let group: GroupSpec = name.parse()?;
        for r in [1, 3, 5, 7] {
            let curve = make_curve(r + 1, CurveKind::TypeI, r)?;
            let closed = count_components(&group, &curve, degree, None)?;
            let brute = brute_force_census(&group, &curve, degree, None)?;
            println!("{name} d={degree} r={r}: {} (enumerated {})", closed.count, brute.count);
        }
    }
    let group: GroupSpec = "gl2-compact".parse()?;
    let curve = make_curve(1, CurveKind::TypeI, 2)?;
    println!("{}", count_components(&group, &curve, 0, None)?);
    Ok(())
}
