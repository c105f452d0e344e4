//! Real curves of genus up to 4 and their quotient surfaces.

use real_bundles::curve::{make_curve, quotient_data, CurveKind};

fn main() {
    for g in 0..=4 {
        for kind in [CurveKind::Type0, CurveKind::TypeI, CurveKind::TypeII] {
            for r in 0..=g + 1 {
                let Ok(curve) = make_curve(g, kind, r) else { continue };
                let data = quotient_data(&curve);
                println!("({curve:<7}) {data}  doubling ok: {}", data.doubling_check());
            }
        }
    }
    if let Err(e) = make_curve(2, CurveKind::TypeI, 2) {
        println!("rejected: {e}");
    }
}
