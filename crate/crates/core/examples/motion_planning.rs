//! Combinatorial complexity at each path length and its stable value, with
//! the certificate checked independently.

use eqtc::invariants::verify::verify_motion_cover;
use eqtc::invariants::{self, Budget};
use eqtc::corpus;

fn main() {
    for (name, x) in [
        ("pseudo-circle", corpus::pseudo_circle()),
        ("antipodal-circle 4", corpus::antipodal_circle(4)),
    ] {
        let by_m: Vec<String> = (1..=6)
            .map(|m| invariants::cc_g_m(&x, m, Budget::default()).value.to_string())
            .collect();
        println!("{name}: CC_m for m = 1..6: {}", by_m.join(" "));
        let cc = invariants::cc_g(&x, Budget::default());
        println!("  CC = TC = {}, stable from m = {:?}", cc.result.value, cc.stabilizing_m);
        for set in &cc.result.cover {
            let pairs: Vec<String> = set.elements.iter().map(|&p| x.diagonal().name(p).to_string()).collect();
            println!("  set of {} pairs, e.g. {}", pairs.len(), pairs[0]);
        }
        println!("  certificate verifies: {}", verify_motion_cover(&x, &cc.result.cover, None).is_ok());
    }
}
