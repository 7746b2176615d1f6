//! Sectional category of the path fibration agrees with combinatorial
//! complexity at the same path length.

use eqtc::homotopy::path_space;
use eqtc::invariants::{self, Budget};
use eqtc::corpus;

fn main() {
    let x = corpus::pseudo_circle();
    let base = x.diagonal();
    for m in 1..=4 {
        let ps = path_space(&x, m, 100_000).unwrap();
        let secat = invariants::secat_g(&ps.space, &base, &ps.endpoints, Budget::default()).unwrap();
        let cc = invariants::cc_g_m(&x, m, Budget::default());
        println!("m = {m}: {} paths, secat = {}, CC_m = {}", ps.paths.len(), secat.value, cc.value);
    }
}
