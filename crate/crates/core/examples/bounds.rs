//! The standard inequalities between category and complexity.

use eqtc::invariants::{self, Budget};
use eqtc::{corpus, GPoset};

fn main() {
    for (name, x) in [
        ("circle 3", GPoset::trivial(corpus::circle(3))),
        ("antipodal-circle 4", corpus::antipodal_circle(4)),
    ] {
        let r = invariants::bound_report(&x, Budget::default()).unwrap();
        println!("{name}: LS = {}, TC = {}, LS(X x X) = {}, LS(sd X) = {}", r.ls, r.tc, r.ls_square, r.ls_subdivision);
        for e in &r.entries {
            println!("  {}: {} vs {} -> {:?}", e.name, e.lhs, e.rhs, e.status);
        }
    }
}
