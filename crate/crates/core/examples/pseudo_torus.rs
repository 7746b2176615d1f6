//! The pseudo-torus with the factor swap: its fixed points form a circle,
//! yet the equivariant category is infinite.

use eqtc::invariants::{self, Budget};
use eqtc::corpus;

fn main() {
    let x = corpus::pseudo_torus_swap();
    println!("{} points, {} orbits", x.len(), x.orbit_count());

    let r = invariants::ls_cat_g(&x, Budget::default());
    println!("LS_G = {}", r.value);
    if let Some(cert) = &r.infinity {
        let orbit: Vec<&str> = x.orbit(cert.witness).iter().map(|v| x.name(v)).collect();
        println!("witness orbit {{{}}}", orbit.join(", "));
        println!("{}", cert.reason);
    }

    // forgetting the action, the torus is covered by three categorical sets
    let plain = x.forget_group();
    println!("LS without the action = {}", invariants::ls_cat_g(&plain, Budget::default()).value);
}
