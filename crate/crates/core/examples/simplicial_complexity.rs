//! Simplicial complexity over a small grid of subdivision depths b and
//! contiguity lengths c.

use eqtc::invariants::Budget;
use eqtc::simplicial::order_complex;
use eqtc::{corpus, sc};

fn main() {
    let k = order_complex(&corpus::sigma1_swap()).unwrap();
    let sweep = sc::sc_g(&k, 0..=1, 4, Budget::default()).unwrap();
    for b in 0..=1 {
        let row: Vec<String> = (0..=4).map(|c| sweep.value_at(b, c).unwrap().to_string()).collect();
        println!("b = {b}: {}", row.join(" "));
    }
    println!("best {} at {:?}, lower bound {:?}", sweep.best, sweep.best_at, sweep.lower_bound);
    println!("antitone in c: {}, in b: {}", sweep.monotone_in_c, sweep.monotone_in_b);

    let setup = sc::projection_composites(&k, 0, sc::Approximation::Last).unwrap();
    let r = sc::sc_g_bc_on(&setup, 3, Budget::default()).unwrap();
    println!("(0, 3): {} sets, verifies: {}", r.certificate.sets.len(), sc::verify_sc_cover(&setup, &r.certificate).is_ok());
}
