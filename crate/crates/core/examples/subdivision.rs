//! Barycentric subdivision: sizes, the last-vertex map, fixed points, and
//! the explicit contractions in the second subdivision.

use eqtc::invariants::{self, Budget};
use eqtc::subdivision::{fixed_points_commute_check, subdivide, subdivide_n, verify_last_vertex_map};
use eqtc::corpus;

fn main() {
    let x = corpus::sigma1_swap();
    for n in 0..=3 {
        println!("sd^{n}: {} points", subdivide_n(&x, n).unwrap().len());
    }
    let sd = subdivide(&x).unwrap();
    println!("last-vertex map {:?}, valid: {}", sd.last_vertex_map(), verify_last_vertex_map(&x, &sd));
    println!("fixed points commute with sd^2: {}", fixed_points_commute_check(&x, 2).unwrap());

    println!("LS_G(X) = {}", invariants::ls_cat_g(&x, Budget::default()).value);
    let f = invariants::sd2_finiteness(&x).unwrap();
    let ok = f.certificates.iter().all(|c| c.verify(f.sd2.space()));
    println!(
        "sd^2: {} verified contractions ({ok}), so LS_G(sd^2 X) <= {}",
        f.certificates.len(),
        f.upper_bound
    );
    println!("LS_G(sd^2 X) = {}", invariants::ls_cat_g(f.sd2.space(), Budget::default()).value);
}
