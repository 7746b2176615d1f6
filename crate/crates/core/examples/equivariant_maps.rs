//! Enumerating equivariant monotone maps, and a fence between two points.

use eqtc::corpus;
use eqtc::homotopy::{enumerate_equivariant_maps, equivariant_map_bound};

fn main() {
    let a = corpus::sigma1_swap();
    let x = corpus::antipodal_circle(4);
    for (name, target) in [("sigma1-swap", a.clone()), ("antipodal-circle 4", x.clone())] {
        if !a.same_group(&target) {
            println!("{name}: different group, skipped");
            continue;
        }
        let maps = enumerate_equivariant_maps(&a, &target, 100_000).unwrap();
        println!("sigma1-swap -> {name}: {} maps, bound {}", maps.len(), equivariant_map_bound(&a, &target));
    }
    let p = x.poset();
    let (u, v) = (0, p.len() - 1);
    let path = p.connect_with_path(u, v).unwrap();
    let names: Vec<&str> = path.assignment.iter().map(|&i| p.name(i)).collect();
    println!("fence {} -> {} in antipodal-circle 4: {}", p.name(u), p.name(v), names.join(" "));
}
