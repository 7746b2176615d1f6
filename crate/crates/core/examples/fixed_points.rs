//! Fixed points of every subgroup and the G-connectivity they decide.

use eqtc::corpus;

fn main() {
    for (name, x) in [
        ("pseudo-torus-swap", corpus::pseudo_torus_swap()),
        ("sigma1-swap", corpus::sigma1_swap()),
        ("antipodal-circle 4", corpus::antipodal_circle(4)),
    ] {
        println!("{name}:");
        for h in x.all_subgroups().unwrap() {
            let f = x.fixed_points(&h);
            let gens: Vec<&str> = (0..x.group().order()).filter(|&g| h.contains(g)).map(|g| x.group().name(g)).collect();
            println!(
                "  <{}>: {{{}}} connected={}",
                gens.join(","),
                f.names().join(", "),
                f.is_path_connected()
            );
        }
        println!("  G-connected: {}", x.is_g_connected());
    }
}
