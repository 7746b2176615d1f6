//! Building a G-poset from a document and inspecting its orbits,
//! stabilizers and subgroups.

use eqtc::io::{self, Space};

const DOC: &str = r#"{
  "format_version": "1",
  "kind": "poset",
  "elements": ["a", "b", "c", "d"],
  "covers": [["c", "a"], ["c", "b"], ["d", "a"], ["d", "b"]],
  "generators": [{"name": "s", "map": {"a": "b", "b": "a", "c": "d", "d": "c"}}]
}"#;

fn main() {
    let (_, space) = io::parse_space(DOC).unwrap();
    let Space::Poset(x) = space else { unreachable!() };
    println!("group of order {}", x.group().order());
    for orbit in x.orbits() {
        let names: Vec<&str> = orbit.iter().map(|&v| x.name(v)).collect();
        println!("orbit {{{}}}, stabilizer order {}", names.join(", "), x.stabilizer(orbit[0]).order());
    }
    println!("{} subgroups", x.all_subgroups().unwrap().len());
    println!("{}", io::to_json(&io::poset_document(&x.diagonal())));
}
