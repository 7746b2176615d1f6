//! Built-in spaces, seeded random G-posets, and all small posets up to
//! isomorphism.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::group::GPoset;
use crate::poset::FinitePoset;
use crate::simplicial::{order_complex, OrderedGComplex};

pub const BUILTIN_NAMES: &[&str] = &[
    "point",
    "jm M",
    "pseudo-circle",
    "sigma1-swap",
    "pseudo-torus",
    "pseudo-torus-swap",
    "circle K",
    "antipodal-circle K",
    "simplex N",
];

pub fn point() -> GPoset {
    GPoset::trivial(FinitePoset::point())
}

pub fn jm(m: usize) -> GPoset {
    GPoset::trivial(FinitePoset::combinatorial_interval(m))
}

/// `Σ¹ = {a, b, c, d}` with `c, d < a, b`.
pub fn sigma1() -> FinitePoset {
    FinitePoset::from_cover_relations(
        &["a", "b", "c", "d"],
        &[("c", "a"), ("d", "a"), ("c", "b"), ("d", "b")],
    )
    .expect("valid poset")
}

pub fn pseudo_circle() -> GPoset {
    GPoset::trivial(sigma1())
}

/// `Σ¹` with `ℤ/2` exchanging `a ↔ b` and `c ↔ d`.
pub fn sigma1_swap() -> GPoset {
    GPoset::from_generator_perms(sigma1(), &[("s".into(), vec![1, 0, 3, 2])]).expect("valid action")
}

/// `T_ps = Σ¹ × Σ¹` with the trivial group.
pub fn pseudo_torus() -> GPoset {
    GPoset::trivial(sigma1().product(&sigma1()))
}

/// `T_ps` with `ℤ/2` exchanging the factors.
pub fn pseudo_torus_swap() -> GPoset {
    let p = sigma1().product(&sigma1());
    let swap = (0..16).map(|i| (i % 4) * 4 + i / 4).collect();
    GPoset::from_generator_perms(p, &[("mu".into(), swap)]).expect("valid action")
}

/// The finite model of the circle with `k >= 2` maxima `a0..` and `k` minima
/// `b0..`, where `b_i < a_i, a_{i+1}` (indices mod `k`). `circle(2)` is `Σ¹`
/// up to naming.
pub fn circle(k: usize) -> FinitePoset {
    assert!(k >= 2, "a finite circle needs at least two maxima");
    let mut names: Vec<String> = (0..k).map(|i| format!("a{i}")).collect();
    names.extend((0..k).map(|i| format!("b{i}")));
    let covers: Vec<(String, String)> = (0..k)
        .flat_map(|i| {
            [
                (names[k + i].clone(), names[i].clone()),
                (names[k + i].clone(), names[(i + 1) % k].clone()),
            ]
        })
        .collect();
    FinitePoset::from_cover_relations(&names, &covers).expect("valid poset")
}

/// `circle(k)` for even `k` with `ℤ/2` acting by the half turn.
pub fn antipodal_circle(k: usize) -> GPoset {
    assert!(k >= 2 && k % 2 == 0, "the half turn needs an even number of maxima");
    let half: Vec<usize> = (0..2 * k)
        .map(|v| (v / k) * k + (v % k + k / 2) % k)
        .collect();
    GPoset::from_generator_perms(circle(k), &[("s".into(), half)]).expect("valid action")
}

/// The standard `n`-simplex as the order complex of a chain.
pub fn simplex(n: usize) -> OrderedGComplex {
    order_complex(&GPoset::trivial(FinitePoset::chain(n + 1))).expect("small complex")
}

/// Looks up a built-in G-poset by name, e.g. `point`, `jm 3`, `jm3`,
/// `pseudo-torus-swap`.
pub fn builtin_poset(name: &str) -> Result<GPoset> {
    let name = name.trim();
    let compact: String = name.split_whitespace().collect();
    Ok(match compact.as_str() {
        "point" => point(),
        "pseudo-circle" => pseudo_circle(),
        "sigma1-swap" => sigma1_swap(),
        "pseudo-torus" => pseudo_torus(),
        "pseudo-torus-swap" => pseudo_torus_swap(),
        s if s.starts_with("antipodal-circle") || s.starts_with("circle") => {
            let (antipodal, digits) = match s.strip_prefix("antipodal-circle") {
                Some(d) => (true, d),
                None => (false, &s["circle".len()..]),
            };
            let k: usize = digits
                .parse()
                .map_err(|_| Error::Input(format!("bad number of maxima in {name:?}")))?;
            if k < 2 || (antipodal && k % 2 == 1) {
                return Err(Error::Input(format!("{name:?} needs at least two maxima, an even number for the half turn")));
            }
            if antipodal {
                antipodal_circle(k)
            } else {
                GPoset::trivial(circle(k))
            }
        }
        s if s.starts_with("jm") => {
            let m = s[2..]
                .parse()
                .map_err(|_| Error::Input(format!("bad interval length in {name:?}")))?;
            jm(m)
        }
        _ => return Err(Error::Input(format!("unknown built-in space {name:?}"))),
    })
}

pub fn builtin_complex(name: &str) -> Result<OrderedGComplex> {
    let compact: String = name.split_whitespace().collect();
    if let Some(n) = compact.strip_prefix("simplex") {
        let n = n
            .parse()
            .map_err(|_| Error::Input(format!("bad dimension in {name:?}")))?;
        return Ok(simplex(n));
    }
    order_complex(&builtin_poset(name)?)
}

pub fn is_complex_name(name: &str) -> bool {
    name.trim_start().starts_with("simplex")
}

/// The fixed named spaces used for whole-corpus checks.
pub fn named() -> Vec<(String, GPoset)> {
    let mut out = vec![("point".to_string(), point())];
    for m in 1..=4 {
        out.push((format!("jm {m}"), jm(m)));
    }
    out.push(("pseudo-circle".into(), pseudo_circle()));
    out.push(("sigma1-swap".into(), sigma1_swap()));
    out.push(("pseudo-torus".into(), pseudo_torus()));
    out.push(("pseudo-torus-swap".into(), pseudo_torus_swap()));
    out.push(("circle 3".into(), GPoset::trivial(circle(3))));
    out.push(("antipodal-circle 4".into(), antipodal_circle(4)));
    out
}

/// Small groups as multiplication rules on `0..order`: cyclic of order 1 to
/// 4 and the Klein four-group.
#[derive(Clone, Copy, Debug)]
enum SmallGroup {
    Cyclic(usize),
    Klein,
}

impl SmallGroup {
    fn order(self) -> usize {
        match self {
            SmallGroup::Cyclic(n) => n,
            SmallGroup::Klein => 4,
        }
    }

    fn mul(self, a: usize, b: usize) -> usize {
        match self {
            SmallGroup::Cyclic(n) => (a + b) % n,
            SmallGroup::Klein => a ^ b,
        }
    }

    fn generators(self) -> Vec<usize> {
        match self {
            SmallGroup::Cyclic(1) => vec![],
            SmallGroup::Cyclic(_) => vec![1],
            SmallGroup::Klein => vec![1, 2],
        }
    }

    fn subgroups(self) -> Vec<Vec<usize>> {
        match self {
            SmallGroup::Cyclic(n) => (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| (0..n).step_by(d).collect())
                .collect(),
            SmallGroup::Klein => vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 1, 2, 3]],
        }
    }
}

/// A random valid G-poset with at most `max_points` points and a group of
/// order at most 4, deterministic in `seed`.
pub fn random_gposet(seed: u64, max_points: usize) -> GPoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = [
        SmallGroup::Cyclic(1),
        SmallGroup::Cyclic(2),
        SmallGroup::Cyclic(3),
        SmallGroup::Cyclic(4),
        SmallGroup::Klein,
    ];
    loop {
        let g = *groups.choose(&mut rng).unwrap();
        let target = rng.gen_range((max_points / 2).max(1)..=max_points.max(1));
        // orbits are coset spaces G/H
        let mut points: Vec<(usize, usize)> = Vec::new(); // (orbit, coset rep)
        let mut cosets_of: Vec<Vec<Vec<usize>>> = Vec::new();
        let subs = g.subgroups();
        while points.len() < target {
            let fitting: Vec<&Vec<usize>> = subs
                .iter()
                .filter(|h| points.len() + g.order() / h.len() <= target)
                .collect();
            let Some(h) = fitting.choose(&mut rng) else { break };
            let mut cosets: Vec<Vec<usize>> = Vec::new();
            for x in 0..g.order() {
                let mut c: Vec<usize> = h.iter().map(|&y| g.mul(x, y)).collect();
                c.sort_unstable();
                if !cosets.contains(&c) {
                    cosets.push(c);
                }
            }
            let orbit = cosets_of.len();
            for c in &cosets {
                points.push((orbit, c[0]));
            }
            cosets_of.push(cosets);
        }
        let n = points.len();
        let act = |s: usize, p: usize| -> usize {
            let (orbit, rep) = points[p];
            let img = g.mul(s, rep);
            let cosets = &cosets_of[orbit];
            let k = cosets.iter().position(|c| c.contains(&img)).unwrap();
            points.iter().position(|&(o, r)| o == orbit && r == cosets[k][0]).unwrap()
        };
        // relations only climb orbit levels, so they never close a cycle
        let levels: Vec<usize> = (0..cosets_of.len()).map(|_| rng.gen_range(0..3)).collect();
        let density: f64 = rng.gen_range(0.3..0.9);
        let mut pairs = FxHashSet::default();
        for x in 0..n {
            for y in 0..n {
                if levels[points[x].0] < levels[points[y].0] && rng.gen_bool(density) {
                    for s in 0..g.order() {
                        pairs.insert((act(s, x), act(s, y)));
                    }
                }
            }
        }
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let Ok(poset) = FinitePoset::from_relation_indices(names, &pairs) else {
            continue;
        };
        let gens: Vec<(String, Vec<usize>)> = g
            .generators()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (format!("g{i}"), (0..n).map(|p| act(s, p)).collect()))
            .collect();
        if gens.is_empty() {
            return GPoset::trivial(poset);
        }
        if let Ok(x) = GPoset::from_generator_perms(poset, &gens) {
            return x;
        }
    }
}

/// The random corpus: `count` G-posets from consecutive seeds.
pub fn random_corpus(seed: u64, count: usize, max_points: usize) -> Vec<GPoset> {
    (0..count as u64).map(|i| random_gposet(seed.wrapping_add(i), max_points)).collect()
}

/// Every poset on `n` points up to isomorphism, each labelled along a
/// linear extension.
pub fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    assert!(n <= 6, "exhaustive generation is limited to 6 points");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel = |i: usize, j: usize| -> bool {
            i == j || (i < j && mask >> pairs.iter().position(|&p| p == (i, j)).unwrap() & 1 == 1)
        };
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k)))
        });
        if !transitive {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        if i != j && rel(i, j) {
                            m |= 1 << (p[i] * n + p[j]);
                        }
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let names = (0..n).map(|i| format!("x{i}")).collect();
            let rels: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(i, j)| rel(i, j)).collect();
            out.push(FinitePoset::from_relation_indices(names, &rels).expect("acyclic"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// All posets with at most `n` points up to isomorphism, smallest first.
pub fn small_posets(n: usize) -> Vec<FinitePoset> {
    (0..=n).flat_map(posets_up_to_iso).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_up_to_iso() {
        let counts: Vec<usize> = (0..=5).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_gposet(7, 6);
        let b = random_gposet(7, 6);
        assert_eq!(a.poset(), b.poset());
        assert_eq!(a.action_table(), b.action_table());
        assert!(a.len() <= 6 && a.group().order() <= 4);
    }

    #[test]
    fn torus_fixed_points() {
        let t = pseudo_torus_swap();
        let fixed = t.fixed_points(&t.group().whole());
        assert_eq!(fixed.names(), &["(a,a)", "(b,b)", "(c,c)", "(d,d)"]);
        assert!(fixed.is_path_connected());
    }
}
