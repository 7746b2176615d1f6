//! One PASS/FAIL line per acceptance criterion. Runs as a plain binary
//! (`cargo test --test acceptance`) and exits nonzero if any line fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{cc_m_oracle, ls_oracle, naive_map_count, show, Raw};
use eqtc::homotopy::{enumerate_equivariant_maps, equivariant_map_bound};
use eqtc::invariants::{self, BoundStatus, Budget, Value};
use eqtc::simplicial::{fixed_subcomplex, g_connected_complex, order_complex, OrderedGComplex};
use eqtc::subdivision::{fixed_points_commute_check, subdivide, verify_last_vertex_map};
use eqtc::{corpus, sc, FinitePoset, GPoset};

const SEED: u64 = 7;

/// The random corpus: 50 G-posets, at most 6 points, groups of order at most 4.
fn random_corpus() -> Vec<GPoset> {
    corpus::random_corpus(SEED, 50, 6)
}

/// Everything the structural criteria run over.
fn full_corpus() -> Vec<GPoset> {
    let mut out: Vec<GPoset> = corpus::named().into_iter().map(|(_, x)| x).collect();
    out.extend(random_corpus());
    out.extend(corpus::random_corpus(SEED + 1, 30, 8));
    out.extend(corpus::small_posets(4).into_iter().map(GPoset::trivial));
    out
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pseudo_torus_infinity() -> Outcome {
    let x = corpus::pseudo_torus_swap();
    let r = invariants::ls_cat_g(&x, Budget::default());
    ensure(r.value == Value::Infinite, || format!("value {}", r.value))?;
    let cert = r.infinity.ok_or("no infinity certificate")?;
    let ab = x.poset().index_of("(a,b)").map_err(|e| e.to_string())?;
    ensure(x.orbit(cert.witness).contains(ab), || format!("witness {} not in the orbit of (a,b)", x.name(cert.witness)))?;
    let u = eqtc::ElemSet::from_indices(x.len(), cert.neighbourhood.iter().copied());
    let recheck = invariants::is_g_categorical(&x, &u, Budget::default()).map_err(|e| e.to_string())?;
    ensure(matches!(recheck, invariants::cover::Verdict::Bad(_)), || "witness neighbourhood re-checks as categorical".into())?;
    Ok(format!("LS = infinity, witness {}", x.name(cert.witness)))
}

fn fixed_point_example() -> Outcome {
    let x = corpus::pseudo_torus_swap();
    let f = x.fixed_points(&x.group().whole());
    let mut names = f.names().to_vec();
    names.sort();
    ensure(names == ["(a,a)", "(b,b)", "(c,c)", "(d,d)"], || format!("{names:?}"))?;
    ensure(f.is_path_connected(), || "not path-connected".into())?;
    Ok(format!("{{{}}}, path-connected", names.join(",")))
}

fn cc_monotone() -> Outcome {
    let spaces = random_corpus();
    ensure(spaces.iter().all(|x| x.len() <= 6 && x.group().order() <= 4), || "corpus out of range".into())?;
    let mut checks = 0;
    let mut undecided = 0;
    for (i, x) in spaces.iter().enumerate() {
        let values: Vec<Value> = (0..=7).map(|m| invariants::cc_g_m(x, m, Budget::default()).value).collect();
        undecided += values.iter().filter(|v| !v.is_exact()).count();
        for m in 0..=6 {
            checks += 1;
            ensure(invariants::compare(values[m + 1], values[m]) != BoundStatus::Violated, || {
                format!("instance {i}: CC_{m} = {} but CC_{} = {}", values[m], m + 1, values[m + 1])
            })?;
        }
    }
    ensure(undecided == 0, || format!("{undecided} values left as intervals"))?;
    Ok(format!("{} spaces, {checks} comparisons, 0 violations", spaces.len()))
}

fn trivial_group_oracles() -> Outcome {
    let posets = corpus::small_posets(5);
    let mut mismatches = Vec::new();
    for p in &posets {
        let x = GPoset::trivial(p.clone());
        let raw = Raw::of(&x);
        let ls = invariants::ls_cat_g(&x, Budget::default()).value.to_string();
        let cc = invariants::cc_g(&x, Budget::default()).result.value.to_string();
        let cc5 = show(cc_m_oracle(&raw, 5));
        let cc6 = show(cc_m_oracle(&raw, 6));
        let ls_o = show(ls_oracle(&raw));
        if ls != ls_o || cc != cc6 || cc5 != cc6 {
            mismatches.push(format!("{:?}: LS {ls}/{ls_o}, CC {cc}/{cc6} (oracle at 5: {cc5})", p.cover_pairs()));
        }
    }
    ensure(mismatches.is_empty(), || format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))?;
    Ok(format!("{} posets, 0 mismatches", posets.len()))
}

fn sd2_categoricity() -> Outcome {
    let spaces = [
        ("sigma1", GPoset::trivial(corpus::sigma1())),
        ("sigma1-swap", corpus::sigma1_swap()),
        ("J3", corpus::jm(3)),
    ];
    let mut parts = Vec::new();
    for (name, x) in spaces {
        let f = invariants::sd2_finiteness(&x).map_err(|e| format!("{name}: {e}"))?;
        let y = f.sd2.space();
        for c in &f.certificates {
            ensure(c.verify(y), || format!("{name}: certificate for {} fails", y.name(c.element)))?;
        }
        let maximal = y.poset().maximal_elements(&y.poset().all_elements());
        for &s in &maximal {
            ensure(f.certificates.iter().any(|c| y.orbit(c.element).contains(s)), || {
                format!("{name}: maximal {} has no certificate", y.name(s))
            })?;
        }
        parts.push(format!("{name}: {} certificates, LS <= {}", f.certificates.len(), f.upper_bound));
    }
    Ok(parts.join("; "))
}

fn bound_suite() -> Outcome {
    let mut held = 0;
    let mut open = 0;
    for (i, x) in random_corpus().iter().enumerate() {
        let report = invariants::bound_report(x, Budget::default()).map_err(|e| format!("instance {i}: {e}"))?;
        for e in &report.entries {
            match &e.status {
                BoundStatus::Holds => held += 1,
                BoundStatus::Violated => return Err(format!("instance {i}: {} ({} vs {})", e.name, e.lhs, e.rhs)),
                BoundStatus::Unknown | BoundStatus::Skipped(_) => open += 1,
            }
        }
    }
    Ok(format!("{held} bounds hold, {open} not applicable or infinite, 0 violations"))
}

fn map_bound() -> Outcome {
    let mut spaces = random_corpus();
    spaces.extend(corpus::small_posets(3).into_iter().map(GPoset::trivial));
    let mut pairs = 0;
    let mut naive = 0;
    for a in &spaces {
        for x in &spaces {
            if !a.same_group(x) {
                continue;
            }
            pairs += 1;
            let maps = enumerate_equivariant_maps(a, x, 2_000_000).map_err(|e| e.to_string())?;
            let bound = equivariant_map_bound(a, x);
            ensure(maps.len() as f64 <= bound, || format!("{} maps above bound {bound}", maps.len()))?;
            if a.len() <= 5 && x.len() <= 5 {
                naive += 1;
                let want = naive_map_count(&Raw::of(a), &Raw::of(x));
                ensure(maps.len() == want, || format!("{} maps, naive filter {want}", maps.len()))?;
            }
        }
    }
    Ok(format!("{pairs} pairs within bound, {naive} counts match the naive filter"))
}

fn path_length() -> Outcome {
    let mut posets: Vec<FinitePoset> = full_corpus().iter().map(|x| x.poset().clone()).collect();
    posets.extend(corpus::small_posets(5));
    let mut checked = 0;
    for p in posets.iter().filter(|p| p.len() <= 8 && p.is_path_connected()) {
        let j = FinitePoset::combinatorial_interval(p.len());
        for a in 0..p.len() {
            for b in 0..p.len() {
                let f = p.connect_with_path(a, b).ok_or_else(|| format!("no path {} -> {}", p.name(a), p.name(b)))?;
                let ok = j.is_monotone_into(p, &f.assignment) && f.assignment[0] == a && f.assignment[p.len()] == b;
                ensure(ok, || format!("invalid path {} -> {}: {:?}", p.name(a), p.name(b), f.assignment))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} ordered pairs, 0 failures"))
}

fn fixed_points_commute() -> Outcome {
    let spaces = full_corpus();
    let mut subdivisions = 0;
    for (i, x) in spaces.iter().enumerate() {
        for n in 1..=2 {
            ensure(fixed_points_commute_check(x, n).map_err(|e| e.to_string())?, || format!("instance {i}, n = {n}"))?;
        }
        let sd = subdivide(x).map_err(|e| e.to_string())?;
        let sd2 = subdivide(&sd.space).map_err(|e| e.to_string())?;
        ensure(verify_last_vertex_map(x, &sd), || format!("instance {i}: last-vertex map of sd"))?;
        ensure(verify_last_vertex_map(&sd.space, &sd2), || format!("instance {i}: last-vertex map of sd2"))?;
        subdivisions += 2;
    }
    Ok(format!("{} spaces, n = 1, 2; {subdivisions} last-vertex maps verified", spaces.len()))
}

fn sc_grid() -> Outcome {
    let budget = Budget::default();
    let complexes: Vec<(&str, OrderedGComplex)> = vec![
        ("simplex1", corpus::simplex(1)),
        ("simplex2", corpus::simplex(2)),
        ("K(sigma1)", order_complex(&GPoset::trivial(corpus::sigma1())).unwrap()),
        ("K(sigma1-swap)", order_complex(&corpus::sigma1_swap()).unwrap()),
    ];
    let mut parts = Vec::new();
    for (name, k) in &complexes {
        let sweep = sc::sc_g(k, 0..=1, 4, budget).map_err(|e| format!("{name}: {e}"))?;
        let at = |b: usize, c: usize| sweep.value_at(b, c).unwrap();
        for r in &sweep.results {
            ensure(r.value.is_exact(), || format!("{name}: ({}, {}) left as {}", r.b, r.c, r.value))?;
            if r.value.finite().is_some() {
                let setup = sc::projection_composites(k, r.b, sc::Approximation::Last).unwrap();
                sc::verify_sc_cover(&setup, &r.certificate).map_err(|e| format!("{name}: ({}, {}) {e}", r.b, r.c))?;
            }
        }
        let no_worse = |lhs: Value, rhs: Value| invariants::compare(lhs, rhs) != BoundStatus::Violated;
        for b in 0..=1 {
            for c in 0..4 {
                ensure(no_worse(at(b, c + 1), at(b, c)), || format!("{name}: not antitone in c at b = {b}, c = {c}"))?;
            }
        }
        for c in 0..=4 {
            ensure(no_worse(at(1, c), at(0, c)), || format!("{name}: not antitone in b at c = {c}"))?;
        }
        for c in 0..=2 {
            ensure(no_worse(at(1, c + 2), at(0, c)), || format!("{name}: SC(1, {}) above SC(0, {c})", c + 2))?;
        }
        let best = |b: usize| (0..=4).map(|c| at(b, c)).fold(Value::Infinite, |acc, v| match (acc.finite(), v.finite()) {
            (Some(a), Some(x)) => Value::Finite(a.min(x)),
            (None, Some(_)) => v,
            _ => acc,
        });
        ensure(no_worse(best(1), best(0)), || format!("{name}: SC^1 above SC^0"))?;
        let lower = sweep.lower_bound;
        for r in &sweep.results {
            if let (Some(l), Some(v)) = (lower, r.value.finite()) {
                ensure(v >= l, || format!("{name}: ({}, {}) = {v} below the lower bound {l}", r.b, r.c))?;
            }
        }
        parts.push(format!("{name}: SC^0 = {}, SC^1 = {}", best(0), best(1)));
    }
    let d1 = sc::sc_g_bc(&corpus::simplex(1), 0, 1, budget).map_err(|e| e.to_string())?;
    ensure(d1.value == Value::Finite(1), || format!("simplex1 (0, 1) = {}", d1.value))?;
    Ok(parts.join("; "))
}

fn structural_identities() -> Outcome {
    let spaces = full_corpus();
    for (i, x) in spaces.iter().enumerate() {
        let k = order_complex(x).map_err(|e| e.to_string())?;
        let chi = k.complex.face_poset();
        let sd = subdivide(x).map_err(|e| e.to_string())?;
        let key = |s: &[usize]| {
            let mut v: Vec<&str> = s.iter().map(|&i| x.poset().name(i)).collect();
            v.sort();
            v.join(",")
        };
        let index: std::collections::HashMap<String, usize> =
            sd.chains.iter().enumerate().map(|(i, c)| (key(c), i)).collect();
        ensure(chi.len() == sd.space.len(), || format!("instance {i}: sizes differ"))?;
        let to_sd: Vec<usize> = k.complex.simplices().iter().map(|s| index[&key(s)]).collect();
        for a in 0..chi.len() {
            for b in 0..chi.len() {
                ensure(chi.leq(a, b) == sd.space.poset().leq(to_sd[a], to_sd[b]), || format!("instance {i}: orders differ"))?;
            }
        }
        for h in x.all_subgroups().map_err(|e| e.to_string())? {
            let (f, _) = fixed_subcomplex(&k, &h);
            let direct = order_complex(&GPoset::trivial(x.fixed_points(&h))).unwrap();
            let names = |c: &eqtc::simplicial::SimplicialComplex| {
                let mut v: Vec<String> = c
                    .simplices()
                    .iter()
                    .map(|s| {
                        let mut n: Vec<&str> = s.iter().map(|&v| c.name(v)).collect();
                        n.sort();
                        n.join(",")
                    })
                    .collect();
                v.sort();
                v
            };
            ensure(names(&f) == names(&direct.complex), || format!("instance {i}: fixed subcomplex differs"))?;
        }
        ensure(g_connected_complex(&k).unwrap() == x.is_g_connected(), || format!("instance {i}: G-connectivity differs"))?;
    }
    Ok(format!("{} spaces", spaces.len()))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_eqtc");
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", "builtin:pseudo-torus-swap"],
        vec!["sd", "builtin:sigma1-swap", "-n", "2"],
        vec!["orbits", "builtin:pseudo-torus-swap"],
        vec!["fixed", "builtin:pseudo-torus-swap"],
        vec!["gconnected", "builtin:antipodal-circle4"],
        vec!["lscat", "builtin:pseudo-torus-swap"],
        vec!["lscat", "builtin:circle3"],
        vec!["cc", "builtin:pseudo-circle", "--m", "2"],
        vec!["cc", "builtin:antipodal-circle4"],
        vec!["tc", "builtin:pseudo-circle"],
        vec!["sc", "builtin:sigma1-swap", "--b", "1", "--c", "3"],
        vec!["bounds", "builtin:circle3"],
        vec!["examples", "jm", "3"],
        vec!["--budget", "50", "cc", "builtin:pseudo-circle"],
    ];
    for cmd in &commands {
        for format in ["text", "structured"] {
            let run = |threads: &str| {
                Command::new(bin)
                    .args(["--threads", threads, "--format", format])
                    .args(cmd)
                    .output()
                    .map_err(|e| e.to_string())
            };
            let one = run("1")?;
            let eight = run("8")?;
            ensure(one.status.code() == eight.status.code(), || format!("{cmd:?}: exit codes differ"))?;
            ensure(one.stdout == eight.stdout && !one.stdout.is_empty(), || format!("{cmd:?} ({format}): output differs"))?;
        }
    }
    Ok(format!("{} commands x 2 formats byte-identical", commands.len()))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome, Option<Duration>)> = vec![
        ("pseudo-torus infinity", pseudo_torus_infinity, Some(Duration::from_secs(10))),
        ("fixed-point example", fixed_point_example, Some(Duration::from_secs(1))),
        ("CC monotone in m", cc_monotone, Some(Duration::from_secs(300))),
        ("trivial-group oracle equivalence", trivial_group_oracles, Some(Duration::from_secs(600))),
        ("sd2 categoricity", sd2_categoricity, Some(Duration::from_secs(120))),
        ("bound suite", bound_suite, None),
        ("equivariant-map bound", map_bound, None),
        ("path length", path_length, None),
        ("fixed points commute with sd", fixed_points_commute, None),
        ("SC values and monotonicity", sc_grid, Some(Duration::from_secs(600))),
        ("structural identities", structural_identities, None),
        ("determinism across thread counts", determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.1?}, limit {l:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
