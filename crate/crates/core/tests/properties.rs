use proptest::prelude::*;

use eqtc::homotopy::{enumerate_equivariant_maps, equivariant_map_bound};
use eqtc::invariants::verify::{verify_ls_cover, verify_motion_cover};
use eqtc::invariants::{self, BoundStatus, Budget, Value};
use eqtc::simplicial::{fixed_subcomplex, g_connected_complex, order_complex};
use eqtc::subdivision::{fixed_points_commute_check, subdivide, verify_last_vertex_map};
use eqtc::{corpus, io, FinitePoset, GPoset};

fn space(max_points: usize) -> impl Strategy<Value = GPoset> {
    (any::<u64>(), 1..=max_points).prop_map(|(seed, n)| corpus::random_gposet(seed, n))
}

fn sorted_names(p: &FinitePoset, s: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = s.iter().map(|&i| p.name(i).to_string()).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_spaces_are_valid(x in space(8)) {
        let rebuilt = GPoset::new(x.poset().clone(), x.group_arc().clone(), x.action_table().to_vec());
        prop_assert!(rebuilt.is_ok());
        prop_assert!(x.group().order() <= 4);
    }

    #[test]
    fn documents_round_trip(x in space(8)) {
        let text = io::to_json(&io::poset_document(&x));
        let (_, parsed) = io::parse_space(&text).unwrap();
        let io::Space::Poset(y) = parsed else { panic!("expected a poset") };
        prop_assert_eq!(x.poset().names(), y.poset().names());
        for a in 0..x.len() {
            for b in 0..x.len() {
                prop_assert_eq!(x.poset().leq(a, b), y.poset().leq(a, b));
            }
        }
        let orbit_sets = |z: &GPoset| {
            let mut v: Vec<Vec<String>> = z.orbits().iter().map(|o| sorted_names(z.poset(), o)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(orbit_sets(&x), orbit_sets(&y));
    }

    #[test]
    fn face_poset_of_order_complex_is_subdivision(x in space(6)) {
        let k = order_complex(&x).unwrap();
        let chi = k.complex.face_poset();
        let sd = subdivide(&x).unwrap();
        prop_assert_eq!(chi.len(), sd.space.len());
        let key = |s: &[usize]| sorted_names(x.poset(), s);
        let mut index = std::collections::HashMap::new();
        for (i, c) in sd.chains.iter().enumerate() {
            index.insert(key(c), i);
        }
        let to_sd: Vec<usize> = k.complex.simplices().iter().map(|s| index[&key(s)]).collect();
        for a in 0..chi.len() {
            for b in 0..chi.len() {
                prop_assert_eq!(chi.leq(a, b), sd.space.poset().leq(to_sd[a], to_sd[b]));
            }
        }
    }

    #[test]
    fn fixed_subcomplex_is_order_complex_of_fixed_points(x in space(7)) {
        let k = order_complex(&x).unwrap();
        for h in x.all_subgroups().unwrap() {
            let (f, _) = fixed_subcomplex(&k, &h);
            let fixed = GPoset::trivial(x.fixed_points(&h));
            let direct = order_complex(&fixed).unwrap();
            let sets = |c: &eqtc::simplicial::SimplicialComplex| {
                let mut v: Vec<Vec<String>> = c
                    .simplices()
                    .iter()
                    .map(|s| {
                        let mut n: Vec<String> = s.iter().map(|&i| c.name(i).to_string()).collect();
                        n.sort();
                        n
                    })
                    .collect();
                v.sort();
                v
            };
            prop_assert_eq!(sets(&f), sets(&direct.complex));
        }
        prop_assert_eq!(g_connected_complex(&k).unwrap(), x.is_g_connected());
    }

    #[test]
    fn paths_have_length_of_the_poset(x in space(8)) {
        let p = x.poset();
        let j = FinitePoset::combinatorial_interval(p.len());
        for a in 0..p.len() {
            for b in 0..p.len() {
                let same = p.components().iter().any(|c| c.contains(&a) && c.contains(&b));
                match p.connect_with_path(a, b) {
                    Some(f) => {
                        prop_assert!(same);
                        prop_assert!(j.is_monotone_into(p, &f.assignment));
                        prop_assert_eq!(f.assignment[0], a);
                        prop_assert_eq!(*f.assignment.last().unwrap(), b);
                    }
                    None => prop_assert!(!same),
                }
            }
        }
    }

    #[test]
    fn subdivision_commutes_with_fixed_points(x in space(6)) {
        prop_assert!(fixed_points_commute_check(&x, 1).unwrap());
        let sd = subdivide(&x).unwrap();
        prop_assert!(verify_last_vertex_map(&x, &sd));
    }

    #[test]
    fn equivariant_map_count_respects_bound(a in space(5), seed in any::<u64>()) {
        let x = corpus::random_gposet(seed, 5);
        prop_assume!(a.same_group(&x));
        let maps = enumerate_equivariant_maps(&a, &x, 1_000_000).unwrap();
        prop_assert!(maps.len() as f64 <= equivariant_map_bound(&a, &x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn longer_fences_never_hurt(x in space(5)) {
        let mut prev: Option<Value> = None;
        for m in 0..=4 {
            let r = invariants::cc_g_m(&x, m, Budget::default());
            if let Value::Finite(_) = r.value {
                prop_assert!(verify_motion_cover(&x, &r.cover, Some(m)).is_ok());
            }
            if let Some(p) = prev {
                prop_assert!(invariants::compare(r.value, p) != BoundStatus::Violated, "m={} {:?} -> {:?}", m, p, r.value);
            }
            prev = Some(r.value);
        }
    }

    #[test]
    fn emitted_covers_verify(x in space(5)) {
        let ls = invariants::ls_cat_g(&x, Budget::default());
        if let Value::Finite(_) = ls.value {
            prop_assert!(verify_ls_cover(&x, &ls.cover).is_ok());
        }
        let cc = invariants::cc_g(&x, Budget::default());
        if let Value::Finite(_) = cc.result.value {
            prop_assert!(verify_motion_cover(&x, &cc.result.cover, None).is_ok());
        }
    }

    #[test]
    fn bound_suite_has_no_violations(x in space(5)) {
        let report = invariants::bound_report(&x, Budget::default()).unwrap();
        for e in &report.entries {
            prop_assert!(e.status != BoundStatus::Violated, "{}: {:?} vs {:?}", e.name, e.lhs, e.rhs);
        }
    }
}
