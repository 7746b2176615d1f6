mod common;

use common::{cc_m_oracle, ls_oracle, naive_map_count, show, Raw};
use eqtc::homotopy::{enumerate_equivariant_maps, equivariant_map_bound};
use eqtc::invariants::{self, Budget};
use eqtc::{corpus, GPoset};

fn small_random(count: usize, max_points: usize) -> Vec<GPoset> {
    corpus::random_corpus(11, count, max_points)
}

#[test]
fn ls_matches_brute_force_on_four_points() {
    for p in corpus::small_posets(4) {
        let x = GPoset::trivial(p);
        let got = invariants::ls_cat_g(&x, Budget::default()).value;
        assert_eq!(got.to_string(), show(ls_oracle(&Raw::of(&x))), "{:?}", x.poset().cover_pairs());
    }
}

#[test]
fn equivariant_ls_matches_brute_force() {
    for x in small_random(40, 6) {
        let got = invariants::ls_cat_g(&x, Budget::default()).value;
        let want = show(ls_oracle(&Raw::of(&x)));
        assert_eq!(got.to_string(), want, "{:?} {:?}", x.poset().cover_pairs(), x.action_table());
    }
}

#[test]
fn fixed_length_complexity_matches_brute_force() {
    for p in corpus::small_posets(4) {
        let x = GPoset::trivial(p);
        let raw = Raw::of(&x);
        for m in 0..=3 {
            let got = invariants::cc_g_m(&x, m, Budget::default()).value;
            assert_eq!(got.to_string(), show(cc_m_oracle(&raw, m)), "m={m} {:?}", x.poset().cover_pairs());
        }
    }
}

#[test]
fn equivariant_fixed_length_complexity_matches_brute_force() {
    for x in small_random(30, 6) {
        let raw = Raw::of(&x);
        for m in [1, 2, 5] {
            let got = invariants::cc_g_m(&x, m, Budget::default()).value;
            let want = show(cc_m_oracle(&raw, m));
            assert_eq!(got.to_string(), want, "m={m} {:?} {:?}", x.poset().cover_pairs(), x.action_table());
        }
    }
}

#[test]
fn named_spaces_match_brute_force() {
    let cases = [
        (corpus::pseudo_circle(), "2", "4"),
        (corpus::sigma1_swap(), "infinity", "infinity"),
        (corpus::jm(2), "1", "1"),
        (GPoset::trivial(corpus::circle(3)), "2", "3"),
    ];
    for (x, ls, cc) in cases {
        let raw = Raw::of(&x);
        assert_eq!(show(ls_oracle(&raw)), ls);
        assert_eq!(show(cc_m_oracle(&raw, 6)), cc);
        assert_eq!(invariants::ls_cat_g(&x, Budget::default()).value.to_string(), ls);
        assert_eq!(invariants::cc_g(&x, Budget::default()).result.value.to_string(), cc);
    }
}

#[test]
fn half_turn_circle_needs_long_fences() {
    let x = corpus::antipodal_circle(4);
    let raw = Raw::of(&x);
    assert_eq!(show(ls_oracle(&raw)), "2");
    assert_eq!(invariants::ls_cat_g(&x, Budget::default()).value.to_string(), "2");
    assert_eq!(show(cc_m_oracle(&raw, 5)), "infinity");
    assert_eq!(invariants::cc_g_m(&x, 5, Budget::default()).value.to_string(), "infinity");
    assert_eq!(show(cc_m_oracle(&raw, 6)), "3");
    assert_eq!(invariants::cc_g(&x, Budget::default()).result.value.to_string(), "3");
}

#[test]
fn map_counts_match_naive_filter() {
    let mut spaces: Vec<GPoset> = corpus::small_posets(3).into_iter().map(GPoset::trivial).collect();
    spaces.extend(small_random(30, 5));
    for a in &spaces {
        for x in &spaces {
            if !a.same_group(x) {
                continue;
            }
            let maps = enumerate_equivariant_maps(a, x, 100_000).unwrap();
            assert_eq!(maps.len(), naive_map_count(&Raw::of(a), &Raw::of(x)));
            assert!(maps.len() as f64 <= equivariant_map_bound(a, x));
        }
    }
}
