//! Certificate checking from scratch, using only order and action
//! predicates. Nothing here calls back into the search code.

use crate::bits::ElemSet;
use crate::group::GPoset;
use crate::homotopy::Direction;
use crate::invariants::{CertifiedSet, Evidence};

type Check = std::result::Result<(), String>;

fn open_invariant(y: &GPoset, elems: &[usize]) -> std::result::Result<ElemSet, String> {
    let s = ElemSet::from_indices(y.len(), elems.iter().copied());
    if s.len() != elems.len() {
        return Err("repeated elements in a cover set".into());
    }
    for &u in elems {
        for v in 0..y.len() {
            if y.poset().leq(v, u) && !s.contains(v) {
                return Err(format!("set is not open: {} lies below {}", y.name(v), y.name(u)));
            }
        }
        for g in 0..y.group().order() {
            if !s.contains(y.act(g, u)) {
                return Err(format!("set is not invariant at {}", y.name(u)));
            }
        }
    }
    Ok(s)
}

fn covers(y: &GPoset, sets: &[ElemSet]) -> Check {
    for x in 0..y.len() {
        if !sets.iter().any(|s| s.contains(x)) {
            return Err(format!("{} is not covered", y.name(x)));
        }
    }
    Ok(())
}

/// Monotone and equivariant as a map from `elems ⊆ Y` into `X`.
fn good_map(y: &GPoset, x: &GPoset, elems: &[usize], f: &[usize]) -> Check {
    if f.len() != elems.len() || f.iter().any(|&v| v >= x.len()) {
        return Err("map has the wrong shape".into());
    }
    let pos = |u: usize| elems.iter().position(|&e| e == u);
    for (i, &u) in elems.iter().enumerate() {
        for (j, &v) in elems.iter().enumerate() {
            if y.poset().leq(u, v) && !x.poset().leq(f[i], f[j]) {
                return Err(format!("map is not monotone at {} <= {}", y.name(u), y.name(v)));
            }
        }
        for g in 0..y.group().order() {
            let Some(k) = pos(y.act(g, u)) else {
                return Err("domain is not invariant".into());
            };
            if f[k] != x.act(g, f[i]) {
                return Err(format!("map is not equivariant at {}", y.name(u)));
            }
        }
    }
    Ok(())
}

fn fence_steps(x: &GPoset, maps: &[Vec<usize>], dirs: &[Direction]) -> Check {
    if maps.is_empty() || dirs.len() + 1 != maps.len() {
        return Err("fence has no maps or mismatched directions".into());
    }
    for (t, (w, d)) in maps.windows(2).zip(dirs).enumerate() {
        let ok = w[0].iter().zip(&w[1]).all(|(&a, &b)| match d {
            Direction::Up => x.poset().leq(a, b),
            Direction::Down => x.poset().leq(b, a),
        });
        if !ok {
            return Err(format!("fence step {t} does not compare as recorded"));
        }
    }
    Ok(())
}

/// Checks a cover certifying `LS_G(X) <= cover.len()`.
pub fn verify_ls_cover(x: &GPoset, cover: &[CertifiedSet]) -> Check {
    let mut sets = Vec::new();
    for c in cover {
        sets.push(open_invariant(x, &c.elements)?);
        let Evidence::Fence(f) = &c.evidence else {
            return Err("categorical sets need a fence".into());
        };
        if f.domain != c.elements {
            return Err("fence is over a different set".into());
        }
        for m in &f.maps {
            good_map(x, x, &c.elements, m)?;
        }
        fence_steps(x, &f.maps, &f.directions)?;
        if f.maps[0] != c.elements {
            return Err("fence does not start at the inclusion".into());
        }
        let last = f.maps.last().unwrap();
        if let Some(&v0) = last.first() {
            let orbit = x.orbit(v0);
            if !last.iter().all(|&v| orbit.contains(v)) {
                return Err("fence does not end in a single orbit".into());
            }
        }
    }
    covers(x, &sets)
}

/// Checks a cover of `X × X` by sets carrying up-first alternating fences
/// from the first to the second projection, of length at most `max_len`.
pub fn verify_motion_cover(x: &GPoset, cover: &[CertifiedSet], max_len: Option<usize>) -> Check {
    let xx = x.diagonal();
    let n = x.len();
    let mut sets = Vec::new();
    for c in cover {
        sets.push(open_invariant(&xx, &c.elements)?);
        let Evidence::Fence(f) = &c.evidence else {
            return Err("motion planning sets need a fence".into());
        };
        if f.domain != c.elements {
            return Err("fence is over a different set".into());
        }
        for m in &f.maps {
            good_map(&xx, x, &c.elements, m)?;
        }
        fence_steps(x, &f.maps, &f.directions)?;
        let alternating = f.directions.iter().enumerate().all(|(t, d)| {
            *d == if t % 2 == 0 { Direction::Up } else { Direction::Down }
        });
        if !alternating {
            return Err("fence is not up-first alternating".into());
        }
        if let Some(m) = max_len {
            if f.directions.len() > m {
                return Err(format!("fence longer than {m}"));
            }
        }
        let first: Vec<usize> = c.elements.iter().map(|&p| p / n).collect();
        let second: Vec<usize> = c.elements.iter().map(|&p| p % n).collect();
        if f.maps[0] != first || *f.maps.last().unwrap() != second {
            return Err("fence does not join the two projections".into());
        }
    }
    covers(&xx, &sets)
}

/// Checks a cover of `B` by sets with strict equivariant sections of `p`.
pub fn verify_section_cover(e: &GPoset, b: &GPoset, p: &[usize], cover: &[CertifiedSet]) -> Check {
    let mut sets = Vec::new();
    for c in cover {
        sets.push(open_invariant(b, &c.elements)?);
        let Evidence::Section(s) = &c.evidence else {
            return Err("sectional sets need a section".into());
        };
        good_map(b, e, &c.elements, s)?;
        if c.elements.iter().zip(s).any(|(&u, &v)| p[v] != u) {
            return Err("section is not strict".into());
        }
    }
    covers(b, &sets)
}
