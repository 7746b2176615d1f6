//! Barycentric subdivision of G-posets and the explicit contraction of
//! minimal neighbourhoods in the second subdivision.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::group::GPoset;
use crate::homotopy::{FenceCertificate, Direction};
use crate::poset::FinitePoset;

pub const DEFAULT_SD_CAP: usize = 20_000;

/// `sd(X)` together with the chain each of its elements stands for.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub space: GPoset,
    /// Chains of the base space, each listed bottom to top.
    pub chains: Vec<Vec<usize>>,
}

impl Subdivision {
    /// The last-vertex map `sd(X) -> X`.
    pub fn last_vertex_map(&self) -> Vec<usize> {
        self.chains.iter().map(|c| *c.last().unwrap()).collect()
    }

    pub fn first_vertex_map(&self) -> Vec<usize> {
        self.chains.iter().map(|c| c[0]).collect()
    }

    /// Index of the chain with the given members, in any order.
    pub fn chain_index(&self, base: &FinitePoset, members: &[usize]) -> Option<usize> {
        let mut c = members.to_vec();
        sort_chain(base, &mut c);
        self.chains.iter().position(|d| *d == c)
    }
}

fn sort_chain(p: &FinitePoset, c: &mut [usize]) {
    c.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if p.leq(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
}

/// All nonempty chains of `p`, bottom to top, ordered by length and then
/// lexicographically. Fails when there are more than `cap`.
pub fn chains(p: &FinitePoset, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = p.len();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn extend(
        p: &FinitePoset,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if out.len() >= cap {
            return Err(Error::SizeBudgetExceeded {
                what: "subdivision".into(),
                cap,
            });
        }
        out.push(stack.clone());
        let top = *stack.last().unwrap();
        for y in p.up_closure(top).iter() {
            if y != top {
                stack.push(y);
                extend(p, stack, out, cap)?;
                stack.pop();
            }
        }
        Ok(())
    }
    for x in 0..n {
        stack.push(x);
        extend(p, &mut stack, &mut out, cap)?;
        stack.pop();
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

fn chain_name(p: &FinitePoset, c: &[usize]) -> String {
    let parts: Vec<&str> = c.iter().map(|&x| p.name(x)).collect();
    format!("{{{}}}", parts.join("<"))
}

/// `sd(X)`: chains ordered by inclusion with `g·{p0<...<pn} = {g·p0<...<g·pn}`.
pub fn subdivide(x: &GPoset) -> Result<Subdivision> {
    subdivide_capped(x, DEFAULT_SD_CAP)
}

pub fn subdivide_capped(x: &GPoset, cap: usize) -> Result<Subdivision> {
    let p = x.poset();
    let chains = chains(p, cap)?;
    let n = chains.len();
    let index: FxHashMap<&[usize], usize> =
        chains.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    // Subchains of a chain are exactly the nonempty subsets.
    let down = chains
        .iter()
        .map(|c| {
            let mut s = ElemSet::empty(n);
            let k = c.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| c[i]).collect();
                s.insert(index[sub.as_slice()]);
            }
            s
        })
        .collect();
    let names = chains.iter().map(|c| chain_name(p, c)).collect();
    let poset = FinitePoset::from_down_sets(names, down);
    let act = (0..x.group().order())
        .map(|g| {
            chains
                .iter()
                .map(|c| {
                    let mut img: Vec<usize> = c.iter().map(|&v| x.act(g, v)).collect();
                    sort_chain(p, &mut img);
                    index[img.as_slice()]
                })
                .collect()
        })
        .collect();
    Ok(Subdivision {
        space: GPoset::new_unchecked(Arc::new(poset), x.group_arc().clone(), act),
        chains,
    })
}

/// `sd^n(X)`; `n = 0` returns a copy of `X`.
pub fn subdivide_n(x: &GPoset, n: usize) -> Result<GPoset> {
    subdivide_n_capped(x, n, DEFAULT_SD_CAP)
}

pub fn subdivide_n_capped(x: &GPoset, n: usize, cap: usize) -> Result<GPoset> {
    let mut cur = x.clone();
    for _ in 0..n {
        cur = subdivide_capped(&cur, cap)?.space;
    }
    Ok(cur)
}

/// Checks that `sd^n(X^G)` and `sd^n(X)^G` are the same poset, matching
/// elements by their nested-chain names.
pub fn fixed_points_commute_check(x: &GPoset, n: usize) -> Result<bool> {
    let whole = x.group().whole();
    let fixed = GPoset::trivial(x.fixed_points(&whole));
    let left = subdivide_n(&fixed, n)?;
    let right_full = subdivide_n(x, n)?;
    let right = right_full.fixed_points(&right_full.group().whole());
    let l = left.poset();
    if l.len() != right.len() {
        return Ok(false);
    }
    let mut map = Vec::with_capacity(l.len());
    for name in l.names() {
        match right.index_of(name) {
            Ok(i) => map.push(i),
            Err(_) => return Ok(false),
        }
    }
    for a in 0..l.len() {
        for b in 0..l.len() {
            if l.leq(a, b) != right.leq(map[a], map[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that the last-vertex map of `sd(X)` is monotone, equivariant and
/// surjective.
pub fn verify_last_vertex_map(x: &GPoset, sd: &Subdivision) -> bool {
    let tau = sd.last_vertex_map();
    let monotone = sd.space.poset().is_monotone_into(x.poset(), &tau);
    let equivariant = (0..x.group().order()).all(|g| {
        (0..sd.space.len()).all(|c| tau[sd.space.act(g, c)] == x.act(g, tau[c]))
    });
    let mut hit = vec![false; x.len()];
    for &v in &tau {
        hit[v] = true;
    }
    monotone && equivariant && hit.iter().all(|&h| h)
}

/// The second subdivision, keeping the chain-of-chains structure needed for
/// the explicit contraction.
#[derive(Clone, Debug)]
pub struct SecondSubdivision {
    pub first: Subdivision,
    pub second: Subdivision,
}

impl SecondSubdivision {
    pub fn new(x: &GPoset) -> Result<Self> {
        let first = subdivide(x)?;
        let second = subdivide(&first.space)?;
        Ok(Self { first, second })
    }

    pub fn space(&self) -> &GPoset {
        &self.second.space
    }
}

/// Explicit equivariant fence from the identity of `G·U_S` (for `S` in
/// `sd²(X)`) to a map with values in one orbit.
///
/// With `S = {s1 ⊊ ... ⊊ sn}` and `Sk = {s1,...,sk}`, each round maps
/// `g·T ↦ g·Sk` when `sk ∈ T` (above the current map) and then
/// `g·T ↦ g·S(k-1)` when `sk ∈ T` (below that), pushing the image from
/// `G·U_Sk` into `G·U_S(k-1)`. Every intermediate map is re-verified.
pub fn sd2_categorical_certificate(sd2: &SecondSubdivision, s: usize) -> Result<Sd2Certificate> {
    let y = &sd2.second.space;
    let yp = y.poset();
    let u = y.saturated_down_closure(s);
    let elems = u.to_vec();
    // S as a list of sd(X)-elements, bottom to top.
    let s_chain = sd2.second.chains[s].clone();
    let n = s_chain.len();
    let chain_of = |t: usize| -> &Vec<usize> { &sd2.second.chains[t] };
    let index_of_chain = |members: &[usize]| -> usize {
        sd2.second
            .chain_index(sd2.first.space.poset(), members)
            .expect("subchain exists")
    };
    let group = y.group();
    let mut current: Vec<usize> = elems.clone();
    let mut maps = vec![current.clone()];
    let mut directions = Vec::new();
    for k in (2..=n).rev() {
        let sk = s_chain[k - 1];
        let top = index_of_chain(&s_chain[..k]);
        let below = index_of_chain(&s_chain[..k - 1]);
        let step = |img: usize, target: usize| -> usize {
            // img lies in G·U_Sk; write img = g·T with T ⊆ Sk.
            let g = (0..group.order())
                .find(|&g| yp.leq(y.act(group.inv(g), img), top))
                .expect("image stays in the filtration");
            let t = y.act(group.inv(g), img);
            if chain_of(t).contains(&sk) {
                y.act(g, target)
            } else {
                img
            }
        };
        let up: Vec<usize> = current.iter().map(|&v| step(v, top)).collect();
        let down: Vec<usize> = current.iter().map(|&v| step(v, below)).collect();
        maps.push(up.clone());
        directions.push(Direction::Up);
        maps.push(down.clone());
        directions.push(Direction::Down);
        current = down;
    }
    let fence = FenceCertificate {
        domain: elems,
        maps,
        directions,
    };
    let target_orbit = y.rep(current[0]);
    let cert = Sd2Certificate {
        element: s,
        fence,
        orbit_rep: target_orbit,
    };
    if !cert.verify(y) {
        return Err(Error::ConstructionFailed(format!(
            "contraction of {} did not verify",
            y.name(s)
        )));
    }
    Ok(cert)
}

/// A verified contraction of `G·U_S` onto one orbit of `sd²(X)`.
#[derive(Clone, Debug)]
pub struct Sd2Certificate {
    pub element: usize,
    pub fence: FenceCertificate,
    pub orbit_rep: usize,
}

impl Sd2Certificate {
    pub fn verify(&self, y: &GPoset) -> bool {
        let u = y.saturated_down_closure(self.element);
        if ElemSet::from_indices(y.len(), self.fence.domain.iter().copied()) != u {
            return false;
        }
        let orbit = y.orbit(self.orbit_rep);
        self.fence.verify(y, y)
            && self.fence.maps[0] == self.fence.domain
            && self.fence.maps.last().unwrap().iter().all(|&v| orbit.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma1() -> GPoset {
        GPoset::trivial(
            FinitePoset::from_cover_relations(
                &["a", "b", "c", "d"],
                &[("c", "a"), ("d", "a"), ("c", "b"), ("d", "b")],
            )
            .unwrap(),
        )
    }

    #[test]
    fn sizes() {
        let s = sigma1();
        let sd = subdivide(&s).unwrap();
        assert_eq!(sd.space.len(), 8);
        assert_eq!(subdivide_n(&s, 2).unwrap().len(), 16);
        let j2 = GPoset::trivial(FinitePoset::combinatorial_interval(2));
        assert_eq!(subdivide(&j2).unwrap().space.len(), 5);
        assert!(verify_last_vertex_map(&s, &sd));
        let ca = sd.space.poset().index_of("{c<a}").unwrap();
        assert_eq!(s.name(sd.last_vertex_map()[ca]), "a");
    }

    #[test]
    fn opposite_has_same_subdivision() {
        let p = FinitePoset::combinatorial_interval(3);
        let a = subdivide(&GPoset::trivial(p.clone())).unwrap();
        let b = subdivide(&GPoset::trivial(p.opposite())).unwrap();
        assert_eq!(a.space.len(), b.space.len());
        let key = |c: &Vec<usize>| {
            let mut k = c.clone();
            k.sort();
            k
        };
        let pos: FxHashMap<Vec<usize>, usize> =
            b.chains.iter().enumerate().map(|(i, c)| (key(c), i)).collect();
        for i in 0..a.space.len() {
            for j in 0..a.space.len() {
                let (bi, bj) = (pos[&key(&a.chains[i])], pos[&key(&a.chains[j])]);
                assert_eq!(a.space.poset().leq(i, j), b.space.poset().leq(bi, bj));
            }
        }
    }

    #[test]
    fn contraction_certificates_on_sigma1() {
        let sd2 = SecondSubdivision::new(&sigma1()).unwrap();
        for s in 0..sd2.space().len() {
            let c = sd2_categorical_certificate(&sd2, s).unwrap();
            assert_eq!(c.fence.maps.len(), 2 * sd2.second.chains[s].len() - 1);
        }
    }
}
