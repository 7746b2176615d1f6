//! First homology mod 2 of a finite space, through the comparability graph
//! and the triangles of its order complex. Homotopic maps agree on it, so a
//! loop they send to different classes proves a set bad.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::bits::ElemSet;
use crate::poset::FinitePoset;

/// Edge spaces larger than this are not set up; the test is then skipped.
pub const EDGE_CAP: usize = 4096;

/// Boundaries of the target space, kept in echelon form.
pub struct Loops {
    edges: FxHashMap<(usize, usize), usize>,
    words: usize,
    /// `pivots[i]` has lowest set bit `i`.
    pivots: Vec<Option<Vec<u64>>>,
}

impl Loops {
    pub fn new(p: &FinitePoset) -> Option<Self> {
        let n = p.len();
        let mut edges = FxHashMap::default();
        for x in 0..n {
            for y in p.up_closure(x).iter() {
                if y != x {
                    let id = edges.len();
                    edges.insert((x, y), id);
                }
            }
        }
        if edges.len() > EDGE_CAP {
            return None;
        }
        let mut loops = Loops {
            words: edges.len().div_ceil(64),
            pivots: vec![None; edges.len()],
            edges,
        };
        let pairs: Vec<(usize, usize)> = loops.edges.keys().copied().collect();
        for (x, y) in pairs {
            for z in p.up_closure(y).iter() {
                if z != y {
                    let mut v = vec![0u64; loops.words];
                    for e in [(x, y), (y, z), (x, z)] {
                        loops.toggle(&mut v, e.0, e.1);
                    }
                    loops.insert(v);
                }
            }
        }
        Some(loops)
    }

    fn toggle(&self, v: &mut [u64], a: usize, b: usize) {
        if a == b {
            return;
        }
        let key = if self.edges.contains_key(&(a, b)) { (a, b) } else { (b, a) };
        let i = self.edges[&key];
        v[i / 64] ^= 1 << (i % 64);
    }

    fn lowest(v: &[u64]) -> Option<usize> {
        v.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Reduces `v` against the basis; what is left is zero iff `v` is a
    /// boundary.
    fn reduce(&self, v: &mut [u64]) -> Option<usize> {
        while let Some(p) = Self::lowest(v) {
            match &self.pivots[p] {
                Some(b) => v.iter_mut().zip(b).for_each(|(a, b)| *a ^= b),
                None => return Some(p),
            }
        }
        None
    }

    fn insert(&mut self, mut v: Vec<u64>) {
        if let Some(p) = self.reduce(&mut v) {
            self.pivots[p] = Some(v);
        }
    }

    /// Whether the fundamental cycles of `set` in `dom`, pushed forward by
    /// `f` and `g` into the target, all differ by boundaries. `None` for `g`
    /// is a constant map.
    pub fn agree(&self, dom: &FinitePoset, set: &ElemSet, f: &dyn Fn(usize) -> usize, g: Option<&dyn Fn(usize) -> usize>) -> bool {
        let mut parent: FxHashMap<usize, usize> = FxHashMap::default();
        let mut depth: FxHashMap<usize, usize> = FxHashMap::default();
        let neighbours = |u: usize| {
            let mut s = dom.up_closure(u).union(dom.down_closure(u));
            s.intersect_with(set);
            s.remove(u);
            s
        };
        for root in set.iter() {
            if depth.contains_key(&root) {
                continue;
            }
            depth.insert(root, 0);
            parent.insert(root, root);
            let mut queue = VecDeque::from([root]);
            let mut order = Vec::new();
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for v in neighbours(u).iter() {
                    if !depth.contains_key(&v) {
                        depth.insert(v, depth[&u] + 1);
                        parent.insert(v, u);
                        queue.push_back(v);
                    }
                }
            }
            for &u in &order {
                for v in neighbours(u).iter() {
                    if v < u || parent[&v] == u || parent[&u] == v {
                        continue;
                    }
                    let mut cycle = vec![(u, v)];
                    let (mut a, mut b) = (u, v);
                    while a != b {
                        if depth[&a] >= depth[&b] {
                            cycle.push((a, parent[&a]));
                            a = parent[&a];
                        } else {
                            cycle.push((b, parent[&b]));
                            b = parent[&b];
                        }
                    }
                    let mut vec = vec![0u64; self.words];
                    for &(s, t) in &cycle {
                        self.toggle(&mut vec, f(s), f(t));
                        if let Some(g) = g {
                            self.toggle(&mut vec, g(s), g(t));
                        }
                    }
                    if self.reduce(&mut vec).is_some() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn circle_loop_is_not_a_boundary() {
        let p = corpus::sigma1();
        let l = Loops::new(&p).unwrap();
        let all = p.all_elements();
        assert!(!l.agree(&p, &all, &|u| u, None));
        let half = p.down_closure_of_set(&ElemSet::from_indices(4, [0]));
        assert!(l.agree(&p, &half, &|u| u, None));
    }

    #[test]
    fn disc_has_no_loops() {
        let p = FinitePoset::combinatorial_interval(4).product(&FinitePoset::chain(2));
        let l = Loops::new(&p).unwrap();
        assert!(l.agree(&p, &p.all_elements(), &|u| u, None));
    }
}
