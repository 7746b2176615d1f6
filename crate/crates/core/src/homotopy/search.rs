//! Equivariant maps out of an invariant open set, described by their values
//! on orbit representatives, and the two fence searches built on them.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::bits::ElemSet;
use crate::group::GPoset;
use crate::homotopy::csp::{OrderCsp, Solve};
use crate::homotopy::{Direction, FenceCertificate};

/// Equivariant monotone maps `U -> X` for an invariant downset `U` of a
/// G-poset `Y`. A map is a value per orbit representative of `U`; the value
/// at `g·r` is `g` applied to the value at `r`.
pub struct MapSpace<'a> {
    pub source: &'a GPoset,
    pub target: &'a GPoset,
    pub domain: ElemSet,
    /// Orbit representatives of `domain`, increasing.
    pub reps: Vec<usize>,
    /// For each source element in `domain`: (representative slot, g) with
    /// `element = g·rep`.
    locate: Vec<(u32, u16)>,
    /// `(i, j, g)`: value(i) translated by `g` lies below value(j).
    pub(crate) constraints: Vec<(usize, usize, usize)>,
    /// Allowed values per representative (fixed points of its stabilizer,
    /// possibly narrowed further).
    pub allowed: Vec<ElemSet>,
}

pub enum Search<T> {
    Found(T),
    /// The search space was exhausted without success.
    Exhausted { explored: u64 },
    Budget { explored: u64 },
}

/// Where a fence has to end.
#[derive(Clone, Debug)]
pub enum Goal {
    /// Exactly this map (values per representative).
    Map(Vec<usize>),
    /// Any map whose image lies in a single orbit.
    SingleOrbit,
}

impl<'a> MapSpace<'a> {
    pub fn new(source: &'a GPoset, target: &'a GPoset, domain: ElemSet) -> Self {
        debug_assert!(source.same_group(target));
        debug_assert!(source.is_invariant(&domain));
        let mut reps = Vec::new();
        let mut slot_of_orbit: FxHashMap<usize, usize> = FxHashMap::default();
        for x in domain.iter() {
            let r = source.rep(x);
            if r == x {
                slot_of_orbit.insert(source.orbit_id(x), reps.len());
                reps.push(x);
            }
        }
        let mut locate = vec![(u32::MAX, 0u16); source.len()];
        for x in domain.iter() {
            let slot = slot_of_orbit[&source.orbit_id(x)];
            let g = source.transporter(reps[slot], x).expect("same orbit");
            locate[x] = (slot as u32, g as u16);
        }
        let mut constraints = Vec::new();
        for (j, &r) in reps.iter().enumerate() {
            for u in source.poset().lower_covers(r) {
                let (i, g) = locate[u];
                constraints.push((i as usize, j, g as usize));
            }
        }
        constraints.sort_unstable();
        constraints.dedup();
        let allowed = reps
            .iter()
            .map(|&r| target.fixed_set(&source.stabilizer(r)))
            .collect();
        Self {
            source,
            target,
            domain,
            reps,
            locate,
            constraints,
            allowed,
        }
    }

    pub fn slots(&self) -> usize {
        self.reps.len()
    }

    /// Restricts the allowed values at one representative.
    pub fn narrow(&mut self, slot: usize, set: &ElemSet) {
        self.allowed[slot].intersect_with(set);
    }

    /// Values per representative of a map given on all source elements.
    pub fn compress(&self, full: &[usize]) -> Vec<usize> {
        self.reps.iter().map(|&r| full[r]).collect()
    }

    /// The map on every element of `domain`, listed in increasing order.
    pub fn expand(&self, vals: &[usize]) -> Vec<usize> {
        self.domain
            .iter()
            .map(|x| {
                let (i, g) = self.locate[x];
                self.target.act(g as usize, vals[i as usize])
            })
            .collect()
    }

    pub fn is_valid(&self, vals: &[usize]) -> bool {
        vals.iter()
            .zip(&self.allowed)
            .all(|(&v, a)| a.contains(v))
            && self.constraints.iter().all(|&(i, j, g)| {
                self.target
                    .poset()
                    .leq(self.target.act(g, vals[i]), vals[j])
            })
    }

    fn base_csp(&self, levels: usize) -> OrderCsp {
        let k = self.slots();
        let group = self.target.group();
        let inv: Vec<usize> = (0..group.order()).map(|g| group.inv(g)).collect();
        let mut csp = OrderCsp::new(self.target.poset(), self.target.action_table(), &inv, k * levels);
        for t in 0..levels {
            for i in 0..k {
                csp.restrict(t * k + i, self.allowed[i].words());
            }
            for &(i, j, g) in &self.constraints {
                csp.add_le(t * k + i, t * k + j, g);
            }
        }
        csp
    }

    /// Every map in the space, stopping after `budget` search nodes.
    pub fn enumerate(&self, budget: &mut u64, cap: usize) -> Option<Vec<Vec<usize>>> {
        let csp = self.base_csp(1);
        let mut out = Vec::new();
        let mut over = false;
        let done = csp.for_each_solution(budget, |s| {
            if out.len() >= cap {
                over = true;
                return false;
            }
            out.push(s);
            true
        });
        (done && !over).then_some(out)
    }

    /// Some map in the space.
    pub fn find_map(&self, budget: &mut u64) -> Search<Vec<usize>> {
        let before = *budget;
        if self.slots() == 0 {
            return Search::Found(Vec::new());
        }
        match self.base_csp(1).solve(budget) {
            Solve::Found(v) => Search::Found(v),
            Solve::Infeasible => Search::Exhausted {
                explored: before - *budget,
            },
            Solve::Budget => Search::Budget { explored: before },
        }
    }

    /// An up-first alternating fence of length exactly `m` (equal steps
    /// allowed) from `start` to the goal, found by constraint search.
    pub fn fence_of_length(
        &self,
        start: &[usize],
        goal: &Goal,
        m: usize,
        budget: &mut u64,
    ) -> Search<Vec<Vec<usize>>> {
        let k = self.slots();
        if k == 0 {
            return Search::Found(vec![Vec::new(); m + 1]);
        }
        let before = *budget;
        let targets: Vec<Option<ElemSet>> = match goal {
            Goal::Map(_) => vec![None],
            Goal::SingleOrbit => self
                .target
                .orbits()
                .iter()
                .map(|o| Some(ElemSet::from_indices(self.target.len(), o.iter().copied())))
                .collect(),
        };
        for orbit in targets {
            let mut csp = self.base_csp(m + 1);
            for t in 0..m {
                for i in 0..k {
                    if t % 2 == 0 {
                        csp.add_le(t * k + i, (t + 1) * k + i, 0);
                    } else {
                        csp.add_le((t + 1) * k + i, t * k + i, 0);
                    }
                }
            }
            for (i, &v) in start.iter().enumerate() {
                csp.restrict_to(i, v);
            }
            match (goal, &orbit) {
                (Goal::Map(end), _) => {
                    for (i, &v) in end.iter().enumerate() {
                        csp.restrict_to(m * k + i, v);
                    }
                }
                (Goal::SingleOrbit, Some(o)) => {
                    for i in 0..k {
                        csp.restrict(m * k + i, o.words());
                    }
                }
                _ => unreachable!(),
            }
            match csp.solve(budget) {
                Solve::Found(sol) => {
                    return Search::Found(sol.chunks(k).map(|c| c.to_vec()).collect());
                }
                Solve::Infeasible => {}
                Solve::Budget => {
                    return Search::Budget {
                        explored: before - *budget,
                    }
                }
            }
        }
        Search::Exhausted {
            explored: before - *budget,
        }
    }

    /// Searches the whole path component of `start` in the hom-poset for a
    /// map meeting the goal, moving one orbit of values at a time.
    ///
    /// Two comparable equivariant maps are joined by a chain of comparable
    /// maps that each differ on a single orbit (change a maximal point of
    /// disagreement first), so this explores exactly the path component.
    pub fn connect(&self, start: &[usize], goal: &Goal, budget: &mut u64) -> Search<Vec<Vec<usize>>> {
        let before = *budget;
        let tp = self.target.poset();
        let k = self.slots();
        let reached = |v: &[usize]| match goal {
            Goal::Map(end) => v == end.as_slice(),
            Goal::SingleOrbit => v
                .iter()
                .all(|&x| self.target.orbit_id(x) == self.target.orbit_id(v[0])),
        };
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (c, &(i, j, _)) in self.constraints.iter().enumerate() {
            incident[i].push(c);
            if i != j {
                incident[j].push(c);
            }
        }
        let candidates: Vec<Vec<usize>> = self.allowed.iter().map(|a| a.to_vec()).collect();
        let key = |v: &[usize]| -> Box<[u16]> { v.iter().map(|&x| x as u16).collect() };
        let mut states: Vec<Box<[u16]>> = vec![key(start)];
        let mut parent: Vec<u32> = vec![u32::MAX];
        let mut seen: FxHashMap<Box<[u16]>, u32> = FxHashMap::default();
        seen.insert(key(start), 0);
        let mut queue = VecDeque::from([0u32]);
        let mut cur = start.to_vec();
        let mut hit = None;
        if reached(start) {
            hit = Some(0u32);
        }
        while hit.is_none() {
            let Some(s) = queue.pop_front() else { break };
            for (i, x) in states[s as usize].iter().enumerate() {
                cur[i] = *x as usize;
            }
            'slots: for i in 0..k {
                let old = cur[i];
                for &x in &candidates[i] {
                    if x == old || !tp.comparable(x, old) {
                        continue;
                    }
                    cur[i] = x;
                    let ok = incident[i].iter().all(|&c| {
                        let (a, b, g) = self.constraints[c];
                        tp.leq(self.target.act(g, cur[a]), cur[b])
                    });
                    if ok {
                        let kk = key(&cur);
                        if !seen.contains_key(&kk) {
                            if *budget == 0 {
                                return Search::Budget { explored: before };
                            }
                            *budget -= 1;
                            let id = states.len() as u32;
                            seen.insert(kk.clone(), id);
                            states.push(kk);
                            parent.push(s);
                            if reached(&cur) {
                                hit = Some(id);
                                cur[i] = old;
                                break 'slots;
                            }
                            queue.push_back(id);
                        }
                    }
                    cur[i] = old;
                }
            }
        }
        let Some(mut id) = hit else {
            return Search::Exhausted {
                explored: before - *budget,
            };
        };
        let mut walk = Vec::new();
        loop {
            walk.push(states[id as usize].iter().map(|&x| x as usize).collect::<Vec<_>>());
            if parent[id as usize] == u32::MAX {
                break;
            }
            id = parent[id as usize];
        }
        walk.reverse();
        Search::Found(self.alternate(walk))
    }

    /// Turns a walk of pairwise comparable maps into an up-first alternating
    /// fence, merging runs in one direction.
    pub fn alternate(&self, walk: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let tp = self.target.poset();
        let le = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(&x, &y)| tp.leq(x, y));
        let mut out: Vec<Vec<usize>> = vec![walk[0].clone()];
        let mut dir: Option<bool> = None;
        for next in walk.into_iter().skip(1) {
            let last = out.last().unwrap();
            if *last == next {
                continue;
            }
            let up = le(last, &next);
            if dir == Some(up) {
                *out.last_mut().unwrap() = next;
            } else {
                if dir.is_none() && !up {
                    let first = out[0].clone();
                    out.push(first);
                }
                out.push(next);
                dir = Some(up);
            }
        }
        out
    }

    /// Wraps a fence over representatives as a certificate over all of `U`.
    pub fn certificate(&self, fence: &[Vec<usize>]) -> FenceCertificate {
        let maps: Vec<Vec<usize>> = fence.iter().map(|v| self.expand(v)).collect();
        let directions = (0..maps.len().saturating_sub(1))
            .map(|t| if t % 2 == 0 { Direction::Up } else { Direction::Down })
            .collect();
        FenceCertificate {
            domain: self.domain.to_vec(),
            maps,
            directions,
        }
    }
}
